import numpy as np
from numba import njit
from PCGLabPy.core.classifier import Classifier, check_xy
from PCGLabPy.core.errors import EmptyData

LEAF = -1


@njit
def _best_split(xs, ts, ws, min_samples_leaf):
    """
    Scan the thresholds of one feature (values `xs` sorted ascending) for
    the split minimising the weighted sum of squared errors of the targets
    `ts` in both children. For 0/1 targets this is half the weighted Gini
    impurity, so the same scan serves classification and regression trees.

    Returns
    -------
    best : float
        Impurity of the best split (inf if none is allowed)
    threshold : float
        Midpoint between the two values around the split
    """
    n = xs.size
    total_w = 0.0
    total_t = 0.0
    total_tt = 0.0
    for k in range(n):
        total_w += ws[k]
        total_t += ws[k] * ts[k]
        total_tt += ws[k] * ts[k] * ts[k]

    best = np.inf
    threshold = np.nan
    left_w = 0.0
    left_t = 0.0
    left_tt = 0.0
    for k in range(n - 1):
        left_w += ws[k]
        left_t += ws[k] * ts[k]
        left_tt += ws[k] * ts[k] * ts[k]
        if xs[k] == xs[k + 1]:
            continue
        if k + 1 < min_samples_leaf or n - k - 1 < min_samples_leaf:
            continue
        right_w = total_w - left_w
        if left_w <= 0 or right_w <= 0:
            continue
        right_t = total_t - left_t
        right_tt = total_tt - left_tt
        sse = (left_tt - left_t * left_t / left_w) + \
              (right_tt - right_t * right_t / right_w)
        if sse < best - 1e-12:
            best = sse
            threshold = 0.5 * (xs[k] + xs[k + 1])
            if threshold >= xs[k + 1]:
                threshold = xs[k]
    return best, threshold


@njit
def _apply(feature, threshold, left, right, X):
    out = np.empty(X.shape[0], dtype=np.int64)
    for r in range(X.shape[0]):
        node = 0
        while feature[node] != LEAF:
            if X[r, feature[node]] <= threshold[node]:
                node = left[node]
            else:
                node = right[node]
        out[r] = node
    return out


class TreeStructure:
    def __init__(self):
        """
        Binary tree stored as parallel node arrays. Leaves have
        feature == -1; `value` holds the weighted mean target of each node.
        """
        self.feature = []
        self.threshold = []
        self.left = []
        self.right = []
        self.value = []
        self._arrays = None

    def add_node(self, value):
        self.feature.append(LEAF)
        self.threshold.append(np.nan)
        self.left.append(LEAF)
        self.right.append(LEAF)
        self.value.append(float(value))
        self._arrays = None
        return len(self.value) - 1

    @property
    def n_nodes(self):
        return len(self.value)

    @property
    def depth(self):
        def node_depth(node):
            if self.feature[node] == LEAF:
                return 0
            return 1 + max(node_depth(self.left[node]),
                           node_depth(self.right[node]))
        return node_depth(0)

    def arrays(self):
        if self._arrays is None:
            self._arrays = (
                np.array(self.feature, dtype=np.int64),
                np.array(self.threshold, dtype=np.float64),
                np.array(self.left, dtype=np.int64),
                np.array(self.right, dtype=np.int64),
            )
        return self._arrays

    def apply(self, X):
        """
        Index of the leaf reached by each row of X
        """
        return _apply(*self.arrays(), np.ascontiguousarray(X))

    def predict(self, X):
        return np.asarray(self.value)[self.apply(X)]

    def to_dict(self, node=0):
        """
        Nested node records
        """
        if self.feature[node] == LEAF:
            return dict(value=self.value[node])
        return dict(
            feature=self.feature[node],
            threshold=self.threshold[node],
            value=self.value[node],
            left=self.to_dict(self.left[node]),
            right=self.to_dict(self.right[node]),
        )

    @classmethod
    def from_dict(cls, d):
        tree = cls()

        def add(record):
            node = tree.add_node(record['value'])
            if 'feature' in record:
                tree.feature[node] = int(record['feature'])
                tree.threshold[node] = float(record['threshold'])
                tree.left[node] = add(record['left'])
                tree.right[node] = add(record['right'])
            return node

        add(d)
        return tree


def grow_tree(X, t, w, max_depth=None, min_samples_leaf=1, max_features=None,
              rng=None):
    """
    Greedy growth of a binary tree minimising the weighted squared error of
    the targets (equivalently the weighted Gini impurity for 0/1 targets).

    Parameters
    ----------
    X : ndarray
        Shape (n_samples, n_features)
    t : ndarray
        Targets
    w : ndarray
        Non-negative sample weights. Rows of weight 0 are ignored.
    max_depth : int or None
        None grows until the leaves are pure
    min_samples_leaf : int
    max_features : int or None
        Number of features drawn (without replacement) at each node
    rng : np.random.RandomState
        Source of the feature draws

    Returns
    -------
    TreeStructure
    """
    X = np.asarray(X, dtype=np.float64)
    t = np.asarray(t, dtype=np.float64)
    w = np.asarray(w, dtype=np.float64)
    if np.any(w < 0):
        raise ValueError("Sample weights must be non-negative")
    rows = np.flatnonzero(w > 0)
    if rows.size == 0:
        raise EmptyData("No rows with positive weight")
    n_features = X.shape[1]
    if max_features is None or max_features >= n_features:
        max_features = None
    if max_features is not None and rng is None:
        rng = np.random.RandomState(0)

    tree = TreeStructure()

    def build(idx, depth):
        ws = w[idx]
        ts = t[idx]
        node = tree.add_node(np.sum(ws * ts) / np.sum(ws))
        pure = np.all(ts == ts[0])
        if pure or (max_depth is not None and depth >= max_depth) \
                or idx.size < 2 * min_samples_leaf:
            return node

        if max_features is None:
            candidates = np.arange(n_features)
        else:
            candidates = rng.choice(n_features, max_features, replace=False)
        best = (np.inf, LEAF, np.nan)
        for f in candidates:
            order = np.argsort(X[idx, f], kind='stable')
            sse, thr = _best_split(
                X[idx[order], f], ts[order], ws[order], min_samples_leaf
            )
            if sse < best[0] - 1e-12:
                best = (sse, int(f), thr)
        if best[1] == LEAF:
            return node

        _, f, thr = best
        go_left = X[idx, f] <= thr
        tree.feature[node] = f
        tree.threshold[node] = thr
        tree.left[node] = build(idx[go_left], depth + 1)
        tree.right[node] = build(idx[~go_left], depth + 1)
        return node

    build(rows, 0)
    return tree


class DecisionTree(Classifier):
    """
    CART classification tree with weighted Gini splits
    """
    kind = 'tree'

    def __init__(self, max_depth=None, min_samples_leaf=1, max_features=None,
                 seed=0, **kwargs):
        super().__init__(**kwargs)
        self.max_depth = max_depth
        self.min_samples_leaf = int(min_samples_leaf)
        self.max_features = max_features
        self.seed = seed
        self.tree = None

    def fit(self, X, y, sample_weight=None, rng=None):
        """
        Parameters
        ----------
        X : ndarray
        y : ndarray
            Labels in {0, 1}
        sample_weight : ndarray
            Defaults to 1 for every row
        rng : np.random.RandomState
            Defaults to one seeded with `seed`

        Returns
        -------
        self
        """
        X, y = check_xy(X, y)
        if sample_weight is None:
            sample_weight = np.ones(y.size)
        if rng is None:
            rng = np.random.RandomState(self.seed)
        self.tree = grow_tree(X, y, sample_weight, self.max_depth,
                              self.min_samples_leaf, self.max_features, rng)
        self.n_features = X.shape[1]
        return self

    def _positive_proba(self, X):
        return self.tree.predict(X)

    def to_dict(self):
        d = self._base_dict()
        d.update(max_depth=self.max_depth,
                 min_samples_leaf=self.min_samples_leaf,
                 max_features=self.max_features, seed=self.seed,
                 tree=self.tree.to_dict())
        return d

    @classmethod
    def from_dict(cls, d):
        model = cls(d['max_depth'], d['min_samples_leaf'],
                    d['max_features'], d['seed'])
        model.tree = TreeStructure.from_dict(d['tree'])
        model.n_features = d['n_features']
        return model
