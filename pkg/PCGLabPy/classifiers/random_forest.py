import numpy as np
from PCGLabPy.core.classifier import Classifier, check_xy
from PCGLabPy.classifiers.tree import grow_tree, TreeStructure


def sqrt_features(n_features):
    return max(1, int(np.sqrt(n_features)))


class RandomForest(Classifier):
    """
    Bagged ensemble of unpruned classification trees, each split drawing
    sqrt(n_features) candidate features. Bootstrap resamples are expressed
    as integer sample weights (the multiplicity of each row).
    """
    kind = 'rf'

    def __init__(self, n_trees=200, max_depth=None, min_samples_leaf=1,
                 max_features='sqrt', bootstrap=True, seed=0, **kwargs):
        super().__init__(**kwargs)
        self.n_trees = int(n_trees)
        self.max_depth = max_depth
        self.min_samples_leaf = int(min_samples_leaf)
        self.max_features = max_features
        self.bootstrap = bool(bootstrap)
        self.seed = int(seed)
        self.trees = []

    def _n_candidates(self, n_features):
        if self.max_features == 'sqrt':
            return sqrt_features(n_features)
        return self.max_features

    def fit(self, X, y):
        X, y = check_xy(X, y)
        n = y.size
        rng = np.random.RandomState(self.seed)
        tree_seeds = rng.randint(0, 2 ** 31 - 1, size=self.n_trees)
        max_features = self._n_candidates(X.shape[1])

        self.trees = []
        for seed in tree_seeds:
            tree_rng = np.random.RandomState(seed)
            if self.bootstrap:
                draws = tree_rng.randint(0, n, size=n)
                weights = np.bincount(draws, minlength=n).astype(float)
            else:
                weights = np.ones(n)
            self.trees.append(grow_tree(
                X, y, weights, self.max_depth, self.min_samples_leaf,
                max_features, tree_rng
            ))
        self.n_features = X.shape[1]
        return self

    def _positive_proba(self, X):
        if not self.trees:
            raise ValueError("RandomForest has no trees")
        return np.mean([t.predict(X) for t in self.trees], axis=0)

    def to_dict(self):
        d = self._base_dict()
        d.update(n_trees=self.n_trees, max_depth=self.max_depth,
                 min_samples_leaf=self.min_samples_leaf,
                 max_features=self.max_features, bootstrap=self.bootstrap,
                 seed=self.seed, trees=[t.to_dict() for t in self.trees])
        return d

    @classmethod
    def from_dict(cls, d):
        model = cls(d['n_trees'], d['max_depth'], d['min_samples_leaf'],
                    d['max_features'], d['bootstrap'], d['seed'])
        model.trees = [TreeStructure.from_dict(t) for t in d['trees']]
        model.n_features = d['n_features']
        return model
