import warnings
import numpy as np
from scipy.special import expit
from PCGLabPy.core.classifier import Classifier, check_xy
from PCGLabPy.core.errors import SingleClass
from PCGLabPy.classifiers.tree import grow_tree, TreeStructure

MAX_STEP_HALVINGS = 30
HESSIAN_FLOOR = 1e-12


def log_loss(y, score):
    """
    Mean binomial deviance of labels y for log-odds `score`
    """
    return float(np.mean(np.logaddexp(0, score) - y * score))


class GradientBoosting(Classifier):
    """
    Gradient boosting of regression trees on the binomial log-loss.

    Each round fits a tree to the negative gradient (y - p), replaces its
    leaf values by a Newton step sum(y - p) / sum(p (1 - p)) and adds it
    with the learning rate. If a round would increase the training loss its
    step is halved until it does not, so the recorded `train_loss` is
    non-increasing.
    """
    kind = 'gb'

    def __init__(self, n_rounds=100, learning_rate=0.1, max_depth=3,
                 min_samples_leaf=1, seed=0, **kwargs):
        super().__init__(**kwargs)
        self.n_rounds = int(n_rounds)
        self.learning_rate = float(learning_rate)
        self.max_depth = max_depth
        self.min_samples_leaf = int(min_samples_leaf)
        self.seed = int(seed)
        self.prior = None
        self.init_score = None
        self.trees = []
        self.steps = []
        self.train_loss = []

    def fit(self, X, y):
        X, y = check_xy(X, y)
        self.n_features = X.shape[1]
        self.prior = float(y.mean())
        self.trees = []
        self.steps = []
        if self.prior in (0.0, 1.0):
            warnings.warn(str(SingleClass(
                "GradientBoosting trained on a single class, returning the "
                "constant prior {}".format(self.prior)
            )), UserWarning)
            self.init_score = None
            self.train_loss = []
            return self

        self.init_score = float(np.log(self.prior / (1 - self.prior)))
        score = np.full(y.size, self.init_score)
        self.train_loss = [log_loss(y, score)]
        weights = np.ones(y.size)
        for _ in range(self.n_rounds):
            p = expit(score)
            residual = y - p
            tree = grow_tree(X, residual, weights, self.max_depth,
                             self.min_samples_leaf)
            leaves = tree.apply(X)
            numerator = np.bincount(leaves, residual, tree.n_nodes)
            denominator = np.bincount(leaves, p * (1 - p), tree.n_nodes)
            tree.value = list(
                numerator / np.maximum(denominator, HESSIAN_FLOOR)
            )
            update = np.asarray(tree.value)[leaves]

            step = self.learning_rate
            loss = log_loss(y, score + step * update)
            for _ in range(MAX_STEP_HALVINGS):
                if loss <= self.train_loss[-1]:
                    break
                step *= 0.5
                loss = log_loss(y, score + step * update)
            else:
                step = 0.0
                loss = self.train_loss[-1]

            score = score + step * update
            self.trees.append(tree)
            self.steps.append(step)
            self.train_loss.append(loss)
        return self

    def decision_function(self, X):
        """
        Log-odds of class 1
        """
        X = self._check_fitted(X)
        return self._score(X)

    def _score(self, X):
        score = np.full(X.shape[0], self.init_score)
        for tree, step in zip(self.trees, self.steps):
            score += step * tree.predict(X)
        return score

    def _positive_proba(self, X):
        if self.init_score is None:
            return np.full(X.shape[0], self.prior)
        return expit(self._score(X))

    def to_dict(self):
        d = self._base_dict()
        d.update(n_rounds=self.n_rounds, learning_rate=self.learning_rate,
                 max_depth=self.max_depth,
                 min_samples_leaf=self.min_samples_leaf, seed=self.seed,
                 prior=self.prior, init_score=self.init_score,
                 steps=self.steps, train_loss=self.train_loss,
                 trees=[t.to_dict() for t in self.trees])
        return d

    @classmethod
    def from_dict(cls, d):
        model = cls(d['n_rounds'], d['learning_rate'], d['max_depth'],
                    d['min_samples_leaf'], d['seed'])
        model.prior = d['prior']
        model.init_score = d['init_score']
        model.steps = list(d['steps'])
        model.train_loss = list(d['train_loss'])
        model.trees = [TreeStructure.from_dict(t) for t in d['trees']]
        model.n_features = d['n_features']
        return model
