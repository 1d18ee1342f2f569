import numpy as np
from PCGLabPy.core.classifier import Classifier, check_xy
from PCGLabPy.core.errors import SchemaMismatch


class SoftVoting(Classifier):
    """
    Soft-voting ensemble: the class probabilities are the arithmetic mean
    of the member probabilities, the label is their argmax (ties to
    class 0).
    """
    kind = 'voting'

    def __init__(self, members=(), names=None, **kwargs):
        """
        Parameters
        ----------
        members : list
            Fitted `Classifier` instances (at least two)
        names : list
            Tag of each member, defaults to its `kind`
        """
        super().__init__(**kwargs)
        self.members = list(members)
        self.names = list(names) if names is not None \
            else [m.kind for m in self.members]

    def _check_members(self):
        if len(self.members) < 2:
            raise ValueError("SoftVoting requires at least two members")
        if len(self.names) != len(self.members):
            raise ValueError("One name per member is required")
        n_features = {m.n_features for m in self.members}
        if None in n_features:
            raise ValueError("SoftVoting members must be fitted")
        if len(n_features) != 1:
            raise SchemaMismatch("SoftVoting members were fitted on "
                                 "different schemas: {}".format(n_features))
        self.n_features = n_features.pop()

    def fit(self, X, y):
        """
        Fit every member on the same data
        """
        X, y = check_xy(X, y)
        for m in self.members:
            m.fit(X, y)
        self._check_members()
        return self

    def member_proba(self, X):
        """
        Probabilities of each member, keyed by member name
        """
        X = self._check_fitted(X)
        return {n: m.predict_proba(X) for n, m in zip(self.names,
                                                     self.members)}

    def _positive_proba(self, X):
        return np.mean([m.predict_proba(X)[:, 1] for m in self.members],
                       axis=0)

    def to_dict(self):
        d = self._base_dict()
        d.update(names=self.names,
                 members=[m.to_dict() for m in self.members])
        return d

    @classmethod
    def from_dict(cls, d):
        from PCGLabPy.core.factory import ClassifierFactory
        members = [ClassifierFactory.load(m) for m in d['members']]
        return fit_voting(members, d['names'])


def fit_voting(members, names=None):
    """
    Assemble already fitted members into a `SoftVoting` ensemble.
    """
    model = SoftVoting(members, names)
    model._check_members()
    return model
