from abc import abstractmethod
import numpy as np
from PCGLabPy.core.errors import (
    EmptyData, SchemaMismatch, BadLabel, ShapeMismatch, OutOfRange
)

MODEL_SCHEMA_VERSION = 1


def check_xy(X, y=None):
    """
    Convert a feature matrix (and labels) to float / int arrays and check
    their shapes.

    Returns
    -------
    X : ndarray
        Shape (n_samples, n_features)
    y : ndarray or None
        Labels in {0, 1}
    """
    X = np.asarray(X, dtype=np.float64)
    if X.ndim != 2:
        raise ShapeMismatch("Feature matrix must be 2-D")
    if X.shape[0] == 0:
        raise EmptyData("Feature matrix has no rows")
    if not np.isfinite(X).all():
        raise OutOfRange("Feature matrix contains non-finite values")
    if y is None:
        return X, None
    y = np.asarray(y)
    if y.shape != (X.shape[0],):
        raise ShapeMismatch("Expected {} labels, got shape {}"
                            .format(X.shape[0], y.shape))
    if not np.isin(y, [0, 1]).all():
        raise BadLabel("Labels must be binary 0/1")
    return X, y.astype(np.int64)


def proba_to_label(proba):
    """
    Argmax over the two class probabilities, ties resolved to class 0
    """
    proba = np.asarray(proba)
    return (proba[:, 1] > proba[:, 0]).astype(np.int64)


class Classifier:
    kind = None  # Tag identifying the model in serialised form

    def __init__(self, **kwargs):
        """
        Base class for the binary classifiers. Subclasses implement
        `fit`, `_positive_proba`, `to_dict` and `from_dict`.

        Parameters
        ----------
        kwargs
            Hyperparameters of the classifier
        """
        self.kwargs = kwargs
        self.n_features = None

    def _check_fitted(self, X):
        if self.n_features is None:
            raise ValueError("{} is not fitted".format(type(self).__name__))
        X, _ = check_xy(X)
        if X.shape[1] != self.n_features:
            raise SchemaMismatch(
                "{} was fitted on {} features, got {}".format(
                    type(self).__name__, self.n_features, X.shape[1]
                )
            )
        return X

    @abstractmethod
    def fit(self, X, y):
        """
        Fit the classifier.

        Parameters
        ----------
        X : ndarray
            Shape (n_samples, n_features)
        y : ndarray
            Labels in {0, 1}

        Returns
        -------
        self
        """

    @abstractmethod
    def _positive_proba(self, X):
        """
        Probability of class 1 for a checked feature matrix
        """

    def predict_proba(self, X):
        """
        Class probabilities.

        Returns
        -------
        ndarray
            Shape (n_samples, 2), columns (P(0), P(1)), rows sum to 1
        """
        X = self._check_fitted(X)
        p = np.clip(self._positive_proba(X), 0, 1)
        return np.column_stack([1 - p, p])

    def predict(self, X):
        return proba_to_label(self.predict_proba(X))

    def _base_dict(self):
        return dict(schema_version=MODEL_SCHEMA_VERSION, kind=self.kind,
                    n_features=self.n_features)

    @abstractmethod
    def to_dict(self):
        """
        JSON-compatible representation of the fitted model
        """

    @classmethod
    @abstractmethod
    def from_dict(cls, d):
        """
        Rebuild a fitted model from `to_dict`
        """
