"""
Feature ranking by mutual information with the label and selection of the
most informative fraction
"""
import numpy as np
import pandas as pd
from PCGLabPy.core.errors import SchemaMismatch, EmptyData, OutOfRange
from PCGLabPy.stats.mutual_information import (
    mutual_information, DEFAULT_N_BINS
)

DEFAULT_KEEP_FRACTION = 0.2


def n_selected(keep_fraction, total):
    """
    Number of kept features, max(1, round(keep_fraction * total)) with
    halves rounded up
    """
    return max(1, int(np.floor(keep_fraction * total + 0.5)))


class SelectionModel:
    def __init__(self, feature_names, mi_scores,
                 keep_fraction=DEFAULT_KEEP_FRACTION, n_bins=DEFAULT_N_BINS):
        """
        Mutual-information ranking of a feature schema.

        Parameters
        ----------
        feature_names : list
            Names of the training columns, in training order
        mi_scores : ndarray
            MI of each training column, same order as `feature_names`
        keep_fraction : float
            Fraction of features kept, in (0, 1]
        n_bins : int
            Bins used by the estimator
        """
        if not 0 < keep_fraction <= 1:
            raise ValueError("keep_fraction must be in (0, 1], got {}"
                             .format(keep_fraction))
        self.feature_names = list(feature_names)
        self.scores = np.asarray(mi_scores, dtype=float)
        self.keep_fraction = float(keep_fraction)
        self.n_bins = int(n_bins)

        index = np.arange(self.scores.size)
        # Descending MI, ties broken by original column index
        self.ranking = np.lexsort((index, -self.scores))
        n_keep = n_selected(self.keep_fraction, self.scores.size)
        self.selected_indices = self.ranking[:n_keep]

    @property
    def ranked_names(self):
        return [self.feature_names[i] for i in self.ranking]

    @property
    def mi_scores(self):
        """
        MI scores in ranked (non-increasing) order
        """
        return self.scores[self.ranking]

    @property
    def selected_names(self):
        return [self.feature_names[i] for i in self.selected_indices]

    def ranking_table(self):
        """
        Ranking as a DataFrame with columns (name, mi_score, selected)
        """
        selected = set(self.selected_indices.tolist())
        return pd.DataFrame(dict(
            name=self.ranked_names,
            mi_score=self.mi_scores,
            selected=[i in selected for i in self.ranking],
        ))

    def to_dict(self):
        return dict(
            feature_names=self.feature_names,
            mi_scores=self.scores.tolist(),
            keep_fraction=self.keep_fraction,
            n_bins=self.n_bins,
        )

    @classmethod
    def from_dict(cls, d):
        return cls(d['feature_names'], d['mi_scores'], d['keep_fraction'],
                   d['n_bins'])


def fit_selection(X, y, keep_fraction=DEFAULT_KEEP_FRACTION,
                  n_bins=DEFAULT_N_BINS):
    """
    Rank every column of X by its MI with the label.

    Parameters
    ----------
    X : pd.DataFrame
        Finite feature matrix, one named column per feature
    y : ndarray
        Binary labels
    keep_fraction : float
    n_bins : int

    Returns
    -------
    SelectionModel
    """
    if X.shape[0] == 0 or X.shape[1] == 0:
        raise EmptyData("Cannot fit a selection on an empty feature matrix")
    values = X.to_numpy(dtype=float)
    if not np.isfinite(values).all():
        raise OutOfRange("Feature matrix contains non-finite values")
    scores = [
        mutual_information(values[:, i], y, n_bins)
        for i in range(values.shape[1])
    ]
    return SelectionModel(list(X.columns), scores, keep_fraction, n_bins)


def apply_selection(model, X):
    """
    Select the kept columns of X, by name, in ranked order.

    Raises
    ------
    SchemaMismatch
        A kept column is missing from X
    """
    missing = [n for n in model.selected_names if n not in X.columns]
    if missing:
        raise SchemaMismatch("Feature matrix lacks selected columns: {}"
                             .format(missing))
    return X[model.selected_names]
