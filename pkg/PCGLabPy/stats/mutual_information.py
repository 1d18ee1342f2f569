import numpy as np
from scipy.special import xlogy
from PCGLabPy.core.errors import DegenerateLabels, LengthMismatch, EmptyData

DEFAULT_N_BINS = 10
MIN_SAMPLES = 10


def equal_frequency_bins(x, n_bins=DEFAULT_N_BINS):
    """
    Assign each value to one of `n_bins` equal-frequency bins.

    Bins depend only on the rank of each value (ties broken by position,
    i.e. a stable sort), bin = floor(rank * n_bins / n).

    Parameters
    ----------
    x : ndarray
    n_bins : int

    Returns
    -------
    ndarray
        Integer bin index of every value
    """
    x = np.asarray(x)
    n = x.size
    order = np.argsort(x, kind='stable')
    ranks = np.empty(n, dtype=np.int64)
    ranks[order] = np.arange(n)
    return (ranks * n_bins) // n


def contingency_mutual_information(table):
    """
    Mutual information (nats) of the joint distribution given by a table of
    counts.

    Parameters
    ----------
    table : ndarray
        Counts, shape (n_values_a, n_values_b)

    Returns
    -------
    float
    """
    table = np.asarray(table, dtype=float)
    total = table.sum()
    if total <= 0:
        return 0.0
    p = table / total
    pa = p.sum(axis=1, keepdims=True)
    pb = p.sum(axis=0, keepdims=True)
    with np.errstate(divide='ignore', invalid='ignore'):
        mi = np.sum(xlogy(p, p) - xlogy(p, pa * pb))
    return max(0.0, float(mi))


def mutual_information(feature, labels, n_bins=DEFAULT_N_BINS):
    """
    Mutual information between a real feature, discretised into
    equal-frequency bins, and a binary label.

    Parameters
    ----------
    feature : ndarray
    labels : ndarray
        Binary labels (two distinct values)
    n_bins : int

    Returns
    -------
    float
        MI in nats, >= 0. 0 for a constant feature.
    """
    feature = np.asarray(feature, dtype=float)
    labels = np.asarray(labels)
    if feature.size != labels.size:
        raise LengthMismatch("feature has {} values, labels {}"
                             .format(feature.size, labels.size))
    if feature.size < MIN_SAMPLES:
        raise EmptyData("mutual_information requires at least {} samples"
                        .format(MIN_SAMPLES))
    classes, y = np.unique(labels, return_inverse=True)
    if classes.size != 2:
        raise DegenerateLabels("Expected two classes, found {}"
                               .format(classes.size))
    if np.all(feature == feature[0]):
        return 0.0
    bins = equal_frequency_bins(feature, n_bins)
    table = np.zeros((n_bins, 2))
    np.add.at(table, (bins, y), 1)
    return contingency_mutual_information(table)
