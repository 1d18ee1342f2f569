import numpy as np
import pandas as pd
from scipy.stats import rankdata
from PCGLabPy.core.errors import LengthMismatch, SingleClass


class ConfusionCounts:
    def __init__(self, tp, fp, tn, fn):
        """
        Counts of a binary decision against the truth, for a fixed
        positive class.
        """
        counts = (tp, fp, tn, fn)
        if any(int(c) != c or c < 0 for c in counts):
            raise ValueError("Confusion counts must be non-negative "
                             "integers, got {}".format(counts))
        self.tp, self.fp, self.tn, self.fn = (int(c) for c in counts)
        if self.n == 0:
            raise ValueError("Confusion counts are all zero")

    @property
    def n(self):
        return self.tp + self.fp + self.tn + self.fn

    @property
    def referred(self):
        """Number of predicted positives"""
        return self.tp + self.fp

    def as_dict(self):
        return dict(tp=self.tp, fp=self.fp, tn=self.tn, fn=self.fn)

    def __eq__(self, other):
        return isinstance(other, ConfusionCounts) \
            and self.as_dict() == other.as_dict()

    def __repr__(self):
        return "ConfusionCounts(tp={tp}, fp={fp}, tn={tn}, fn={fn})".format(
            **self.as_dict()
        )


def _binary(values, name):
    values = np.asarray(values)
    if not np.isin(values, (0, 1)).all():
        raise ValueError("{} must be binary (0/1)".format(name))
    return values.astype(np.int64)


def confusion(labels, predictions):
    """
    Confusion counts of binary predictions, class 1 being positive.

    Parameters
    ----------
    labels : array_like
    predictions : array_like

    Returns
    -------
    ConfusionCounts
    """
    labels = _binary(labels, "labels")
    predictions = _binary(predictions, "predictions")
    if labels.shape != predictions.shape:
        raise LengthMismatch("{} labels but {} predictions".format(
            labels.size, predictions.size
        ))
    if labels.size == 0:
        raise LengthMismatch("No labels to compare")
    return ConfusionCounts(
        tp=np.sum((labels == 1) & (predictions == 1)),
        fp=np.sum((labels == 0) & (predictions == 1)),
        tn=np.sum((labels == 0) & (predictions == 0)),
        fn=np.sum((labels == 1) & (predictions == 0)),
    )


def _ratio(num, den, name, undefined):
    if den == 0:
        undefined.append(name)
        return 0.0
    return num / den


def basic_metrics(counts):
    """
    Accuracy, precision, recall (sensitivity), specificity and F1.

    A metric whose denominator is zero is reported as 0 and its name is
    listed under "undefined".

    Returns
    -------
    dict
    """
    c = counts
    undefined = []
    precision = _ratio(c.tp, c.tp + c.fp, 'precision', undefined)
    recall = _ratio(c.tp, c.tp + c.fn, 'recall', undefined)
    specificity = _ratio(c.tn, c.tn + c.fp, 'specificity', undefined)
    f1 = _ratio(2 * c.tp, 2 * c.tp + c.fp + c.fn, 'f1', undefined)
    return dict(
        accuracy=(c.tp + c.tn) / c.n,
        precision=precision,
        recall=recall,
        specificity=specificity,
        f1=f1,
        undefined=undefined,
    )


def _check_scores(scores, labels):
    scores = np.asarray(scores, dtype=float)
    labels = _binary(labels, "labels")
    if scores.shape != labels.shape:
        raise LengthMismatch("{} scores but {} labels".format(
            scores.size, labels.size
        ))
    if not np.isfinite(scores).all():
        raise ValueError("Scores must be finite")
    if labels.size == 0 or np.unique(labels).size < 2:
        raise SingleClass("AUROC requires both classes to be present")
    return scores, labels


def auroc(scores, labels):
    """
    Area under the ROC curve in its Mann-Whitney form: the probability that
    a random positive scores above a random negative, ties counting 1/2.

    Parameters
    ----------
    scores : array_like
        Higher means more likely positive
    labels : array_like
        Binary truth

    Returns
    -------
    float
    """
    scores, labels = _check_scores(scores, labels)
    ranks = rankdata(scores)  # average ranks for ties
    pos = labels == 1
    n_pos = pos.sum()
    n_neg = labels.size - n_pos
    u = ranks[pos].sum() - n_pos * (n_pos + 1) / 2
    return float(u / (n_pos * n_neg))


def roc_curve(scores, labels):
    """
    Points of the ROC curve, one per distinct score used as threshold
    (positive if score >= threshold), preceded by the (0, 0) corner.

    Returns
    -------
    pd.DataFrame
        Columns threshold, fpr, tpr
    """
    scores, labels = _check_scores(scores, labels)
    order = np.argsort(-scores, kind='stable')
    s = scores[order]
    y = labels[order]
    tps = np.cumsum(y)
    fps = np.cumsum(1 - y)
    last = np.r_[np.diff(s) != 0, True]
    thresholds = np.r_[np.inf, s[last]]
    tpr = np.r_[0, tps[last]] / tps[-1]
    fpr = np.r_[0, fps[last]] / fps[-1]
    return pd.DataFrame(dict(threshold=thresholds, fpr=fpr, tpr=tpr))
