"""
Binary quality labels and the stratified train/test partition of a
labelled manifest
"""
import numpy as np
from PCGLabPy.core.errors import OutOfRange, BadScore, DegenerateClass

UNACCEPTABLE = 0
ACCEPTABLE = 1
LABEL_NAMES = {UNACCEPTABLE: 'unacceptable', ACCEPTABLE: 'acceptable'}
SOURCES = ('annotated', 'pseudo')


class QualityLabel:
    def __init__(self, value, source='annotated'):
        if value not in LABEL_NAMES:
            raise ValueError("Quality label must be 0 or 1, got {}"
                             .format(value))
        if source not in SOURCES:
            raise ValueError("Quality label source must be one of {}"
                             .format(SOURCES))
        self.value = int(value)
        self.source = source

    @property
    def name(self):
        return LABEL_NAMES[self.value]

    def __eq__(self, other):
        return isinstance(other, QualityLabel) \
            and (self.value, self.source) == (other.value, other.source)

    def __repr__(self):
        return "QualityLabel({}, {})".format(self.name, self.source)


def map_score(score):
    """
    Binary label of an annotated 1-5 quality score: 1-3 are unacceptable,
    4-5 acceptable.

    Returns
    -------
    QualityLabel
    """
    if isinstance(score, bool) or score not in (1, 2, 3, 4, 5):
        raise OutOfRange("Quality score must be an integer in 1-5, got {}"
                         .format(score))
    value = ACCEPTABLE if score >= 4 else UNACCEPTABLE
    return QualityLabel(value, 'annotated')


def quality_labels(manifest):
    """
    Binary label of every manifest row.

    Returns
    -------
    ndarray
        0/1 labels, in manifest order
    """
    labels = []
    for i, score in enumerate(manifest.df['quality_score']):
        if score is None:
            raise BadScore("Row {} ({}) has no quality_score".format(
                i, manifest.df['path'].iloc[i]
            ))
        labels.append(map_score(int(score)).value)
    return np.array(labels, dtype=np.int64)


def check_classes(labels, minimum=2):
    """
    Both labels must be present at least `minimum` times
    """
    for value, name in LABEL_NAMES.items():
        count = int(np.sum(labels == value))
        if count < minimum:
            raise DegenerateClass(
                "Class '{}' has {} rows, at least {} are required"
                .format(name, count, minimum)
            )


def stratified_split(manifest, test_fraction=0.2, seed=0):
    """
    Partition a labelled manifest so that both halves keep the class
    proportions. Each class is shuffled on its own and
    round(test_fraction * class size) of its rows go to the test half.

    Parameters
    ----------
    manifest : Manifest
    test_fraction : float
        In [0, 1)
    seed : int

    Returns
    -------
    train : Manifest
    test : Manifest
        Both keep the manifest order of their rows
    """
    if not 0 <= test_fraction < 1:
        raise ValueError("test_fraction must be in [0, 1), got {}"
                         .format(test_fraction))
    labels = quality_labels(manifest)
    check_classes(labels)
    rng = np.random.RandomState(seed)
    is_test = np.zeros(labels.size, dtype=bool)
    for value in sorted(LABEL_NAMES):
        rows = rng.permutation(np.flatnonzero(labels == value))
        n_test = int(np.floor(test_fraction * rows.size + 0.5))
        is_test[rows[:n_test]] = True
    return manifest.subset(~is_test), manifest.subset(is_test)
