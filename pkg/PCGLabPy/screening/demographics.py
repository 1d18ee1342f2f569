"""
Socio-demographic features of the screening model: the age-corrected BMI
category and the fixed 10-dimensional encoding
[sex, pregnant, age group one-hot (4), acBMI one-hot (4)].
"""
import numpy as np
from PCGLabPy.core.errors import BadCutoffTable, BadLabel, DimMismatch
from PCGLabPy.core.io.manifest import AGE_GROUPS

ACBMI_CATEGORIES = ('underweight', 'normal', 'overweight', 'obese')
DEMO_DIM = 10
MISSING_SEX = 0.5


class DemographicRecord:
    def __init__(self, sex=None, age_group=None, height_cm=None,
                 weight_kg=None, pregnant=None):
        """
        Socio-demographic fields of one subject. None marks a missing
        value.

        Parameters
        ----------
        sex : str
            "female" or "male"
        age_group : str
            One of `AGE_GROUPS`
        height_cm : float
        weight_kg : float
        pregnant : bool
        """
        if sex not in (None, 'female', 'male'):
            raise BadLabel("sex must be female or male, got {}".format(sex))
        if age_group not in (None,) + AGE_GROUPS:
            raise BadLabel("age_group must be one of {}, got {}"
                           .format(AGE_GROUPS, age_group))
        for name, value in (('height_cm', height_cm),
                            ('weight_kg', weight_kg)):
            if value is not None and not value > 0:
                raise BadLabel("{} must be positive, got {}"
                               .format(name, value))
        self.sex = sex
        self.age_group = age_group
        self.height_cm = None if height_cm is None else float(height_cm)
        self.weight_kg = None if weight_kg is None else float(weight_kg)
        self.pregnant = None if pregnant is None else bool(pregnant)

    def __repr__(self):
        return "DemographicRecord({})".format(", ".join(
            "{}={}".format(k, v) for k, v in vars(self).items()
        ))

    @classmethod
    def from_row(cls, row):
        """
        Record of a manifest row (dict), as yielded by iterating a Manifest
        """
        return cls(row.get('sex'), row.get('age_group'),
                   row.get('height_cm'), row.get('weight_kg'),
                   row.get('pregnant'))

    @property
    def bmi(self):
        if self.height_cm is None or self.weight_kg is None:
            return None
        return self.weight_kg / (self.height_cm / 100) ** 2


def check_cutoffs(cutoffs):
    """
    Validate an acBMI cutoff table: three strictly increasing finite
    thresholds (t1, t2, t3) for every age group.

    Returns
    -------
    dict
        Age group -> ndarray of thresholds
    """
    if not isinstance(cutoffs, dict):
        raise BadCutoffTable("acBMI cutoffs must be a mapping of age group "
                             "to thresholds")
    missing = [g for g in AGE_GROUPS if g not in cutoffs]
    if missing:
        raise BadCutoffTable("acBMI cutoffs lack age groups: {}"
                             .format(missing))
    table = {}
    for group in AGE_GROUPS:
        try:
            t = np.asarray(cutoffs[group], dtype=np.float64)
        except (TypeError, ValueError):
            raise BadCutoffTable("acBMI cutoffs of {} are not numbers"
                                 .format(group))
        if t.shape != (3,) or not np.isfinite(t).all() \
                or not np.all(np.diff(t) > 0):
            raise BadCutoffTable("acBMI cutoffs of {} must be three "
                                 "increasing values, got {}"
                                 .format(group, cutoffs[group]))
        table[group] = t
    return table


def default_cutoffs():
    from PCGLabPy.utils.config import DEFAULT_CONFIG
    return DEFAULT_CONFIG['head']['acbmi_cutoffs']


def acbmi_category(record, cutoffs=None):
    """
    Age-corrected BMI category: BMI < t1 underweight, [t1, t2) normal,
    [t2, t3) overweight, >= t3 obese, with the thresholds of the subject's
    age group.

    Parameters
    ----------
    record : DemographicRecord
    cutoffs : dict
        Age group -> (t1, t2, t3); defaults to `head.acbmi_cutoffs`

    Returns
    -------
    str or None
        None when the age group, height or weight is missing
    """
    table = check_cutoffs(default_cutoffs() if cutoffs is None else cutoffs)
    bmi = record.bmi
    if bmi is None or record.age_group is None:
        return None
    index = np.searchsorted(table[record.age_group], bmi, side='right')
    return ACBMI_CATEGORIES[index]


def encode_demographics(record, cutoffs=None):
    """
    Fixed-layout vector of a record. Missing sex is 0.5, missing pregnancy
    0, a missing age group or acBMI category an all-zero block.

    Returns
    -------
    ndarray
        Shape (10,), values in [0, 1]
    """
    out = np.zeros(DEMO_DIM)
    out[0] = MISSING_SEX if record.sex is None \
        else float(record.sex == 'male')
    out[1] = float(bool(record.pregnant))
    if record.age_group is not None:
        out[2 + AGE_GROUPS.index(record.age_group)] = 1
    category = acbmi_category(record, cutoffs)
    if category is not None:
        out[6 + ACBMI_CATEGORIES.index(category)] = 1
    return out


def demographic_matrix(manifest, cutoffs=None):
    """
    Encoded demographics of every manifest row, shape (n, 10)
    """
    rows = [encode_demographics(DemographicRecord.from_row(row), cutoffs)
            for row in manifest]
    if not rows:
        return np.zeros((0, DEMO_DIM))
    return np.stack(rows)


def fuse(audio, demo, audio_dim=None):
    """
    Concatenate audio embeddings and demographic vectors, audio first.

    Parameters
    ----------
    audio : ndarray
        Shape (d,) or (n, d)
    demo : ndarray
        Shape (10,) or (n, 10)
    audio_dim : int
        Expected embedding size

    Returns
    -------
    ndarray
        Shape (d + 10,) or (n, d + 10)
    """
    audio = np.asarray(audio, dtype=np.float64)
    demo = np.asarray(demo, dtype=np.float64)
    if audio.ndim != demo.ndim or demo.shape[-1] != DEMO_DIM:
        raise DimMismatch("Cannot fuse audio {} with demographics {}"
                          .format(audio.shape, demo.shape))
    if audio_dim is not None and audio.shape[-1] != audio_dim:
        raise DimMismatch("Audio embedding has {} values, {} expected"
                          .format(audio.shape[-1], audio_dim))
    if audio.ndim == 2 and audio.shape[0] != demo.shape[0]:
        raise DimMismatch("{} embeddings but {} demographic vectors"
                          .format(audio.shape[0], demo.shape[0]))
    return np.concatenate([audio, demo], axis=-1)
