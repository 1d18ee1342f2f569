import itertools
import numpy as np
import pytest
from numpy.testing import assert_allclose
from PCGLabPy.core.errors import BadCutoffTable, BadLabel, DimMismatch
from PCGLabPy.core.io import Manifest
from PCGLabPy.screening import (
    DemographicRecord, acbmi_category, encode_demographics,
    demographic_matrix, fuse, ACBMI_CATEGORIES
)

CUTOFFS = dict(
    neonate=[11.0, 14.5, 16.5],
    infant=[14.0, 18.0, 19.5],
    child=[14.0, 18.0, 22.0],
    adolescent=[17.0, 24.0, 28.0],
)


def test_acbmi_category():
    record = DemographicRecord('male', 'child', 130, 30)
    assert record.bmi == pytest.approx(17.75)
    assert acbmi_category(record, CUTOFFS) == 'normal'
    assert acbmi_category(record) == 'normal'


def test_acbmi_boundaries():
    height = 100.0
    for weight, expected in [(13.9, 'underweight'), (14.0, 'normal'),
                             (18.0, 'overweight'), (22.0, 'obese'),
                             (30.0, 'obese')]:
        record = DemographicRecord(age_group='child', height_cm=height,
                                   weight_kg=weight)
        assert acbmi_category(record, CUTOFFS) == expected


def test_acbmi_missing():
    assert acbmi_category(DemographicRecord('male', 'child', None, 30)) \
        is None
    assert acbmi_category(DemographicRecord('male', None, 130, 30)) is None


def test_bad_cutoffs():
    record = DemographicRecord('male', 'child', 130, 30)
    bad = dict(CUTOFFS, child=[14.0, 22.0, 18.0])
    with pytest.raises(BadCutoffTable):
        acbmi_category(record, bad)
    with pytest.raises(BadCutoffTable):
        acbmi_category(record, dict(CUTOFFS, child=[14.0, 18.0]))
    missing = dict(CUTOFFS)
    del missing['infant']
    with pytest.raises(BadCutoffTable):
        acbmi_category(record, missing)


def test_record_validation():
    with pytest.raises(BadLabel):
        DemographicRecord(height_cm=-1)
    with pytest.raises(BadLabel):
        DemographicRecord(age_group='adult')
    with pytest.raises(BadLabel):
        DemographicRecord(sex='x')


def test_encode_layout():
    record = DemographicRecord('male', 'child', 130, 30, False)
    assert_allclose(encode_demographics(record, CUTOFFS),
                    [1, 0, 0, 0, 1, 0, 0, 1, 0, 0])
    assert_allclose(encode_demographics(DemographicRecord(), CUTOFFS),
                    [0.5, 0, 0, 0, 0, 0, 0, 0, 0, 0])
    pregnant = encode_demographics(
        DemographicRecord('female', 'adolescent', pregnant=True), CUTOFFS
    )
    assert_allclose(pregnant, [0, 1, 0, 0, 0, 1, 0, 0, 0, 0])


def test_encode_total():
    sexes = [None, 'female', 'male']
    groups = [None, 'neonate', 'infant', 'child', 'adolescent']
    heights = [None, 50.0, 120.0, 170.0]
    weights = [None, 3.0, 25.0, 90.0]
    pregnancy = [None, True, False]
    for values in itertools.product(sexes, groups, heights, weights,
                                    pregnancy):
        vector = encode_demographics(DemographicRecord(*values), CUTOFFS)
        assert vector.shape == (10,)
        assert ((vector >= 0) & (vector <= 1)).all()
        assert vector[2:6].sum() == (values[1] is not None)
        assert vector[6:].sum() <= 1


def test_every_category_encoded():
    seen = set()
    for weight in (10.0, 16.0, 20.0, 30.0):
        record = DemographicRecord(age_group='child', height_cm=100,
                                   weight_kg=weight)
        vector = encode_demographics(record, CUTOFFS)
        seen.add(ACBMI_CATEGORIES[int(np.argmax(vector[6:]))])
    assert seen == set(ACBMI_CATEGORIES)


def test_demographic_matrix():
    manifest = Manifest.from_records([
        dict(path='a.wav', sex='M', age_group='child', height_cm='130',
             weight_kg='30', pregnant='false'),
        dict(path='b.wav'),
    ])
    matrix = demographic_matrix(manifest, CUTOFFS)
    assert matrix.shape == (2, 10)
    assert_allclose(matrix[0], [1, 0, 0, 0, 1, 0, 0, 1, 0, 0])
    assert_allclose(matrix[1], [0.5, 0, 0, 0, 0, 0, 0, 0, 0, 0])


def test_fuse():
    audio = np.arange(128, dtype=float)
    demo = np.zeros(10)
    fused = fuse(audio, demo)
    assert fused.shape == (138,)
    assert_allclose(fused[:128], audio)
    assert_allclose(fused[128:], 0)
    assert_allclose(fuse(audio, demo), fused)

    batch = fuse(np.ones((3, 4)), np.zeros((3, 10)), audio_dim=4)
    assert batch.shape == (3, 14)


def test_fuse_mismatch():
    with pytest.raises(DimMismatch):
        fuse(np.ones(4), np.zeros(9))
    with pytest.raises(DimMismatch):
        fuse(np.ones(4), np.zeros(10), audio_dim=5)
    with pytest.raises(DimMismatch):
        fuse(np.ones((3, 4)), np.zeros((2, 10)))
