import numpy as np
import pytest
from PCGLabPy.stats import (
    mutual_information, contingency_mutual_information, equal_frequency_bins
)
from PCGLabPy.core.errors import DegenerateLabels, EmptyData


def test_contingency_table():
    table = np.array([[2, 0], [0, 2]])
    assert contingency_mutual_information(table) == pytest.approx(
        np.log(2), abs=1e-15
    )
    assert contingency_mutual_information(np.ones((3, 2))) == 0


def test_equal_frequency_bins():
    bins = equal_frequency_bins(np.arange(100)[::-1], 10)
    assert np.bincount(bins).tolist() == [10] * 10
    assert bins[0] == 9

    # Ties are broken by position
    bins = equal_frequency_bins(np.zeros(20), 10)
    assert bins.tolist() == list(np.repeat(np.arange(10), 2))


def test_informative_feature():
    rng = np.random.RandomState(0)
    x = rng.standard_normal(1000)
    y = (x > np.median(x)).astype(int)
    assert mutual_information(x, y) == pytest.approx(np.log(2), abs=0.05)


def test_independent_feature():
    rng = np.random.RandomState(1)
    x = rng.standard_normal(1000)
    y = rng.randint(0, 2, 1000)
    assert mutual_information(x, y) < 0.05


def test_constant_feature():
    y = np.tile([0, 1], 10)
    assert mutual_information(np.ones(20), y) == 0


def test_invariances():
    rng = np.random.RandomState(2)
    x = rng.standard_normal(500)
    y = (x + rng.standard_normal(500) > 0).astype(int)
    mi = mutual_information(x, y)
    assert mutual_information(x, 1 - y) == pytest.approx(mi, rel=1e-12)
    assert mutual_information(np.exp(x), y) == mi
    assert mutual_information(3 * x - 7, y) == mi


def test_degenerate():
    with pytest.raises(DegenerateLabels):
        mutual_information(np.arange(20), np.zeros(20))
    with pytest.raises(EmptyData):
        mutual_information(np.arange(5), [0, 1, 0, 1, 0])
