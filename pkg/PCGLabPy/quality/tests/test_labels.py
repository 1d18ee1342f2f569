import numpy as np
import pytest
from PCGLabPy.core.errors import OutOfRange, DegenerateClass, BadScore
from PCGLabPy.core.io import Manifest
from PCGLabPy.quality import (
    map_score, QualityLabel, stratified_split, quality_labels
)


def get_manifest(scores):
    return Manifest.from_records([
        dict(path="rec_{}.wav".format(i), quality_score=s)
        for i, s in enumerate(scores)
    ])


def test_map_score():
    assert map_score(3) == QualityLabel(0)
    assert map_score(4) == QualityLabel(1)
    assert map_score(4).source == 'annotated'
    values = [map_score(s).value for s in range(1, 6)]
    assert values == [0, 0, 0, 1, 1]
    assert np.all(np.diff(values) >= 0)
    for bad in (0, 6, -1, 2.5):
        with pytest.raises(OutOfRange):
            map_score(bad)


def test_quality_labels():
    assert list(quality_labels(get_manifest([1, 5, 4, 3]))) == [0, 1, 1, 0]
    with pytest.raises(BadScore):
        quality_labels(get_manifest([1, None]))


def test_per_class_counts():
    manifest = get_manifest([5] * 60 + [1] * 40)
    train, test = stratified_split(manifest, 0.2, seed=1)
    y_test = quality_labels(test)
    assert (y_test == 1).sum() == 12
    assert (y_test == 0).sum() == 8
    assert len(train) == 80


def test_partition():
    manifest = get_manifest([5, 4, 3, 2, 1] * 7)
    train, test = stratified_split(manifest, 0.3, seed=4)
    assert set(train.paths).isdisjoint(test.paths)
    assert sorted(train.paths + test.paths) == sorted(manifest.paths)
    # Manifest order is kept
    assert train.paths == [p for p in manifest.paths if p in train.paths]


def test_determinism():
    manifest = get_manifest([5, 1] * 20)
    a = stratified_split(manifest, seed=3)
    b = stratified_split(manifest, seed=3)
    c = stratified_split(manifest, seed=4)
    assert a[1].paths == b[1].paths
    assert a[1].paths != c[1].paths


def test_proportions():
    rng = np.random.RandomState(0)
    for seed in range(20):
        n = rng.randint(10, 200)
        scores = rng.randint(1, 6, n)
        scores[:2] = [1, 5]
        scores[2:4] = [2, 4]
        manifest = get_manifest(scores)
        _, test = stratified_split(manifest, 0.2, seed=seed)
        y = quality_labels(manifest)
        y_test = quality_labels(test)
        expected = y.mean() * len(test)
        assert abs((y_test == 1).sum() - expected) <= 1


def test_degenerate_class():
    with pytest.raises(DegenerateClass):
        stratified_split(get_manifest([5, 5, 5, 1]))
    with pytest.raises(DegenerateClass):
        stratified_split(get_manifest([5, 5, 5, 5]))
