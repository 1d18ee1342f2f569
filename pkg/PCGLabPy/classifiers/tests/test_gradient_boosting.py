import json
import numpy as np
import pytest
from numpy.testing import assert_allclose, assert_array_equal
from PCGLabPy.classifiers import GradientBoosting

XOR_X = np.array([[0., 0.], [0., 1.], [1., 0.], [1., 1.]])
XOR_Y = np.array([0, 1, 1, 0])


def test_zero_rounds():
    X = np.arange(10, dtype=float)[:, None]
    y = np.array([0, 0, 0, 1, 1, 1, 1, 1, 1, 1])
    gb = GradientBoosting(n_rounds=0).fit(X, y)
    assert_allclose(gb.predict_proba(X)[:, 1], 0.7)


def test_xor():
    gb = GradientBoosting(n_rounds=50, max_depth=2).fit(XOR_X, XOR_Y)
    assert_array_equal(gb.predict(XOR_X), XOR_Y)


def test_monotone_loss():
    rng = np.random.RandomState(0)
    X = rng.standard_normal((200, 5))
    y = (X[:, 0] + rng.standard_normal(200) > 0).astype(int)
    gb = GradientBoosting(n_rounds=30).fit(X, y)
    loss = np.asarray(gb.train_loss)
    assert loss.size == 31
    assert np.all(np.diff(loss) <= 0)
    assert loss[-1] < loss[0]


def test_single_class():
    X = np.arange(10, dtype=float)[:, None]
    with pytest.warns(UserWarning):
        gb = GradientBoosting().fit(X, np.ones(10, dtype=int))
    assert_allclose(gb.predict_proba(X)[:, 1], 1)


def test_serialization():
    gb = GradientBoosting(n_rounds=10, max_depth=2).fit(XOR_X, XOR_Y)
    copy = GradientBoosting.from_dict(json.loads(json.dumps(gb.to_dict())))
    assert_allclose(copy.predict_proba(XOR_X), gb.predict_proba(XOR_X))
