import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from opmeans import scalar_means as sm
from opmeans.harness import random_spd
from opmeans.operator_means import (
    MeanKind,
    Pencil,
    RepFn,
    congruence_equivariance_residual,
    direct_mean,
    mean,
    rep_function,
    spectral_mean,
    transpose_identity_check,
)

KINDS = [k.value for k in MeanKind]
seeds = st.integers(0, 2 ** 40)


def _pair(dim, seed):
    return random_spd(dim, seed), random_spd(dim, seed + 1)


def test_orientation():
    assert np.allclose(mean(np.eye(2), 2.0 * np.eye(2), "arith", 0.3), 1.3 * np.eye(2))
    assert np.allclose(mean(np.eye(2), np.diag([4.0, 9.0]), "geo", 0.5), np.diag([2.0, 3.0]))


@pytest.mark.parametrize("kind", KINDS)
def test_scalar_reduction(kind):
    da, db = np.array([0.5, 2.0, 30.0]), np.array([7.0, 2.0, 0.1])
    m = mean(np.diag(da), np.diag(db), kind, 0.3)
    assert np.allclose(m, np.diag(sm.MEAN_FUNCTIONS[kind](da, db, 0.3)), rtol=1e-13, atol=0)


@pytest.mark.parametrize("kind", KINDS)
def test_equal_arguments_and_endpoints(kind):
    a, b = _pair(4, 11)
    assert np.allclose(mean(a, a, kind, 0.4), a, atol=1e-12 * np.abs(a).max())
    assert np.allclose(mean(a, b, kind, 0.0), a, atol=1e-11 * np.abs(a).max())
    assert np.allclose(mean(a, b, kind, 1.0), b, atol=1e-11 * np.abs(b).max())


@pytest.mark.parametrize("kind", ["arith", "harm"])
def test_direct_agrees_with_spectral(kind):
    a, b = _pair(6, 21)
    d, s = direct_mean(a, b, kind, 0.35), spectral_mean(a, b, kind, 0.35)
    assert np.linalg.norm(d - s) <= 1e-11 * max(np.abs(a).max(), np.abs(b).max())
    with pytest.raises(ValueError):
        direct_mean(a, b, "geo", 0.5)


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 6), seeds, st.sampled_from(KINDS), st.floats(0.0, 1.0))
def test_transpose_identity(dim, seed, kind, t):
    a, b = _pair(dim, seed)
    scale = max(np.linalg.eigvalsh(a)[-1], np.linalg.eigvalsh(b)[-1])
    assert transpose_identity_check(a, b, kind, t) <= 1e-9 * max(1.0, scale)


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 5), seeds, st.sampled_from(KINDS), st.floats(0.0, 1.0))
def test_congruence(dim, seed, kind, t):
    a, b = _pair(dim, seed)
    c = np.random.default_rng(seed).standard_normal((dim, dim)) + 3.0 * np.eye(dim)
    ca, cb = c.T @ a @ c, c.T @ b @ c
    scale = max(np.abs(ca).max(), np.abs(cb).max())
    assert congruence_equivariance_residual(a, b, c, kind, t) <= 1e-8 * max(1.0, scale)


def test_congruence_rejects_singular():
    a, b = _pair(2, 3)
    with pytest.raises(ValueError):
        congruence_equivariance_residual(a, b, np.ones((2, 2)), "geo")


def test_batched_means_match_single():
    p = Pencil(*_pair(5, 8))
    ts = np.linspace(0.0, 1.0, 7)
    for kind in KINDS:
        stack = p.means(kind, ts)
        for t, m in zip(ts, stack):
            assert np.allclose(m, p.mean(kind, t), rtol=1e-12, atol=1e-12 * p.scale)


def test_repfn():
    f = rep_function("log", 0.25)
    assert f.form == "log" and f.t == 0.25 and f.label == "log(t=0.25)"
    assert float(f(1.0)) == pytest.approx(1.0)
    assert f.derivative(2.0) is None
    assert RepFn("power", 0.5).derivative(4.0) == pytest.approx(0.25)
    assert rep_function(f) is f
    g = RepFn.custom(lambda x: np.sqrt(x), "sqrt")
    assert g.label == "sqrt"
    with pytest.raises(ValueError):
        RepFn.custom(lambda x: x + 1.0)
    with pytest.raises(ValueError):
        RepFn("nope")
    with pytest.raises(ValueError):
        RepFn("power", 1.2)


def test_custom_mean_matches_builtin():
    a, b = _pair(3, 5)
    g = RepFn.custom(np.sqrt, "sqrt")
    assert np.allclose(mean(a, b, g), mean(a, b, "geo", 0.5), rtol=1e-12)


def test_input_validation():
    a = np.eye(2)
    with pytest.raises(ValueError):
        mean(a, np.eye(3), "geo")
    with pytest.raises(ValueError):
        mean(a, [[1.0, 0.0], [0.0, -1.0]], "geo")
    with pytest.raises(ValueError):
        mean(a, a, "median")
