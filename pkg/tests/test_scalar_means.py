import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from opmeans import scalar_means as sm

pos = st.floats(1e-3, 1e3, allow_nan=False, allow_infinity=False)
weight = st.floats(0.0, 1.0)

# Reference values from a 40-digit evaluation of the integral forms (frozen).
FROZEN_L = [
    (2.0, 5.0, 0.3, 2.7185474428407790252),
    (706.0, 31.8, 0.2169, 431.85063524795856158),
    (1.0, 100.0, 0.9, 73.621148041212201068),
]
FROZEN_I = [
    (2.0, 5.0, 0.3, 2.8060823555235898293),
    (706.0, 31.8, 0.2169, 514.13047015589447106),
    (1.0, 100.0, 0.9, 85.944279152370451613),
]
FROZEN_F = [(10.0, 0.25, 2.2042233207999487291), (0.01, 0.7, 0.10446259596444465371),
            (1000.0, 0.5, 144.62006247378285861)]
FROZEN_G = [(10.0, 0.25, 2.6853481954635006483), (0.01, 0.7, 0.20413257421200537898),
            (1000.0, 0.5, 370.43202104133789939)]


@pytest.mark.parametrize("a,b,t,expected", FROZEN_L)
def test_weighted_logarithmic_frozen(a, b, t, expected):
    assert sm.weighted_logarithmic(a, b, t) == pytest.approx(expected, rel=1e-14)


@pytest.mark.parametrize("a,b,t,expected", FROZEN_I)
def test_weighted_identric_frozen(a, b, t, expected):
    assert sm.weighted_identric(a, b, t) == pytest.approx(expected, rel=1e-14)


@pytest.mark.parametrize("x,t,expected", FROZEN_F)
def test_rep_log_frozen(x, t, expected):
    assert sm.rep_log(x, t) == pytest.approx(expected, rel=1e-14)


@pytest.mark.parametrize("x,t,expected", FROZEN_G)
def test_rep_identric_frozen(x, t, expected):
    assert sm.rep_identric(x, t) == pytest.approx(expected, rel=1e-14)


def test_heronian_probe_values():
    a, b, t = 706.0, 31.8, 0.2169
    lv, hv = sm.weighted_logarithmic(a, b, t), sm.heronian_weighted(a, b, t)
    assert lv == pytest.approx(431.8506, abs=5e-4)
    assert hv == pytest.approx(426.8502, abs=5e-4)
    assert lv - hv == pytest.approx(5.0004, abs=1e-3)


def test_unweighted_closed_forms():
    assert sm.logarithmic_mean(1.0, math.e) == pytest.approx(math.e - 1.0, rel=1e-15)
    assert sm.identric_mean(1.0, math.e) == pytest.approx(math.exp(1.0 / (math.e - 1.0)), rel=1e-15)
    assert sm.logarithmic_mean(1.0, 2.0) == pytest.approx(1.0 / math.log(2.0), rel=1e-15)
    assert sm.identric_mean(1.0, 2.0) == pytest.approx(4.0 / math.e, rel=1e-15)
    assert sm.rep_log(4.0, 0.5) == pytest.approx(3.0 / math.log(4.0), rel=1e-15)


def test_equal_arguments_and_endpoints():
    for fn in sm.MEAN_FUNCTIONS.values():
        assert fn(3.0, 3.0, 0.37) == pytest.approx(3.0, rel=1e-15)
        assert fn(2.0, 7.0, 0.0) == pytest.approx(2.0, rel=1e-14)
        assert fn(2.0, 7.0, 1.0) == pytest.approx(7.0, rel=1e-14)


def test_near_diagonal_is_smooth():
    # b = a (1 + eps): both means are 1 + t eps to first order, with no cancellation loss.
    for eps in (1e-5, 1e-8, 1e-12):
        for fn in (sm.weighted_logarithmic, sm.weighted_identric, sm.weighted_geometric):
            assert fn(1.0, 1.0 + eps, 0.6) - 1.0 == pytest.approx(0.6 * eps, rel=1e-4)


def test_near_endpoint_weights():
    a, b = 2.0, 9.0
    for fn in (sm.weighted_logarithmic, sm.weighted_identric):
        assert fn(a, b, 1e-9) == pytest.approx(a, rel=1e-7)
        assert fn(a, b, 1.0 - 1e-9) == pytest.approx(b, rel=1e-7)
        assert abs(fn(a, b, 1e-6) - a) <= 1e-4 * (b - a)


def test_stolarsky_special_cases():
    a, b = 1.0, 3.0
    assert sm.stolarsky(a, b, 2.0) == pytest.approx(2.0, rel=1e-14)
    assert sm.stolarsky(a, b, -1.0) == pytest.approx(math.sqrt(3.0), rel=1e-14)
    assert sm.stolarsky(a, b, 0.0) == pytest.approx(sm.logarithmic_mean(a, b), rel=1e-14)
    assert sm.stolarsky(a, b, 1.0) == pytest.approx(sm.identric_mean(a, b), rel=1e-14)
    assert sm.stolarsky(a, b, 1.0 + 1e-6) == pytest.approx(sm.identric_mean(a, b), rel=1e-6)
    assert sm.stolarsky(5.0, 5.0, 3.0) == 5.0


@pytest.mark.parametrize("bad", [-1.0, 1.5, float("nan")])
def test_bad_weight(bad):
    with pytest.raises(ValueError):
        sm.weighted_logarithmic(1.0, 2.0, bad)


@pytest.mark.parametrize("a,b", [(0.0, 1.0), (-1.0, 2.0), (1.0, float("inf")), (float("nan"), 1.0)])
def test_bad_arguments(a, b):
    with pytest.raises(ValueError):
        sm.weighted_identric(a, b, 0.5)


def test_arrays_broadcast():
    a = np.array([1.0, 2.0, 3.0])
    out = sm.weighted_logarithmic(a, 4.0, 0.5)
    assert out.shape == (3,)
    assert out[1] == pytest.approx(sm.weighted_logarithmic(2.0, 4.0, 0.5))


@settings(max_examples=200, deadline=None)
@given(pos, pos, weight)
def test_chain_and_betweenness(a, b, t):
    h, g = sm.weighted_harmonic(a, b, t), sm.weighted_geometric(a, b, t)
    lv, ar = sm.weighted_logarithmic(a, b, t), sm.weighted_arithmetic(a, b, t)
    iv = sm.weighted_identric(a, b, t)
    tol = 1e-12 * max(a, b)
    assert h <= g + tol and g <= lv + tol and lv <= 0.5 * (g + ar) + tol and 0.5 * (g + ar) <= ar + tol
    assert g <= iv + tol and iv <= ar + tol
    assert min(a, b) - tol <= lv <= max(a, b) + tol


@settings(max_examples=200, deadline=None)
@given(pos, pos, weight, st.floats(1e-2, 1e2))
def test_homogeneity_and_reflection(a, b, t, alpha):
    for fn in (sm.weighted_logarithmic, sm.weighted_identric):
        assert fn(alpha * a, alpha * b, t) == pytest.approx(alpha * fn(a, b, t), rel=1e-12)
        assert fn(a, b, t) == pytest.approx(fn(b, a, 1.0 - t), rel=1e-12)


@settings(max_examples=100, deadline=None)
@given(st.floats(-3.0, 3.0), st.floats(-3.0, 3.0), pos, pos)
def test_stolarsky_monotone_in_r(r1, r2, a, b):
    if abs(math.log(b / a)) < 1e-3 or abs(r1 - r2) < 1e-3:
        return
    lo, hi = sorted((r1, r2))
    assert sm.stolarsky(a, b, lo) <= sm.stolarsky(a, b, hi) * (1 + 1e-12)


def test_weighted_arithmetic_example():
    # 706 - 0.2169 * (706 - 31.8) = 706 - 146.23398, exactly
    assert sm.weighted_arithmetic(706.0, 31.8, 0.2169) == pytest.approx(559.76602, abs=1e-9)
