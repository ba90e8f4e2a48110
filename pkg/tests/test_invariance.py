import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from opmeans import invariance as inv
from opmeans.harness import random_spd
from opmeans.operator_means import RepFn


def test_geometric_triple_invariant():
    t = inv.geometric_triple(0.5, 1.0 / 3.0, 2.0 / 3.0)
    assert inv.geometric_triple_condition(0.5, 1.0 / 3.0, 2.0 / 3.0)
    assert inv.scalar_invariance_residual(t.sigma, t.tau, t.rho) <= 1e-12
    for s in range(5):
        assert inv.operator_invariance_residual(t, random_spd(5, s), random_spd(5, s + 9)) <= 1e-8


def test_non_invariant_triple_witness():
    t = inv.geometric_triple(0.5, 1.0 / 3.0, 1.0 / 3.0)
    assert not inv.geometric_triple_condition(0.5, 1.0 / 3.0, 1.0 / 3.0)
    w = inv.invariance_witness(t)
    assert w["scalar_residual"] >= 1e-4 and w["operator_residual"] >= 1e-4
    assert w["A"] == [[1.0, 0.0], [0.0, 1.0]]


@settings(max_examples=100, deadline=None)
@given(st.floats(0.05, 0.95), st.floats(0.0, 1.0))
def test_criterion_matches_residual(p, q):
    r = 1.0 - q * (1.0 - p) / p
    if 0.0 <= r <= 1.0:
        t = inv.geometric_triple(p, q, r)
        assert inv.geometric_triple_condition(p, q, r)
        assert inv.scalar_invariance_residual(t.sigma, t.tau, t.rho) <= 1e-10
    r_bad = (r + 0.3) % 1.0
    if abs(p * (1 - r_bad) - q * (1 - p)) > 1e-3:
        t = inv.geometric_triple(p, q, r_bad)
        assert not inv.geometric_triple_condition(p, q, r_bad)
        assert inv.scalar_invariance_residual(t.sigma, t.tau, t.rho) > 1e-10


def test_condition_validates():
    with pytest.raises(ValueError):
        inv.geometric_triple_condition(1.5, 0.2, 0.2)


def test_gah():
    g = inv.gah_triple()
    assert inv.scalar_invariance_residual(g.sigma, g.tau, g.rho) <= 1e-12
    for s in range(5):
        assert inv.gah_operator_identity(random_spd(6, s), random_spd(6, s + 3)) <= 1e-8


def test_triple_requires_normalisation():
    f = RepFn("power", 0.5)
    with pytest.raises(ValueError):
        inv.InvarianceTriple(f, lambda x: x + 1.0, f)


def test_default_grid():
    g = inv.default_grid()
    assert g[0] == pytest.approx(1e-3) and g[-1] == pytest.approx(1e3) and 1.0 in g


def test_residual_rejects_nonpositive_g():
    f = RepFn("power", 0.5)
    with pytest.raises(ValueError):
        inv.scalar_invariance_residual(f, lambda x: x - 1.0, f, np.array([0.5, 2.0]))
