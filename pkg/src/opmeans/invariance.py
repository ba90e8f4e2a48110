"""
Invariance of operator means.

A mean ``sigma`` is invariant with respect to ``(tau, rho)`` when
``A sigma B = (A tau B) sigma (A rho B)``. With representing functions
``f, g, h`` this holds exactly when ``f(x) = g(x) f(h(x) / g(x))`` for every
``x > 0``.

Note: the spectral variable is called ``x`` throughout; ``t`` is reserved
for the weight of a mean.
"""
from dataclasses import dataclass

import numpy as np

from .operator_means import MeanKind, Pencil, RepFn, mean, rep_function
from .order import log_uniform_grid

__all__ = [
    "InvarianceTriple",
    "default_grid",
    "scalar_invariance_residual",
    "operator_invariance_residual",
    "geometric_triple",
    "geometric_triple_condition",
    "gah_triple",
    "gah_operator_identity",
    "invariance_witness",
]

CONDITION_TOL = 1e-12


@dataclass(frozen=True)
class InvarianceTriple:
    sigma: RepFn
    tau: RepFn
    rho: RepFn

    def __post_init__(self):
        for f in (self.sigma, self.tau, self.rho):
            one = float(np.asarray(f(np.array([1.0]))).ravel()[0])
            if abs(one - 1.0) > 1e-12:
                name = getattr(f, "label", getattr(f, "__name__", "f"))
                raise ValueError(f"{name} is not normalised: f(1) = {one!r}")


def default_grid():
    """60 log-uniform points in [1e-3, 1e3] together with x = 1."""
    return log_uniform_grid(1e-3, 1e3, 60)


def scalar_invariance_residual(f, g, h, samples=None):
    """Worst ``|f(x) - g(x) f(h(x) / g(x))| / max(1, f(x))`` over ``samples``."""
    x = default_grid() if samples is None else np.asarray(samples, dtype=float)
    fx, gx, hx = (np.asarray(fn(x), dtype=float) for fn in (f, g, h))
    if np.any(gx <= 0):
        raise ValueError(f"g must be positive on the samples (x = {x[np.argmax(gx <= 0)]!r})")
    rhs = gx * np.asarray(f(hx / gx), dtype=float)
    res = np.abs(fx - rhs) / np.maximum(1.0, np.abs(fx))
    bad = ~np.isfinite(res)
    if np.any(bad):
        raise ValueError(f"non-finite evaluation at x = {x[np.argmax(bad)]!r}")
    return float(np.max(res))


def operator_invariance_residual(triple, a, b):
    """``||A sigma B - (A tau B) sigma (A rho B)||_F / max(1, ||A sigma B||_F)``."""
    p = Pencil(a, b)
    lhs = p.mean(triple.sigma)
    rhs = mean(p.mean(triple.tau), p.mean(triple.rho), triple.sigma)
    return float(np.linalg.norm(lhs - rhs) / max(1.0, np.linalg.norm(lhs)))


def geometric_triple(p, q, r):
    return InvarianceTriple(RepFn("power", p), RepFn("power", q), RepFn("power", r))


def geometric_triple_condition(p, q, r):
    """Whether ``#_p`` is invariant with respect to ``(#_q, #_r)``: p(1-r) = q(1-p)."""
    for name, v in (("p", p), ("q", q), ("r", r)):
        if not 0.0 <= float(v) <= 1.0:
            raise ValueError(f"{name} must lie in [0, 1], got {v!r}")
    return abs(p * (1.0 - r) - q * (1.0 - p)) <= CONDITION_TOL


def gah_triple():
    """The geometric mean against the (arithmetic, harmonic) pair."""
    return InvarianceTriple(rep_function(MeanKind.GEOMETRIC), rep_function(MeanKind.ARITHMETIC),
                            rep_function(MeanKind.HARMONIC))


def gah_operator_identity(a, b):
    """Residual of ``(A nabla B) # (A ! B) = A # B``, relative to the operand scale."""
    p = Pencil(a, b)
    lhs = mean(p.mean(MeanKind.ARITHMETIC), p.mean(MeanKind.HARMONIC), MeanKind.GEOMETRIC)
    return float(np.linalg.norm(lhs - p.mean(MeanKind.GEOMETRIC, 0.5)) / max(1.0, p.scale))


def invariance_witness(triple, samples=None):
    """Grid point maximising the scalar residual, lifted to ``A = I, B = diag(x, 1)``.

    Returns a dict with ``x``, the scalar residual there and the operator
    residual of the diagonal pair.
    """
    x = default_grid() if samples is None else np.asarray(samples, dtype=float)
    res = [scalar_invariance_residual(triple.sigma, triple.tau, triple.rho, [xi]) for xi in x]
    i = int(np.argmax(res))
    a, b = np.eye(2), np.diag([float(x[i]), 1.0])
    return {"x": float(x[i]), "scalar_residual": float(res[i]),
            "operator_residual": operator_invariance_residual(triple, a, b),
            "A": a.tolist(), "B": b.tolist()}
