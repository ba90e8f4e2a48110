"""
Fixed-order Gauss-Legendre quadrature.

These routines are the independent check on every closed form in
:mod:`opmeans.scalar_means`: each oracle integrates the literal integral
representation of a mean rather than reusing the closed-form algebra.
"""
import functools
import math
from dataclasses import dataclass

import numpy as np

from .scalar_means import check_weight

__all__ = [
    "QuadratureRule",
    "QuadratureError",
    "gauss_legendre",
    "integrate",
    "hh_triple",
    "lt_oracle",
    "ft_oracle",
    "log_gt_oracle",
]

MIN_ORDER, MAX_ORDER = 2, 256
DEFAULT_ORDER = 64
# Panel ratio for geometric grading towards a nearby singularity.
_GRADING = 0.2


class QuadratureError(ValueError):
    pass


@dataclass(frozen=True)
class QuadratureRule:
    """Gauss-Legendre nodes and weights on the reference interval [-1, 1]."""

    nodes: np.ndarray
    weights: np.ndarray
    order: int

    def __post_init__(self):
        self.nodes.setflags(write=False)
        self.weights.setflags(write=False)


@functools.lru_cache(maxsize=None)
def gauss_legendre(order):
    """Return the ``order``-point rule, roots found by Newton on P_order.

    Parameters
    ----------
    order : int
        Number of nodes, in ``[2, 256]``.
    """
    order = int(order)
    if not MIN_ORDER <= order <= MAX_ORDER:
        raise QuadratureError(f"order must lie in [{MIN_ORDER}, {MAX_ORDER}], got {order}")
    k = np.arange(1, order + 1)
    # Tricomi's initial guess for the k-th root.
    x = np.cos(math.pi * (k - 0.25) / (order + 0.5))
    for _ in range(100):
        p0, p1 = np.ones_like(x), x.copy()
        for n in range(2, order + 1):
            p0, p1 = p1, ((2 * n - 1) * x * p1 - (n - 1) * p0) / n
        dp = order * (x * p1 - p0) / (x * x - 1.0)
        dx = p1 / dp
        x = x - dx
        if np.max(np.abs(dx)) < 1e-15:
            break
    p0, p1 = np.ones_like(x), x.copy()
    for n in range(2, order + 1):
        p0, p1 = p1, ((2 * n - 1) * x * p1 - (n - 1) * p0) / n
    dp = order * (x * p1 - p0) / (x * x - 1.0)
    w = 2.0 / ((1.0 - x * x) * dp * dp)
    # Ascending nodes, exactly symmetric.
    x = x[::-1]
    w = w[::-1]
    x = 0.5 * (x - x[::-1])
    w = 0.5 * (w + w[::-1])
    return QuadratureRule(nodes=x, weights=w, order=order)


def _evaluate(f, x):
    try:
        y = np.asarray(f(x), dtype=float)
    except (TypeError, ValueError):
        y = None
    if y is None or y.shape != x.shape:
        y = np.array([float(f(float(xi))) for xi in x])
    bad = ~np.isfinite(y)
    if np.any(bad):
        i = int(np.argmax(bad))
        raise QuadratureError(f"integrand is not finite at node x={x[i]!r} (value {y[i]!r})")
    return y


def _graded_breaks(lo, hi, pole):
    """Breakpoints refining geometrically towards ``pole`` when it sits close
    to one end of [lo, hi]. Panels keep the pole at least a quarter of their
    own length away, so each panel converges geometrically."""
    length = hi - lo
    if pole is None or not math.isfinite(pole) or length <= 0 or lo <= pole <= hi:
        return [lo, hi]
    end, sign, gap = (lo, 1.0, lo - pole) if pole < lo else (hi, -1.0, pole - hi)
    if gap >= length:
        return [lo, hi]
    breaks = [end]
    width = length
    while width > gap:
        width *= _GRADING
        breaks.append(end + sign * width)
    breaks.append(end + sign * length)
    return sorted(breaks)


def integrate(f, lo, hi, order=DEFAULT_ORDER, pole=None):
    """Integrate ``f`` over ``[lo, hi]`` with an ``order``-point Gauss-Legendre rule.

    If ``pole`` is given and lies just outside the interval, the interval is
    split into geometrically graded panels, each integrated at ``order``.
    ``f`` may be vectorised; non-finite samples raise :class:`QuadratureError`.
    """
    lo, hi = float(lo), float(hi)
    if not lo <= hi:
        raise QuadratureError(f"need lo <= hi, got [{lo}, {hi}]")
    rule = gauss_legendre(order)
    breaks = _graded_breaks(lo, hi, pole)
    total = 0.0
    for p, q in zip(breaks[:-1], breaks[1:]):
        half, mid = 0.5 * (q - p), 0.5 * (q + p)
        if half == 0.0:
            continue
        total += half * float(np.dot(rule.weights, _evaluate(f, mid + half * rule.nodes)))
    return total


def hh_triple(f, a, b, t, order=DEFAULT_ORDER):
    """The three members of the weighted Hermite-Hadamard refinement.

    Returns ``(left, mid, right)`` with::

        left  = f(t b + (1 - t) a)
        mid   = (1 - t) int_0^1 f(t s (b - a) + a) ds
                + t int_0^1 f((1 - t) s (b - a) + t b + (1 - t) a) ds
        right = t f(b) + (1 - t) f(a)

    For convex ``f`` on ``[a, b]`` these satisfy ``left <= mid <= right``.
    """
    t = check_weight(t)
    a, b = float(a), float(b)
    if not a < b:
        raise QuadratureError(f"need a < b, got a={a}, b={b}")
    c = t * b + (1.0 - t) * a
    left = float(f(c))
    first = integrate(lambda s: f(t * s * (b - a) + a), 0.0, 1.0, order)
    second = integrate(lambda s: f((1.0 - t) * s * (b - a) + c), 0.0, 1.0, order)
    mid = (1.0 - t) * first + t * second
    right = t * float(f(b)) + (1.0 - t) * float(f(a))
    return left, mid, right


def _interior_weight(t):
    t = check_weight(t)
    if not 0.0 < t < 1.0:
        raise QuadratureError(f"oracles need t in (0, 1), got {t}")
    return t


def lt_oracle(a, b, t, order=DEFAULT_ORDER):
    """``(1-t)/t int_0^t a^(1-z) b^z dz + t/(1-t) int_t^1 a^(1-z) b^z dz``."""
    t = _interior_weight(t)
    la, lb = math.log(a), math.log(b)

    def kernel(z):
        return np.exp((1.0 - z) * la + z * lb)

    return ((1.0 - t) / t * integrate(kernel, 0.0, t, order)
            + t / (1.0 - t) * integrate(kernel, t, 1.0, order))


def ft_oracle(x, t, order=DEFAULT_ORDER):
    """``(1-t) int_0^1 x^(t s) ds + t x^t int_0^1 x^((1-t) s) ds``."""
    t = _interior_weight(t)
    lx = math.log(x)
    first = integrate(lambda s: np.exp(t * s * lx), 0.0, 1.0, order)
    second = integrate(lambda s: np.exp((1.0 - t) * s * lx), 0.0, 1.0, order)
    return (1.0 - t) * first + t * math.exp(t * lx) * second


def log_gt_oracle(x, t, order=DEFAULT_ORDER):
    """``(1-t)/t int_0^t log(s x + 1 - s) ds + t/(1-t) int_t^1 log(s x + 1 - s) ds``.

    The integrand has a logarithmic branch point at ``s = 1 / (1 - x)``; for
    extreme ``x`` that point approaches ``[0, 1]`` and the panels are graded
    towards it.
    """
    t = _interior_weight(t)
    x = float(x)
    if x == 1.0:
        return 0.0
    pole = 1.0 / (1.0 - x)

    def kernel(s):
        return np.log(s * x + (1.0 - s))

    return ((1.0 - t) / t * integrate(kernel, 0.0, t, order, pole=pole)
            + t / (1.0 - t) * integrate(kernel, t, 1.0, order, pole=pole))
