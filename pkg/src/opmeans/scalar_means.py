"""
Weighted scalar means
~~~~~~~~~~~~~~~~~~~~~
Closed-form weighted means of two positive numbers and the representing
functions of the corresponding operator means.

All weighted means ``M_t(a, b)`` here are homogeneous, so they are evaluated
as ``a * m_t(b / a)`` where ``m_t`` is the representing function. The
logarithmic and identric representing functions are written in forms with no
removable singularity in either ``t`` or ``x``:

    f_t(x) = (1 - t) phi(t u) + t e^{t u} phi((1 - t) u),   u = log x
    log g_t(x) = (1 - t) psi(t d) + t [log1p(t d) + psi((1 - t) d / (1 + t d))],
                                                           d = x - 1

with ``phi(z) = expm1(z) / z`` and ``psi(y) = int_0^1 log(1 + beta y) dbeta``.
Every function accepts scalars or arrays; scalar input gives a float back.
"""
import math

import numpy as np

__all__ = [
    "check_weight",
    "weighted_arithmetic",
    "weighted_geometric",
    "weighted_harmonic",
    "weighted_logarithmic",
    "weighted_identric",
    "logarithmic_mean",
    "identric_mean",
    "stolarsky",
    "heronian_weighted",
    "rep_log",
    "rep_identric",
    "log_rep_identric",
    "MEAN_FUNCTIONS",
]

# Taylor coefficients (-1)^k / (k (k - 1)) of psi(y) = sum_k c_k y^(k-1), k >= 2.
_PSI_COEF = np.array([(-1.0) ** k / (k * (k - 1)) for k in range(2, 22)])
# Taylor coefficients 1 / (k + 1)! of phi(z) - 1 = sum_k c_k z^k, k >= 1.
_PHI_COEF = np.array([1.0 / math.factorial(k + 1) for k in range(1, 18)])
_SERIES_RADIUS = 0.1
_STOLARSKY_BRANCH = 1e-7


def _out(value):
    value = np.asarray(value, dtype=float)
    return float(value) if value.ndim == 0 else value


def check_weight(t):
    """Validate a weight and return it as a float.

    Raises
    ------
    ValueError
        If ``t`` is NaN or lies outside ``[0, 1]``.
    """
    t = float(t)
    if not (0.0 <= t <= 1.0):
        raise ValueError(f"weight t must lie in [0, 1], got {t!r}")
    return t


def _check_pos(name, v):
    v = np.asarray(v, dtype=float)
    if not np.all(np.isfinite(v)) or np.any(v <= 0):
        raise ValueError(f"{name} must be positive and finite, got {v!r}")
    return v


def _poly(coef, z):
    # Horner evaluation of sum_k coef[k] z^(k+1).
    acc = np.zeros_like(z)
    for c in coef[::-1]:
        acc = (acc + c) * z
    return acc


def _phi(z):
    """expm1(z) / z with the removable point z = 0 filled in."""
    z = np.asarray(z, dtype=float)
    small = np.abs(z) < _SERIES_RADIUS
    zs = np.where(small, 1.0, z)
    return np.where(small, 1.0 + _poly(_PHI_COEF, np.where(small, z, 0.0)),
                    np.expm1(zs) / zs)


def _log_phi(z):
    """log(expm1(z) / z), overflow free for large |z|."""
    z = np.asarray(z, dtype=float)
    small = np.abs(z) < _SERIES_RADIUS
    zs = np.where(small, 1.0, z)
    big = np.where(zs > 0,
                   zs + np.log(-np.expm1(-np.abs(zs))) - np.log(np.abs(zs)),
                   np.log(-np.expm1(-np.abs(zs))) - np.log(np.abs(zs)))
    return np.where(small, np.log1p(_poly(_PHI_COEF, np.where(small, z, 0.0))), big)


def _psi(y):
    """Integral of log(1 + beta y) over beta in [0, 1], for y > -1."""
    y = np.asarray(y, dtype=float)
    small = np.abs(y) < _SERIES_RADIUS
    ys = np.where(small, 1.0, y)
    closed = ((1.0 + ys) * np.log1p(ys) - ys) / ys
    return np.where(small, _poly(_PSI_COEF, np.where(small, y, 0.0)), closed)


def weighted_arithmetic(a, b, t):
    """(1 - t) a + t b."""
    t = check_weight(t)
    a, b = _check_pos("a", a), _check_pos("b", b)
    return _out((1.0 - t) * a + t * b)


def weighted_geometric(a, b, t):
    """a^(1 - t) b^t."""
    t = check_weight(t)
    a, b = _check_pos("a", a), _check_pos("b", b)
    return _out(a * (b / a) ** t)


def weighted_harmonic(a, b, t):
    """((1 - t) / a + t / b)^-1."""
    t = check_weight(t)
    a, b = _check_pos("a", a), _check_pos("b", b)
    return _out(1.0 / ((1.0 - t) / a + t / b))


def _rep_log(x, t):
    u = np.log(x)
    return (1.0 - t) * _phi(t * u) + t * np.exp(t * u) * _phi((1.0 - t) * u)


def _log_rep_identric(x, t):
    d = x - 1.0
    td = t * d
    return (1.0 - t) * _psi(td) + t * (np.log1p(td) + _psi((1.0 - t) * d / (1.0 + td)))


def rep_log(x, t):
    """Representing function of the weighted logarithmic mean.

    ``f_t(x) = L_t(1, x)``, so ``f_t(1) = 1``, ``f_0 = 1`` and ``f_1(x) = x``.
    """
    t = check_weight(t)
    return _out(_rep_log(_check_pos("x", x), t))


def log_rep_identric(x, t):
    """Natural logarithm of :func:`rep_identric`, computed without exponentiating."""
    t = check_weight(t)
    return _out(_log_rep_identric(_check_pos("x", x), t))


def rep_identric(x, t):
    """Representing function ``g_t(x) = I_t(1, x)`` of the weighted identric mean."""
    t = check_weight(t)
    return _out(np.exp(_log_rep_identric(_check_pos("x", x), t)))


def weighted_logarithmic(a, b, t):
    """Weighted logarithmic mean ``L_t(a, b)``.

    Parameters
    ----------
    a, b : float or array_like
        Positive arguments.
    t : float
        Weight in ``[0, 1]``; ``L_0(a, b) = a``, ``L_1(a, b) = b`` and
        ``L_{1/2}`` is the classical logarithmic mean ``(a - b) / log(a / b)``.

    Returns
    -------
    float or ndarray
        The mean. Stable at ``a == b`` and at both endpoint weights.
    """
    t = check_weight(t)
    a, b = _check_pos("a", a), _check_pos("b", b)
    return _out(a * _rep_log(b / a, t))


def weighted_identric(a, b, t):
    """Weighted identric mean ``I_t(a, b)``, evaluated in the log domain.

    ``I_0(a, b) = a``, ``I_1(a, b) = b`` and ``I_{1/2}(a, b)`` is the classical
    identric mean ``e^-1 (b^b / a^a)^(1 / (b - a))``.
    """
    t = check_weight(t)
    a, b = _check_pos("a", a), _check_pos("b", b)
    return _out(a * np.exp(_log_rep_identric(b / a, t)))


def logarithmic_mean(a, b):
    return weighted_logarithmic(a, b, 0.5)


def identric_mean(a, b):
    return weighted_identric(a, b, 0.5)


def heronian_weighted(a, b, t):
    """(2/3) a^(1 - t) b^t + (1/3) ((1 - t) a + t b)."""
    return _out(2.0 / 3.0 * np.asarray(weighted_geometric(a, b, t))
                + 1.0 / 3.0 * np.asarray(weighted_arithmetic(a, b, t)))


def stolarsky(a, b, r):
    """Stolarsky mean ``S_r(a, b) = ((a^r - b^r) / (r (a - b)))^(1 / (r - 1))``.

    With ``u = log(b / a)`` the inner ratio is ``phi(r u) / phi(u)``, which is
    regular at ``r = 0`` (giving the logarithmic mean). ``r = 1`` is the
    identric mean and is taken as a limit within ``1e-7`` of it.
    """
    r = float(r)
    if not math.isfinite(r):
        raise ValueError(f"Stolarsky parameter must be finite, got {r!r}")
    a, b = _check_pos("a", a), _check_pos("b", b)
    if abs(r - 1.0) < _STOLARSKY_BRANCH:
        return identric_mean(a, b)
    u = np.log(b / a)
    log_s = (_log_phi(r * u) - _log_phi(u)) / (r - 1.0)
    return _out(a * np.exp(log_s))


MEAN_FUNCTIONS = {
    "arith": weighted_arithmetic,
    "geo": weighted_geometric,
    "harm": weighted_harmonic,
    "log": weighted_logarithmic,
    "identric": weighted_identric,
    "heron": heronian_weighted,
}
