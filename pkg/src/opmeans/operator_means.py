"""
Weighted operator means of SPD matrices.

A mean ``sigma`` with representing function ``f`` is computed as

    A sigma B = A^(1/2) f(A^(-1/2) B A^(-1/2)) A^(1/2)

Representing functions follow the orientation ``f(x) I = I sigma (x I)``: the
weighted arithmetic mean has ``f(x) = (1 - t) + t x``, so ``A nabla_t B``
moves from ``A`` at ``t = 0`` to ``B`` at ``t = 1``.
"""
import enum
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from . import scalar_means as sm
from .matfun import (
    check_condition,
    as_spd,
    conjugate,
    eig_sym,
    symmetrize,
)

__all__ = [
    "MeanKind",
    "RepFn",
    "rep_function",
    "Pencil",
    "mean",
    "spectral_mean",
    "direct_mean",
    "transpose_identity_check",
    "congruence_equivariance_residual",
]

NORMALIZATION_TOL = 1e-12


class MeanKind(str, enum.Enum):
    ARITHMETIC = "arith"
    HARMONIC = "harm"
    GEOMETRIC = "geo"
    LOGARITHMIC = "log"
    IDENTRIC = "identric"


_FORM_OF_KIND = {
    MeanKind.ARITHMETIC: "affine",
    MeanKind.HARMONIC: "harmonic",
    MeanKind.GEOMETRIC: "power",
    MeanKind.LOGARITHMIC: "log",
    MeanKind.IDENTRIC: "identric",
}


def _affine(x, t):
    return (1.0 - t) + t * x


def _harmonic(x, t):
    return 1.0 / ((1.0 - t) + t / x)


def _power(x, t):
    return x ** t


def _halfsum(x, t):
    return 0.5 * (x ** t + (1.0 - t) + t * x)


_FORMS = {
    "affine": _affine,
    "harmonic": _harmonic,
    "power": _power,
    "log": sm._rep_log,
    "identric": lambda x, t: np.exp(sm._log_rep_identric(x, t)),
    "halfsum": _halfsum,
}

_DERIVATIVES = {
    "affine": lambda x, t: np.full_like(x, t),
    "harmonic": lambda x, t: t / (x * x * ((1.0 - t) + t / x) ** 2),
    "power": lambda x, t: t * x ** (t - 1.0),
    "halfsum": lambda x, t: 0.5 * (t * x ** (t - 1.0) + t),
}


@dataclass(frozen=True)
class RepFn:
    """A representing function ``x -> f(x)`` with weight ``t``.

    ``form`` is one of ``affine``, ``harmonic``, ``power``, ``log``,
    ``identric``, ``halfsum`` or ``custom`` (with ``func`` supplied).
    """

    form: str
    t: float = 0.5
    func: Optional[Callable] = field(default=None, compare=False)
    name: Optional[str] = None

    def __post_init__(self):
        object.__setattr__(self, "t", sm.check_weight(self.t))
        if self.form == "custom":
            if self.func is None:
                raise ValueError("custom representing function needs func")
            one = float(np.asarray(self.func(np.array([1.0])), dtype=float).ravel()[0])
            if abs(one - 1.0) > NORMALIZATION_TOL:
                raise ValueError(f"representing function must satisfy f(1) = 1, got {one!r}")
        elif self.form not in _FORMS:
            raise ValueError(f"unknown representing-function form {self.form!r}")

    @classmethod
    def custom(cls, func, name="custom"):
        return cls("custom", 0.5, func, name)

    @property
    def label(self):
        if self.name:
            return self.name
        return f"{self.form}(t={self.t:g})"

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        if self.form == "custom":
            return np.asarray(self.func(x), dtype=float)
        return _FORMS[self.form](x, self.t)

    def derivative(self, x):
        """Analytic derivative where a closed form is at hand, else ``None``."""
        d = _DERIVATIVES.get(self.form)
        return None if d is None else d(np.asarray(x, dtype=float), self.t)


def rep_function(kind, t=0.5):
    """Representing function of a :class:`MeanKind` at weight ``t``."""
    if isinstance(kind, RepFn):
        return kind
    return RepFn(_FORM_OF_KIND[MeanKind(kind)], t)


class Pencil:
    """A pair ``(A, B)`` of SPD matrices prepared for repeated mean evaluation.

    The decompositions of ``A`` and of ``C = A^(-1/2) B A^(-1/2)`` are
    computed once; every spectral mean is then ``W diag(f(mu)) W^T`` with
    ``W = A^(1/2) V`` and ``C = V diag(mu) V^T``.
    """

    def __init__(self, a, b):
        a, b = as_spd(a), as_spd(b)
        if a.shape != b.shape:
            raise ValueError(f"dimension mismatch: {a.shape} vs {b.shape}")
        self.a, self.b = a, b
        self.dim = a.shape[0]
        ea = eig_sym(a)
        check_condition(ea.eigenvalues)
        q, lam = ea.eigenvectors, ea.eigenvalues
        self.sqrt_a = symmetrize((q * np.sqrt(lam)) @ q.T)
        self.inv_sqrt_a = symmetrize((q / np.sqrt(lam)) @ q.T)
        self._inv_a = symmetrize((q / lam) @ q.T)
        self._inv_b = None
        ec = eig_sym(self.inv_sqrt_a @ b @ self.inv_sqrt_a)
        check_condition(ec.eigenvalues)
        self.mu = ec.eigenvalues
        self.w = self.sqrt_a @ ec.eigenvectors
        self.scale = float(max(lam[-1], np.linalg.eigvalsh(b)[-1]))

    @property
    def inv_b(self):
        if self._inv_b is None:
            self._inv_b = symmetrize(np.linalg.inv(self.b))
        return self._inv_b

    def spectral(self, f):
        """``A^(1/2) f(C) A^(1/2)`` for a vectorised scalar function ``f``."""
        vals = np.asarray(f(self.mu), dtype=float)
        bad = ~np.isfinite(vals)
        if np.any(bad):
            raise ValueError(f"representing function not finite at eigenvalue {self.mu[np.argmax(bad)]!r}")
        return symmetrize((self.w * vals) @ self.w.T)

    def direct(self, form, t):
        if form == "affine":
            return (1.0 - t) * self.a + t * self.b
        if form == "harmonic":
            return symmetrize(np.linalg.inv((1.0 - t) * self._inv_a + t * self.inv_b))
        raise ValueError(f"no direct formula for form {form!r}")

    def means(self, kind, ts):
        """Stack of means over the weights ``ts``, shape ``(len(ts), n, n)``."""
        form = _FORM_OF_KIND[MeanKind(kind)]
        ts = np.asarray([sm.check_weight(t) for t in ts])
        tc = ts[:, None, None]
        if form == "affine":
            return (1.0 - tc) * self.a + tc * self.b
        if form == "harmonic":
            return symmetrize(np.linalg.inv((1.0 - tc) * self._inv_a + tc * self.inv_b))
        vals = _FORMS[form](self.mu[None, :], ts[:, None])
        if not np.all(np.isfinite(vals)):
            raise ValueError("representing function not finite on the spectrum")
        return symmetrize(np.einsum("ij,kj,lj->kil", self.w, vals, self.w))

    def mean(self, kind, t=0.5):
        """The mean of ``kind`` (a :class:`MeanKind`, its string tag, or a
        :class:`RepFn`) at weight ``t``; RepFn carries its own weight."""
        f = kind if isinstance(kind, RepFn) else rep_function(kind, t)
        if f.form in ("affine", "harmonic"):
            return self.direct(f.form, f.t)
        return self.spectral(f)


def mean(a, b, kind, t=0.5):
    """Weighted operator mean ``A sigma_t B`` of two SPD matrices.

    Parameters
    ----------
    a, b : array_like
        SPD matrices of equal dimension.
    kind : MeanKind, str or RepFn
        ``"arith"``, ``"harm"``, ``"geo"``, ``"log"``, ``"identric"``, or an
        explicit representing function.
    t : float
        Weight in ``[0, 1]`` (ignored when ``kind`` is a RepFn).

    Returns
    -------
    ndarray
        The mean, symmetrised. Arithmetic and harmonic means use their direct
        formulas; everything else goes through the spectral construction.
    """
    return Pencil(a, b).mean(kind, t)


def spectral_mean(a, b, kind, t=0.5):
    """The spectral construction for any kind, including arithmetic and harmonic."""
    return Pencil(a, b).spectral(rep_function(kind, t))


def direct_mean(a, b, kind, t=0.5):
    return Pencil(a, b).direct(rep_function(kind, t).form, sm.check_weight(t))


def transpose_identity_check(a, b, kind, t=0.5):
    """Frobenius residual of ``A sigma_t B = B sigma_{1-t} A``."""
    t = sm.check_weight(t)
    return float(np.linalg.norm(mean(a, b, kind, t) - mean(b, a, kind, 1.0 - t)))


def congruence_equivariance_residual(a, b, c, kind, t=0.5):
    """``||C^T (A sigma B) C - (C^T A C) sigma (C^T B C)||_F`` for invertible ``C``."""
    c = np.asarray(c, dtype=float)
    sv = np.linalg.svd(c, compute_uv=False)
    if sv[-1] == 0 or sv[0] / sv[-1] > 1e12:
        raise ValueError("congruence matrix C is singular or numerically singular")
    lhs = conjugate(c, mean(a, b, kind, t))
    rhs = mean(conjugate(c, a), conjugate(c, b), kind, t)
    return float(np.linalg.norm(lhs - rhs))
