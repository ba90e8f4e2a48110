"""
Spectral functional calculus on symmetric positive definite matrices.

Matrices are plain ``numpy`` arrays. :func:`as_sym` and :func:`as_spd`
validate and symmetrise input; every function producing a matrix returns
``(M + M.T) / 2`` so roundoff asymmetry never leaks into order tests.
"""
from dataclasses import dataclass

import numpy as np

__all__ = [
    "EigPair",
    "NotSymmetricError",
    "NotSPDError",
    "IllConditionedError",
    "ConvergenceError",
    "symmetrize",
    "as_sym",
    "as_spd",
    "eig_sym",
    "jacobi_eigh",
    "apply_spectral",
    "sqrt_spd",
    "inv_sqrt_spd",
    "power_spd",
    "conjugate",
    "check_condition",
    "condition_number",
    "spectral_norm",
    "matrix_from_json",
    "matrix_to_json",
]

MAX_DIM = 64
ASYMMETRY_TOL = 1e-9
SPD_RELATIVE_FLOOR = 1e-12
MAX_CONDITION = 1e12
JACOBI_SWEEPS = 100
JACOBI_TOL = 1e-14

# Backend used by the functional calculus. "lapack" is numpy's eigh; "jacobi"
# is the cyclic Jacobi solver below. Both satisfy the same EigPair contract.
EIG_METHOD = "lapack"


class NotSymmetricError(ValueError):
    pass


class NotSPDError(ValueError):
    pass


class IllConditionedError(ValueError):
    pass


class ConvergenceError(RuntimeError):
    pass


@dataclass(frozen=True)
class EigPair:
    """Ascending eigenvalues and the orthogonal matrix of eigenvectors (columns)."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def reconstruct(self):
        q = self.eigenvectors
        return symmetrize((q * self.eigenvalues) @ q.T)


def symmetrize(m):
    m = np.asarray(m, dtype=float)
    return 0.5 * (m + np.swapaxes(m, -1, -2))


def as_sym(m, tol=ASYMMETRY_TOL):
    """Validate a square, finite, (nearly) symmetric matrix and symmetrise it.

    Asymmetry above ``tol * max|m_ij|`` raises :class:`NotSymmetricError`.
    """
    m = np.array(m, dtype=float)
    if m.ndim == 0:
        m = m.reshape(1, 1)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise NotSymmetricError(f"expected a square matrix, got shape {m.shape}")
    if m.shape[0] < 1 or m.shape[0] > MAX_DIM:
        raise NotSymmetricError(f"dimension must lie in [1, {MAX_DIM}], got {m.shape[0]}")
    if not np.all(np.isfinite(m)):
        raise NotSymmetricError("matrix has non-finite entries")
    scale = np.max(np.abs(m))
    asym = np.max(np.abs(m - m.T))
    if asym > tol * scale:
        raise NotSymmetricError(f"matrix is not symmetric (max |m - m^T| = {asym:.3e})")
    return symmetrize(m)


def as_spd(m, tol=ASYMMETRY_TOL):
    """Validate a symmetric positive definite matrix.

    Requires ``lambda_min > 1e-12 * lambda_max``; raises :class:`NotSPDError`
    otherwise.
    """
    m = as_sym(m, tol)
    lam = np.linalg.eigvalsh(m)
    if not lam[0] > SPD_RELATIVE_FLOOR * max(lam[-1], 0.0) or lam[-1] <= 0:
        raise NotSPDError(f"matrix is not positive definite (eigenvalues in [{lam[0]:.3e}, {lam[-1]:.3e}])")
    return m


def _off_norm(a):
    # Summed directly: sum(a^2) - sum(diag^2) cancels badly near convergence.
    return float(np.sqrt(2.0 * np.sum(np.triu(a, 1) ** 2)))


def jacobi_eigh(m, max_sweeps=JACOBI_SWEEPS, tol=JACOBI_TOL):
    """Cyclic Jacobi eigendecomposition of a symmetric matrix.

    Sweeps rotate every off-diagonal pair to zero until the off-diagonal
    Frobenius norm drops below ``tol * ||m||_F``.

    Raises
    ------
    ConvergenceError
        If ``max_sweeps`` sweeps do not reach the threshold.
    """
    a = symmetrize(m).copy()
    n = a.shape[0]
    v = np.eye(n)
    target = tol * np.linalg.norm(a)
    for _ in range(max_sweeps):
        off = _off_norm(a)
        if off <= target:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                if abs(theta) > 1e150:
                    tan = 0.5 / theta  # theta^2 would overflow
                else:
                    tan = np.copysign(1.0, theta) / (abs(theta) + np.sqrt(theta * theta + 1.0))
                c = 1.0 / np.sqrt(tan * tan + 1.0)
                s = tan * c
                ap, aq = a[:, p].copy(), a[:, q].copy()
                a[:, p], a[:, q] = c * ap - s * aq, s * ap + c * aq
                ap, aq = a[p, :].copy(), a[q, :].copy()
                a[p, :], a[q, :] = c * ap - s * aq, s * ap + c * aq
                a[p, q] = a[q, p] = 0.0
                vp, vq = v[:, p].copy(), v[:, q].copy()
                v[:, p], v[:, q] = c * vp - s * vq, s * vp + c * vq
    else:
        off = _off_norm(a)
        if off > target:
            raise ConvergenceError(
                f"Jacobi did not converge in {max_sweeps} sweeps (off-diagonal norm {off:.3e})")
    lam = np.diag(a).copy()
    order = np.argsort(lam)
    return lam[order], v[:, order]


def eig_sym(m, method=None):
    """Full eigendecomposition of a symmetric matrix as an :class:`EigPair`.

    ``method`` is ``"jacobi"`` or ``"lapack"``; defaults to :data:`EIG_METHOD`.
    """
    m = symmetrize(m)
    if not np.all(np.isfinite(m)):
        raise NotSymmetricError("matrix has non-finite entries")
    method = method or EIG_METHOD
    if method == "jacobi":
        lam, q = jacobi_eigh(m)
    elif method == "lapack":
        lam, q = np.linalg.eigh(m)
    else:
        raise ValueError(f"unknown eigensolver {method!r}")
    return EigPair(lam, q)


def check_condition(lam):
    if lam[0] <= 0:
        raise NotSPDError(f"matrix is not positive definite (lambda_min = {lam[0]:.3e})")
    cond = lam[-1] / lam[0]
    if cond > MAX_CONDITION:
        raise IllConditionedError(
            f"condition number {cond:.3e} exceeds {MAX_CONDITION:.0e}; rescale the input")


def apply_spectral(f, a, eig=None):
    """``Q diag(f(lambda)) Q^T`` for symmetric ``a = Q diag(lambda) Q^T``.

    ``f`` is applied to the eigenvalue vector; a non-finite value raises
    ``ValueError`` naming the offending eigenvalue.
    """
    eig = eig or eig_sym(a)
    lam, q = eig.eigenvalues, eig.eigenvectors
    vals = np.asarray(f(lam), dtype=float)
    if vals.shape != lam.shape:
        vals = np.array([float(f(x)) for x in lam])
    bad = ~np.isfinite(vals)
    if np.any(bad):
        i = int(np.argmax(bad))
        raise ValueError(f"function is not finite at eigenvalue {lam[i]!r}")
    return symmetrize((q * vals) @ q.T)


def power_spd(a, s, eig=None):
    """Spectral power ``a^s`` of an SPD matrix, guarded against ill conditioning."""
    eig = eig or eig_sym(a)
    check_condition(eig.eigenvalues)
    s = float(s)
    if s == 0.0:
        return np.eye(eig.eigenvalues.size)
    return apply_spectral(lambda x: x ** s, a, eig)


def sqrt_spd(a, eig=None):
    eig = eig or eig_sym(a)
    check_condition(eig.eigenvalues)
    return apply_spectral(np.sqrt, a, eig)


def inv_sqrt_spd(a, eig=None):
    eig = eig or eig_sym(a)
    check_condition(eig.eigenvalues)
    return apply_spectral(lambda x: 1.0 / np.sqrt(x), a, eig)


def conjugate(c, a):
    """Congruence ``c^T a c``, symmetrised."""
    c = np.asarray(c, dtype=float)
    a = np.asarray(a, dtype=float)
    if c.ndim != 2 or c.shape[0] != c.shape[1] or c.shape != a.shape:
        raise ValueError(f"dimension mismatch: C {c.shape} vs A {a.shape}")
    return symmetrize(c.T @ a @ c)


def condition_number(a):
    lam = np.linalg.eigvalsh(symmetrize(a))
    return float(lam[-1] / lam[0]) if lam[0] > 0 else float("inf")


def spectral_norm(a):
    """Largest absolute eigenvalue of a symmetric matrix (or stack of them)."""
    lam = np.linalg.eigvalsh(symmetrize(a))
    return np.max(np.abs(lam), axis=-1)


def matrix_from_json(obj, spd=True):
    """Parse the ``{"dim": n, "data": [n*n row-major numbers]}`` matrix schema."""
    if not isinstance(obj, dict) or "dim" not in obj or "data" not in obj:
        raise ValueError('matrix JSON must be an object with "dim" and "data"')
    dim, data = obj["dim"], obj["data"]
    if not isinstance(dim, int) or isinstance(dim, bool) or dim < 1:
        raise ValueError(f'"dim" must be a positive integer, got {dim!r}')
    if not isinstance(data, list) or len(data) != dim * dim:
        raise ValueError(f'"data" must be a list of {dim * dim} numbers')
    if not all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in data):
        raise ValueError('"data" entries must be numbers')
    m = np.array(data, dtype=float).reshape(dim, dim)
    return as_spd(m) if spd else as_sym(m)


def matrix_to_json(m):
    m = np.asarray(m, dtype=float)
    return {"dim": int(m.shape[0]), "data": [float(x) for x in m.ravel()]}
