"""
Loewner order
~~~~~~~~~~~~~
Loewner comparisons, the weighted operator mean chains, 2x2 block positivity
via the Schur complement, and an order-n operator monotonicity certificate
built from Loewner divided-difference matrices.
"""
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .matfun import as_sym, symmetrize
from .operator_means import MeanKind, Pencil, RepFn, mean, rep_function
from .seeding import sub_seed

__all__ = [
    "DEFAULT_TOL",
    "OrderVerdict",
    "ChainReport",
    "MonotoneReport",
    "BlockVerdict",
    "loewner_leq",
    "chain_margins",
    "chain_113",
    "chain_30",
    "CHAINS",
    "loewner_matrix",
    "monotone_order_test",
    "block_psd_test",
    "block_witness",
    "scalar_block_margin",
    "geo_mean_bound_log_identric",
    "log_uniform_grid",
]

DEFAULT_TOL = 1e-9
MONOTONE_THRESHOLD = 1e-8
DERIVATIVE_STEP = 1e-6
MIN_RELATIVE_GAP = 1e-8


@dataclass(frozen=True)
class OrderVerdict:
    """Outcome of ``lower <= upper``.

    ``margin`` is ``lambda_min(upper - lower)``; ``scale`` the larger spectral
    norm of the two operands. ``holds`` iff ``margin >= -tol * max(1, scale)``.
    """

    holds: bool
    margin: float
    scale: float
    tol: float

    @classmethod
    def from_margin(cls, margin, scale, tol=DEFAULT_TOL):
        margin, scale = float(margin), float(scale)
        return cls(margin >= -tol * max(1.0, scale), margin, scale, tol)

    @property
    def relative_margin(self):
        return self.margin / max(1.0, self.scale)


@dataclass
class ChainReport:
    links: list = field(default_factory=list)

    @property
    def overall(self):
        return all(v.holds for _, v in self.links)

    def worst(self):
        return min(v.relative_margin for _, v in self.links)


def loewner_leq(a, b, tol=DEFAULT_TOL):
    """Verdict for ``a <= b`` in the Loewner order, i.e. ``b - a`` PSD."""
    a, b = as_sym(a), as_sym(b)
    if a.shape != b.shape:
        raise ValueError(f"dimension mismatch: {a.shape} vs {b.shape}")
    margin = np.linalg.eigvalsh(b - a)[0]
    scale = max(np.max(np.abs(np.linalg.eigvalsh(a))), np.max(np.abs(np.linalg.eigvalsh(b))))
    return OrderVerdict.from_margin(margin, scale, tol)


def _halfsum_geo_arith(pencil, ts):
    return 0.5 * (pencil.means(MeanKind.GEOMETRIC, ts) + pencil.means(MeanKind.ARITHMETIC, ts))


def _member(kind):
    return lambda pencil, ts: pencil.means(kind, ts)


# Each chain is a sequence of named members, compared left to right.
CHAINS = {
    "113": (
        ("harm", _member(MeanKind.HARMONIC)),
        ("geo", _member(MeanKind.GEOMETRIC)),
        ("log", _member(MeanKind.LOGARITHMIC)),
        ("halfsum", _halfsum_geo_arith),
        ("arith", _member(MeanKind.ARITHMETIC)),
    ),
    "30": (
        ("harm", _member(MeanKind.HARMONIC)),
        ("geo", _member(MeanKind.GEOMETRIC)),
        ("identric", _member(MeanKind.IDENTRIC)),
        ("arith", _member(MeanKind.ARITHMETIC)),
    ),
}


def chain_link_names(chain):
    members = [name for name, _ in CHAINS[chain]]
    return [f"{lo}<={hi}" for lo, hi in zip(members[:-1], members[1:])]


def chain_margins(pencil, ts, chain="113"):
    """Loewner margins of every link of ``chain`` for each weight in ``ts``.

    Returns ``(margins, scales)``, both of shape ``(len(ts), n_links)``;
    all eigenvalue problems are solved in one batched call.
    """
    members = CHAINS[chain]
    stack = np.stack([build(pencil, ts) for _, build in members], axis=1)
    diffs = stack[:, 1:] - stack[:, :-1]
    margins = np.linalg.eigvalsh(diffs)[..., 0]
    norms = np.max(np.abs(np.linalg.eigvalsh(stack)), axis=-1)
    scales = np.maximum(norms[:, 1:], norms[:, :-1])
    return margins, scales


def _chain(a, b, t, tol, chain):
    margins, scales = chain_margins(Pencil(a, b), [t], chain)
    names = chain_link_names(chain)
    return ChainReport([(n, OrderVerdict.from_margin(m, s, tol))
                        for n, m, s in zip(names, margins[0], scales[0])])


def chain_113(a, b, t, tol=DEFAULT_TOL):
    """``A !_t B <= A #_t B <= A l_t B <= (A #_t B + A nabla_t B) / 2 <= A nabla_t B``."""
    return _chain(a, b, t, tol, "113")


def chain_30(a, b, t, tol=DEFAULT_TOL):
    """``A !_t B <= A #_t B <= A I_t B <= A nabla_t B``."""
    return _chain(a, b, t, tol, "30")


def _central_difference(f, x, h):
    return (np.asarray(f(x + h)) - np.asarray(f(x - h))) / (2.0 * h)


def loewner_matrix(f, df, points):
    """Loewner divided-difference matrix of ``f`` at ``points``.

    Parameters
    ----------
    f : callable
        Vectorised scalar function.
    df : callable or None
        Derivative for the diagonal. ``None`` uses central differences with
        step ``1e-6 * x``.
    points : array_like
        Strictly ascending positive points, at least two.
    """
    x = np.asarray(points, dtype=float)
    if x.ndim != 1 or x.size < 2:
        raise ValueError("need at least two points")
    if np.any(x <= 0) or not np.all(np.isfinite(x)):
        raise ValueError("points must be positive and finite")
    if np.any(np.diff(x) <= 0):
        raise ValueError("points must be strictly ascending (duplicates are not allowed)")
    fx = np.asarray(f(x), dtype=float)
    dx = x[:, None] - x[None, :]
    np.fill_diagonal(dx, 1.0)
    lm = (fx[:, None] - fx[None, :]) / dx
    diag = np.asarray(df(x), dtype=float) if df is not None else _central_difference(f, x, DERIVATIVE_STEP * x)
    np.fill_diagonal(lm, diag)
    return symmetrize(lm)


def _richardson_derivative(f):
    def df(x):
        h = DERIVATIVE_STEP * 10.0 * x
        return (4.0 * _central_difference(f, x, h / 2.0) - _central_difference(f, x, h)) / 3.0
    return df


def _normalized_min_eig(lm):
    lam = np.linalg.eigvalsh(lm)
    return lam[0] / max(1.0, np.max(np.abs(lam)))


@dataclass
class MonotoneReport:
    """Summary of a Loewner-matrix campaign for one function and order.

    ``min_eigenvalue`` is the worst ``lambda_min(L) / max(1, ||L||)`` seen.
    ``violation`` holds a confirmed counterexample: the points, sub-seed and
    trial index that reproduce it.
    """

    function: str
    order: int
    trials: int
    seed: int
    min_eigenvalue: float
    worst_points: list
    violation: Optional[dict] = None
    unconfirmed: int = 0

    @property
    def monotone(self):
        return self.violation is None


def monotone_order_test(f, n, trials, domain=(1e-2, 1e2), seed=0, df=None,
                        oracle=None, threshold=MONOTONE_THRESHOLD, name=None):
    """Sample order-``n`` Loewner matrices of ``f`` and look for non-PSD ones.

    Points are drawn log-uniformly from ``domain``. A candidate violation
    (normalised minimum eigenvalue below ``-threshold``) is re-evaluated with
    ``oracle`` in place of ``f`` (when given) and a Richardson-extrapolated
    derivative; only violations surviving that are reported.
    """
    n = int(n)
    if not 2 <= n <= 8:
        raise ValueError(f"order must lie in [2, 8], got {n}")
    lo, hi = domain
    if not 0 < lo < hi:
        raise ValueError(f"invalid domain {domain!r}")
    if df is None and isinstance(f, RepFn):
        df = f.derivative
        if f.derivative(np.ones(1)) is None:
            df = None
    label = name or (f.label if isinstance(f, RepFn) else getattr(f, "__name__", "f"))
    worst, worst_points, violation, unconfirmed = np.inf, None, None, 0
    for i in range(int(trials)):
        s = sub_seed(seed, n, i)
        rng = np.random.default_rng(s)
        while True:
            x = np.sort(10.0 ** rng.uniform(np.log10(lo), np.log10(hi), n))
            if np.min(np.diff(x) / x[1:]) >= MIN_RELATIVE_GAP:
                break
        margin = _normalized_min_eig(loewner_matrix(f, df, x))
        if margin < worst:
            worst, worst_points = margin, x.tolist()
        if margin < -threshold:
            g = oracle or f
            lm = loewner_matrix(g, df if oracle is None and df is not None else _richardson_derivative(g), x)
            recheck = _normalized_min_eig(lm)
            if recheck < -threshold:
                if violation is None:
                    violation = {"points": x.tolist(), "sub_seed": int(s), "trial": i,
                                 "min_eigenvalue": float(recheck), "loewner_matrix": lm.tolist()}
            else:
                unconfirmed += 1
    return MonotoneReport(label, n, int(trials), int(seed), float(worst), worst_points,
                          violation, unconfirmed)


def log_uniform_grid(lo, hi, num, include_one=True):
    x = np.logspace(np.log10(lo), np.log10(hi), num)
    if include_one:
        x = np.unique(np.append(x, 1.0))
    return x


def scalar_block_margin(f, g, h, grid=None):
    """Minimum of ``(f h - g^2) / max(1, g^2)`` over ``grid`` and its argmin."""
    x = log_uniform_grid(1e-4, 1e4, 201) if grid is None else np.asarray(grid, dtype=float)
    fv, gv, hv = np.asarray(f(x)), np.asarray(g(x)), np.asarray(h(x))
    gap = (fv * hv - gv * gv) / np.maximum(1.0, gv * gv)
    i = int(np.argmin(gap))
    return float(gap[i]), float(x[i])


@dataclass
class BlockVerdict:
    """PSD verdicts for ``[[A sigma B, A tau B], [A tau B, A rho B]]``.

    ``block`` tests the assembled 2n x 2n matrix, ``schur`` the complement
    ``A sigma B - (A tau B)(A rho B)^-1 (A tau B)``; ``scalar_margin`` is the
    minimum of ``f h - g^2`` over the sampled x-grid at ``scalar_witness_x``.
    """

    block: OrderVerdict
    schur: OrderVerdict
    scalar_margin: float
    scalar_witness_x: float
    tol: float

    @property
    def holds(self):
        return self.block.holds

    @property
    def agree(self):
        return self.block.holds == self.schur.holds

    @property
    def scalar_holds(self):
        return self.scalar_margin >= -self.tol

    @property
    def consistent(self):
        # The scalar criterion holding forces every block to be PSD.
        return self.agree and (self.block.holds or not self.scalar_holds)


def block_psd_test(a, b, sigma, tau, rho, t=0.5, tol=DEFAULT_TOL, grid=None):
    """Positivity of the block matrix of three means of ``(A, B)``.

    ``sigma``, ``tau`` and ``rho`` are :class:`MeanKind` tags or
    :class:`RepFn` objects; tags take weight ``t``.
    """
    f, g, h = (rep_function(k, t) for k in (sigma, tau, rho))
    p = Pencil(a, b)
    s, m, r = p.mean(f), p.mean(g), p.mean(h)
    scale = float(max(np.max(np.abs(np.linalg.eigvalsh(x))) for x in (s, m, r)))
    block = np.block([[s, m], [m, r]])
    block_margin = np.linalg.eigvalsh(symmetrize(block))[0]
    schur = symmetrize(s - m @ np.linalg.solve(r, m))
    schur_margin = np.linalg.eigvalsh(schur)[0]
    scalar_margin, x_star = scalar_block_margin(f, g, h, grid)
    return BlockVerdict(OrderVerdict.from_margin(block_margin, scale, tol),
                        OrderVerdict.from_margin(schur_margin, scale, tol),
                        scalar_margin, x_star, tol)


def block_witness(sigma, tau, rho, t=0.5, x=None, tol=DEFAULT_TOL):
    """Diagonal witness pair ``A = I``, ``B = diag(x, 1)`` for a failing scalar criterion.

    With ``x`` omitted the grid minimiser of ``f h - g^2`` is used.
    """
    f, g, h = (rep_function(k, t) for k in (sigma, tau, rho))
    if x is None:
        _, x = scalar_block_margin(f, g, h)
    a, b = np.eye(2), np.diag([float(x), 1.0])
    return a, b, block_psd_test(a, b, f, g, h, t, tol)


def geo_mean_bound_log_identric(a, b, tol=DEFAULT_TOL):
    """``A # B <= (A l B) # (A I B)``, all at weight 1/2."""
    p = Pencil(a, b)
    lhs = p.mean(MeanKind.GEOMETRIC, 0.5)
    rhs = mean(p.mean(MeanKind.LOGARITHMIC, 0.5), p.mean(MeanKind.IDENTRIC, 0.5), MeanKind.GEOMETRIC, 0.5)
    return loewner_leq(lhs, rhs, tol)
