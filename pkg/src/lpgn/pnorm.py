"""Certified p -> p operator norms of dense complex matrices.

Every routine returns a :class:`NormEstimate`, an interval ``[lower, upper]``
that contains the true induced norm.  Lower bounds always come with a unit
vector realising them; upper bounds come from closed forms, Riesz–Thorin
interpolation or (for 2x2 matrices) a convex-hull branch and bound.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import minimize

from .exponent import Exponent, as_exponent
from .interp import rt_bound, theta_for

EXACT_RTOL = 1e-8
# relative outward rounding applied where a bound is produced
ROUND = 1e-14


@dataclass
class NormEstimate:
    lower: float
    upper: float
    exact: bool = False
    lower_witness: np.ndarray | None = None
    method_tags: list[str] = field(default_factory=list)

    @property
    def width(self) -> float:
        return self.upper - self.lower

    @property
    def midpoint(self) -> float:
        if math.isinf(self.upper):
            return self.lower
        return 0.5 * (self.lower + self.upper)

    def contains(self, value: float, tol: float = 0.0) -> bool:
        return self.lower - tol <= value <= self.upper + tol

    def overlaps(self, other: "NormEstimate", widen: float = 0.0) -> bool:
        return self.lower - widen <= other.upper + widen and other.lower - widen <= self.upper + widen

    def to_dict(self) -> dict:
        w = None
        if self.lower_witness is not None:
            w = [[float(z.real), float(z.imag)] for z in self.lower_witness]
        return {
            "lower": float(self.lower),
            "upper": float(self.upper),
            "exact": bool(self.exact),
            "method_tags": list(self.method_tags),
            "witness": w,
        }


@dataclass(frozen=True)
class NormBudget:
    """Work limits shared by the iterative routines."""

    starts: int = 8
    seed: int = 0
    max_iter: int = 500
    tol: float = 1e-14
    basis_starts: int | None = None
    grid: int = 32
    newton_iters: int = 200
    max_rounds: int = 80
    cert_rtol: float = 1e-11


def as_cmatrix(A) -> np.ndarray:
    A = np.asarray(A, dtype=complex)
    if A.ndim != 2 or A.shape[0] == 0 or A.shape[1] == 0:
        raise ValueError(f"expected a nonempty 2-d matrix, got shape {A.shape}")
    if not np.all(np.isfinite(A)):
        raise ValueError("matrix has non-finite entries")
    return A


def vector_pnorm(x, p: float, axis=None):
    """Plain l^p norm (``p`` may be inf) along ``axis``."""
    a = np.abs(np.asarray(x))
    if math.isinf(p):
        return a.max(axis=axis)
    scale = a.max(axis=axis, keepdims=True)
    scale = np.where(scale > 0, scale, 1.0)
    s = ((a / scale) ** p).sum(axis=axis) ** (1.0 / p)
    return s * np.squeeze(scale, axis=axis) if axis is not None else float(s * scale.item())


def _zero_estimate(A: np.ndarray) -> NormEstimate:
    w = np.zeros(A.shape[1], dtype=complex)
    w[0] = 1.0
    return NormEstimate(0.0, 0.0, True, w, ["zero"])


def _finish(est: NormEstimate) -> NormEstimate:
    if est.lower > est.upper:
        # round-off only; both bounds are valid in exact arithmetic
        est.upper = est.lower
    est.exact = est.upper - est.lower <= EXACT_RTOL * max(1.0, est.upper)
    return est


def _phase_conj(w: np.ndarray) -> np.ndarray:
    a = np.abs(w)
    out = np.ones_like(w, dtype=complex)
    nz = a > 0
    out[nz] = np.conj(w[nz] / a[nz])
    return out


def norm_exact_special(A, p) -> NormEstimate:
    """Closed forms at p = 1 (column sums), 2 (top singular value), inf (row sums)."""
    A = as_cmatrix(A)
    p = as_exponent(p)
    if p.value not in (1.0, 2.0, math.inf):
        raise ValueError(f"closed form only available for p in {{1, 2, inf}}, got {p}")
    if not np.any(A):
        return _zero_estimate(A)
    absA = np.abs(A)
    if p.value == 1.0:
        sums = absA.sum(axis=0)
        j = int(np.argmax(sums))
        w = np.zeros(A.shape[1], dtype=complex)
        w[j] = 1.0
        val, tag = float(sums[j]), "exact:col-sum"
    elif p.is_inf:
        sums = absA.sum(axis=1)
        i = int(np.argmax(sums))
        w = _phase_conj(A[i])
        val, tag = float(sums[i]), "exact:row-sum"
    else:
        _, s, vh = np.linalg.svd(A)
        w = vh[0].conj()
        val, tag = float(s[0]), "exact:svd"
    return NormEstimate(val * (1 - ROUND), val * (1 + ROUND), True, w, [tag])


def _duality_map(W: np.ndarray, r: float) -> np.ndarray:
    # columnwise |w|^(r-1) * conj(phase w), scaled by the column max to stay finite
    a = np.abs(W)
    scale = a.max(axis=0, keepdims=True)
    scale = np.where(scale > 0, scale, 1.0)
    return (a / scale) ** (r - 1.0) * _phase_conj(W)


def _normalize_cols(X: np.ndarray, p: float) -> np.ndarray:
    n = vector_pnorm(X, p, axis=0)
    return X / np.where(n > 0, n, 1.0)


def boyd_iterate(A, p, X0, max_iter: int = 500, tol: float = 1e-14):
    """Batched complex Boyd–Higham ascent.

    Columns of ``X0`` are independent starts.  Returns ``(values, X, history)``
    where ``history[k]`` holds the objective ``||A x_k||_p`` of every column
    after step k; each row of ``history`` is nondecreasing.
    """
    A = as_cmatrix(A)
    p = float(as_exponent(p))
    pc = p / (p - 1.0)
    X = _normalize_cols(np.asarray(X0, dtype=complex), p)
    vals = vector_pnorm(A @ X, p, axis=0)
    history = [vals.copy()]
    active = np.ones(X.shape[1], dtype=bool)
    for _ in range(max_iter):
        if not active.any():
            break
        idx = np.flatnonzero(active)
        Y = A @ X[:, idx]
        Z = A.T @ _duality_map(Y, p)
        zero = ~np.any(Z, axis=0)
        Xn = _normalize_cols(_duality_map(Z, pc), p)
        Xn[:, zero] = X[:, idx[zero]]
        new = vector_pnorm(A @ Xn, p, axis=0)
        old = vals[idx]
        up = new > old
        X[:, idx[up]] = Xn[:, up]
        vals[idx[up]] = new[up]
        done = (new - old) <= tol * np.maximum(old, 1e-300)
        active[idx[done]] = False
        history.append(vals.copy())
    return vals, X, np.array(history)


def boyd_starts(n: int, starts: int, seed: int, basis_starts: int | None = None, extra=None) -> np.ndarray:
    cols = []
    nb = n if basis_starts is None else min(n, basis_starts)
    if nb:
        cols.append(np.eye(n, nb, dtype=complex))
    if starts:
        rng = np.random.default_rng(seed)
        cols.append(rng.standard_normal((n, starts)) + 1j * rng.standard_normal((n, starts)))
    if extra is not None:
        extra = np.asarray(extra, dtype=complex)
        cols.append(extra.reshape(n, -1))
    if not cols:
        raise ValueError("empty start set")
    return np.hstack(cols)


def norm_lower_boyd(A, p, starts: int = 8, seed: int = 0, max_iter: int = 500, tol: float = 1e-14,
                    *, basis_starts: int | None = None, extra_starts=None) -> NormEstimate:
    """Multi-start Boyd–Higham lower bound; ``upper`` is left at +inf.

    The start set is the standard basis (optionally capped at
    ``basis_starts`` vectors) plus ``starts`` seeded random complex vectors.
    Non-convergence is not an error: the last iterate is still feasible.
    """
    A = as_cmatrix(A)
    p = as_exponent(p)
    if not 1.0 < p.value < math.inf:
        raise ValueError("Boyd iteration needs 1 < p < inf; use norm_exact_special")
    if starts < 0:
        raise ValueError("starts must be nonnegative")
    if not np.any(A):
        return _zero_estimate(A)
    X0 = boyd_starts(A.shape[1], starts, seed, basis_starts, extra_starts)
    vals, X, _ = boyd_iterate(A, p, X0, max_iter, tol)
    j = int(np.argmax(vals))
    return NormEstimate(float(vals[j]) * (1 - ROUND), math.inf, False, X[:, j].copy(), ["lower:boyd"])


def norm_upper_interp(A, p) -> NormEstimate:
    """Riesz–Thorin upper bound between the exactly computable exponents.

    (1, 2) interpolates between p = 1 and 2, (2, inf) between 2 and inf.
    """
    A = as_cmatrix(A)
    p = as_exponent(p)
    if p.value in (1.0, 2.0) or p.is_inf:
        return norm_exact_special(A, p)
    if p.value < 2.0:
        theta = theta_for(1, 2, p)
        ub = rt_bound(norm_exact_special(A, 1).upper, norm_exact_special(A, 2).upper, theta)
        tag = "upper:rt(1,2)"
    else:
        theta = theta_for(2, math.inf, p)
        ub = rt_bound(norm_exact_special(A, 2).upper, norm_exact_special(A, math.inf).upper, theta)
        tag = "upper:rt(2,inf)"
    return NormEstimate(0.0, ub * (1 + ROUND), False, None, [tag])


def _upper_one_inf(A, p: Exponent) -> float:
    theta = theta_for(1, math.inf, p)
    return rt_bound(norm_exact_special(A, 1).upper, norm_exact_special(A, math.inf).upper, theta)


# --- 2x2 branch and bound -------------------------------------------------
#
# Unit vectors of l^p_2 modulo a global phase are x = (r0, r1 e^{i phi}) with
# (r0, r1) on the positive quarter of the real l^p circle, parametrised by the
# direction angle t in [0, pi/2].  For t >= pi/4 the phase is attached to the
# first coordinate instead, x ~ (r0 e^{-i phi}, r1), so that it always sits on
# the smaller entry.  A cell [ta, tb] x [fa, fb] is enclosed in the convex hull
# of 12 points; ||Ax||_p is convex in x, so its maximum over the hull is the
# maximum over those points.


def _quarter_point(t, p):
    c, s = np.cos(t), np.sin(t)
    c, s = np.abs(c), np.abs(s)
    n = (c**p + s**p) ** (1.0 / p)
    return np.stack([c / n, s / n], axis=-1)


def _unit_vector(t, f, p):
    c, s = np.cos(t), np.sin(t)
    n = (np.abs(c) ** p + np.abs(s) ** p) ** (1.0 / p)
    return np.stack([c / n + 0j, s / n * np.exp(1j * f)], axis=-1)


def _objective(A, X, p):
    Y = X @ A.T
    return (np.abs(Y) ** p).sum(axis=-1) ** (1.0 / p)


def _cell_bounds(A, p, ta, tb, fa, fb):
    Pa, Pb = _quarter_point(ta, p), _quarter_point(tb, p)
    c = Pb - Pa
    length = np.hypot(c[:, 0], c[:, 1])
    nu = np.stack([c[:, 1], -c[:, 0]], axis=-1) / length[:, None]
    # supporting point of the l^p circle with outward normal nu
    lg = np.log(np.maximum(nu, 1e-300)) / (p - 1.0)
    lg -= lg.max(axis=1, keepdims=True)
    m = np.exp(lg)
    M = m / ((m**p).sum(axis=1, keepdims=True) ** (1.0 / p))
    h = (nu * M).sum(1)
    delta = np.maximum(h - (nu * Pa).sum(1), h - (nu * Pb).sum(1))
    delta = np.maximum(delta, 0.0) * (1 + 1e-9) + 1e-15
    V = np.stack([Pa, Pb, Pa + delta[:, None] * nu, Pb + delta[:, None] * nu], axis=1)
    half = 0.5 * (fb - fa)
    fm = 0.5 * (fa + fb)
    W = np.stack([np.exp(1j * fa), np.exp(1j * fb), np.exp(1j * fm) / np.cos(half)], axis=1)
    chart_b = ta >= np.pi / 4
    W0 = np.where(chart_b[:, None], np.conj(W), 1.0)
    W1 = np.where(chart_b[:, None], 1.0, W)
    x0 = V[:, :, None, 0] * W0[:, None, :]
    x1 = V[:, :, None, 1] * W1[:, None, :]
    pts = np.stack([x0, x1], axis=-1).reshape(len(ta), 12, 2)
    upper = _objective(A, pts, p).max(axis=1)
    phased = np.where(chart_b, Pa[:, 0], Pb[:, 1]) + delta
    e_phi = phased * (1.0 / np.cos(half) - 1.0)
    return upper, delta, e_phi


def _centers(p, ta, tb, fa, fb):
    tm = 0.5 * (ta + tb)
    fm = 0.5 * (fa + fb)
    fm = np.where(tm >= np.pi / 4, -fm, fm)
    return tm, fm


def norm2x2_refined(A, p, grid: int = 32, newton_iters: int = 200, *, max_rounds: int = 80,
                    cert_rtol: float = 1e-11, max_cells: int = 200_000) -> NormEstimate:
    """Near-exact p-norm of a 2x2 matrix with a certified upper bound.

    A ``grid`` of cells over (direction, phase) is evaluated, the best centres
    are polished with Nelder–Mead (at most ``newton_iters`` iterations), and a
    branch and bound over convex-hull cell enclosures tightens the upper bound
    until the relative gap is below ``cert_rtol`` or ``max_rounds`` is spent.
    """
    A = as_cmatrix(A)
    if A.shape != (2, 2):
        raise ValueError(f"norm2x2_refined needs a 2x2 matrix, got {A.shape}")
    pe = as_exponent(p)
    if not 1.0 < pe.value < math.inf:
        raise ValueError("norm2x2_refined needs 1 < p < inf")
    if not np.any(A):
        return _zero_estimate(A)
    p = pe.value
    grid = max(4, int(grid))
    nt = max(2, grid // 2)
    nt += nt % 2  # keep pi/4 on a cell boundary
    tedges = np.linspace(0.0, np.pi / 2, nt + 1)
    fedges = np.linspace(0.0, 2 * np.pi, grid + 1)
    TA, FA = np.meshgrid(tedges[:-1], fedges[:-1], indexing="ij")
    TB, FB = np.meshgrid(tedges[1:], fedges[1:], indexing="ij")
    ta, tb, fa, fb = TA.ravel(), TB.ravel(), FA.ravel(), FB.ravel()

    def f_neg(z):
        return -float(_objective(A, _unit_vector(z[0], z[1], p), p))

    tm, fm = _centers(p, ta, tb, fa, fb)
    vals = _objective(A, _unit_vector(tm, fm, p), p)
    order = np.argsort(vals)[::-1][:3]
    best, best_z = -np.inf, None
    for k in order:
        res = minimize(f_neg, [tm[k], fm[k]], method="Nelder-Mead",
                       options={"maxiter": newton_iters, "xatol": 1e-13, "fatol": 1e-16})
        if -res.fun > best:
            best, best_z = -res.fun, res.x
    if vals.max() > best:
        k = int(np.argmax(vals))
        best, best_z = float(vals[k]), np.array([tm[k], fm[k]])

    # interpolation bounds settle flat cases (e.g. isometries) where no cell can be pruned
    rt_upper = min(norm_upper_interp(A, pe).upper, _upper_one_inf(A, pe))
    pruned_upper = 0.0
    upper = math.inf
    for _ in range(max_rounds if rt_upper - best > cert_rtol * best else 0):
        ub, e_t, e_f = _cell_bounds(A, p, ta, tb, fa, fb)
        tm, fm = _centers(p, ta, tb, fa, fb)
        vals = _objective(A, _unit_vector(tm, fm, p), p)
        k = int(np.argmax(vals))
        if vals[k] > best:
            best, best_z = float(vals[k]), np.array([tm[k], fm[k]])
        target = cert_rtol * best
        keep = ub > best + target
        if (~keep).any():
            pruned_upper = max(pruned_upper, float(ub[~keep].max()))
        upper = max(pruned_upper, float(ub[keep].max()) if keep.any() else 0.0)
        if upper - best <= target or not keep.any() or 2 * keep.sum() > max_cells:
            break
        ta, tb, fa, fb, e_t, e_f = ta[keep], tb[keep], fa[keep], fb[keep], e_t[keep], e_f[keep]
        split_t = e_t >= e_f
        tmid = 0.5 * (ta + tb)
        fmid = 0.5 * (fa + fb)
        ta = np.concatenate([ta, np.where(split_t, tmid, ta)])
        tb = np.concatenate([np.where(split_t, tmid, tb), tb])
        fa = np.concatenate([fa, np.where(split_t, fa, fmid)])
        fb = np.concatenate([np.where(split_t, fb, fmid), fb])
    # floating-point slack on the vertex evaluations
    upper = max(min(upper, rt_upper), best) * (1 + ROUND)
    witness = _unit_vector(best_z[0], best_z[1], p)
    return _finish(NormEstimate(float(best) * (1 - ROUND), float(upper), False, witness, ["refined:2x2"]))


def norm_certified(A, p, budget: NormBudget | None = None) -> NormEstimate:
    """Tightest available certified interval for ``||A||_{p->p}``."""
    A = as_cmatrix(A)
    p = as_exponent(p)
    budget = budget or NormBudget()
    if not np.any(A):
        return _zero_estimate(A)
    if p.value in (1.0, 2.0) or p.is_inf:
        return norm_exact_special(A, p)
    candidates = []
    interp = norm_upper_interp(A, p)
    candidates.append(interp)
    candidates.append(NormEstimate(0.0, _upper_one_inf(A, p) * (1 + ROUND), False, None, ["upper:rt(1,inf)"]))
    candidates.append(norm_lower_boyd(A, p, budget.starts, budget.seed, budget.max_iter, budget.tol,
                                      basis_starts=budget.basis_starts))
    if A.shape == (2, 2):
        candidates.append(norm2x2_refined(A, p, budget.grid, budget.newton_iters,
                                          max_rounds=budget.max_rounds, cert_rtol=budget.cert_rtol))
    return combine(candidates)


def combine(estimates) -> NormEstimate:
    """Intersect valid intervals, keeping the witness of the best lower bound."""
    lo = max(estimates, key=lambda e: e.lower)
    hi = min(estimates, key=lambda e: e.upper)
    tags = list(lo.method_tags) + [t for t in hi.method_tags if t not in lo.method_tags]
    return _finish(NormEstimate(lo.lower, hi.upper, False, lo.lower_witness, tags))
