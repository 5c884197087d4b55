"""Convolution operators on l^p(Z) for finitely supported kernels.

Lower bounds come from finite Toeplitz sections of the convolution operator,
upper bounds from interpolating the exact p = 1 norm (the l^1 norm of the
kernel) with the exact p = 2 norm (the supremum of its symbol).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from scipy.optimize import minimize_scalar

from .exponent import as_exponent
from .interp import rt_bound, theta_for
from .pnorm import ROUND, NormBudget, NormEstimate, boyd_iterate, boyd_starts, norm_certified


@dataclass(frozen=True, eq=False)
class Kernel:
    """Complex function on Z supported on ``support_lo .. support_lo + len(values) - 1``."""

    support_lo: int
    values: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values, dtype=complex).reshape(-1)
        if v.size == 0:
            raise ValueError("kernel needs at least one value")
        if not np.all(np.isfinite(v)):
            raise ValueError("kernel values must be finite")
        object.__setattr__(self, "values", v)
        object.__setattr__(self, "support_lo", int(self.support_lo))

    @classmethod
    def from_dict(cls, d: dict) -> "Kernel":
        if not d:
            raise ValueError("empty kernel")
        lo, hi = min(d), max(d)
        v = np.zeros(hi - lo + 1, dtype=complex)
        for k, val in d.items():
            v[k - lo] += val
        return cls(lo, v)

    @classmethod
    def delta(cls, k: int, value: complex = 1.0) -> "Kernel":
        return cls(k, [value])

    @property
    def support_hi(self) -> int:
        return self.support_lo + self.values.size - 1

    @property
    def width(self) -> int:
        return self.values.size

    def __call__(self, k: int) -> complex:
        i = k - self.support_lo
        if 0 <= i < self.values.size:
            return complex(self.values[i])
        return 0j

    def items(self):
        for i, v in enumerate(self.values):
            yield self.support_lo + i, complex(v)

    def l1(self) -> float:
        # correctly rounded, so independent of the order of the values
        return math.fsum(np.abs(self.values))

    def __add__(self, other: "Kernel") -> "Kernel":
        d: dict[int, complex] = {}
        for k, v in list(self.items()) + list(other.items()):
            d[k] = d.get(k, 0j) + v
        return Kernel.from_dict(d)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Kernel):
            return NotImplemented
        return dict(_nonzero(self)) == dict(_nonzero(other))

    def __repr__(self) -> str:
        return f"Kernel({dict(_nonzero(self))})"


def _nonzero(f: Kernel):
    return ((k, v) for k, v in f.items() if v != 0)


def convolve(f: Kernel, g: Kernel) -> Kernel:
    """``(f * g)(k) = sum_j f(j) g(k - j)``, each entry correctly rounded."""
    a, b = f.values, g.values
    rr = np.multiply.outer(a.real, b.real)
    ii = np.multiply.outer(a.imag, b.imag)
    ri = np.multiply.outer(a.real, b.imag)
    ir = np.multiply.outer(a.imag, b.real)
    out = np.empty(a.size + b.size - 1, dtype=complex)
    for k in range(out.size):
        # anti-diagonal i + j = k, read with fliplr so that diagonal offsets apply
        off = (b.size - 1) - k
        re = math.fsum(np.concatenate([np.fliplr(rr).diagonal(off), -np.fliplr(ii).diagonal(off)]))
        im = math.fsum(np.concatenate([np.fliplr(ri).diagonal(off), np.fliplr(ir).diagonal(off)]))
        out[k] = complex(re, im)
    return Kernel(f.support_lo + g.support_lo, out)


def sharp(f: Kernel) -> Kernel:
    """``g(k) = f(-k)``; the modular function is trivial on Z."""
    return Kernel(-f.support_hi, f.values[::-1].copy())


def toeplitz_truncation(f: Kernel, N: int) -> np.ndarray:
    """Section ``T[j, k] = f(j - k)`` for ``j, k`` in ``-N..N``."""
    if N < 1:
        raise ValueError("N must be positive")
    idx = np.arange(-N, N + 1)
    d = idx[:, None] - idx[None, :] - f.support_lo
    inside = (d >= 0) & (d < f.width)
    T = np.zeros(d.shape, dtype=complex)
    T[inside] = f.values[d[inside]]
    return T


class SymbolBound(NamedTuple):
    value: float
    error: float
    argmax: float

    @property
    def upper(self) -> float:
        return self.value + self.error


def _symbol(f: Kernel, theta):
    k = np.arange(f.support_lo, f.support_hi + 1)
    return np.exp(1j * np.multiply.outer(theta, k)) @ f.values


def symbol_sup(f: Kernel, grid: int | None = None) -> SymbolBound:
    """Supremum of ``|sum_k f(k) e^{ik theta}|`` with a certified error.

    ``value`` is attained at ``argmax`` (so it is a true lower bound).  The
    error combines the grid spacing with derivative bounds of the symbol and is
    capped by ``||f||_1 - value``.
    """
    if grid is None:
        grid = max(4096, 64 * f.width)
    if grid < 4 * f.width:
        raise ValueError("grid must be at least four times the support width")
    h = 2 * np.pi / grid
    theta = np.arange(grid) * h
    mags = np.abs(_symbol(f, theta))
    i = int(np.argmax(mags))
    gmax = float(mags[i])
    k = np.arange(f.support_lo, f.support_hi + 1)
    a = np.abs(f.values)
    d1 = float((np.abs(k) * a).sum())
    d2 = float((k.astype(float) ** 2 * a).sum())
    l1 = float(a.sum())
    # first order: |s| is d1-Lipschitz; second order: |s|^2 has |(.)''| <= 2(l1*d2 + d1^2)
    first = gmax + d1 * h / 2
    second = math.sqrt(gmax**2 + 2 * (l1 * d2 + d1**2) * h**2 / 8)
    upper = min(first, second, l1)

    res = minimize_scalar(lambda t: -abs(_symbol(f, np.array([t]))[0]),
                          bounds=(theta[i] - h, theta[i] + h), method="bounded",
                          options={"xatol": 1e-12})
    value, arg = gmax, float(theta[i])
    if -res.fun > value:
        value, arg = float(-res.fun), float(res.x)
    return SymbolBound(value, max(upper - value, 0.0), arg)


def _plane_waves(f: Kernel, N: int, count: int = 3) -> np.ndarray:
    # modulated windows e^{-ik theta} on -N..N at the largest symbol peaks
    grid = max(512, 16 * f.width)
    theta = 2 * np.pi * np.arange(grid) / grid
    mags = np.abs(_symbol(f, theta))
    peaks = np.flatnonzero((mags >= np.roll(mags, 1)) & (mags >= np.roll(mags, -1)))
    peaks = peaks[np.argsort(mags[peaks])[::-1][:count]]
    j = np.arange(-N, N + 1)
    window = np.cos(0.5 * np.pi * j / (N + 1))
    cols = [np.ones(j.size, dtype=complex)]
    cols += [window * np.exp(-1j * theta[t] * j) for t in peaks]
    return np.stack(cols, axis=1)


def norm_lambda_lower(f: Kernel, p, N: int, budget: NormBudget | None = None,
                      warm_start=None) -> NormEstimate:
    """Lower bound for the norm of convolution by ``f`` on l^p(Z).

    Any section of the operator is a compression, so a lower bound for
    ``||toeplitz_truncation(f, N)||_p`` bounds the full norm.  ``warm_start``
    (a vector on a smaller window ``-M..M``) is zero-padded and iterated too,
    which keeps sweeps over increasing N monotone.
    """
    p = as_exponent(p)
    if p.is_inf:
        raise ValueError("group algebras use p in [1, inf)")
    budget = budget or NormBudget()
    T = toeplitz_truncation(f, N)
    if p.value in (1.0, 2.0):
        est = norm_certified(T, p)
        return NormEstimate(est.lower, math.inf, False, est.lower_witness,
                            [f"lower:toeplitz(N={N})"] + est.method_tags)
    size = 2 * N + 1
    extra = [_plane_waves(f, N)]
    if warm_start is not None:
        w = np.asarray(warm_start, dtype=complex)
        pad = (size - w.size) // 2
        if pad < 0:
            raise ValueError("warm start is larger than the window")
        extra.append(np.pad(w, (pad, pad))[:, None])
    basis = budget.basis_starts if budget.basis_starts is not None else min(size, 32)
    X0 = boyd_starts(size, budget.starts, budget.seed, basis, np.hstack(extra))
    vals, X, _ = boyd_iterate(T, p, X0, budget.max_iter, budget.tol)
    j = int(np.argmax(vals))
    return NormEstimate(float(vals[j]) * (1 - ROUND), math.inf, False, X[:, j].copy(),
                        [f"lower:toeplitz(N={N})", "lower:boyd"])


def lambda_lower_sweep(f: Kernel, p, Ns, budget: NormBudget | None = None) -> list[NormEstimate]:
    """Lower bounds over increasing windows, each seeded by the previous witness."""
    out = []
    prev, prev_N = None, 0
    for N in sorted(Ns):
        est = norm_lambda_lower(f, p, N, budget, warm_start=prev)
        if out and est.lower < out[-1].lower:
            # a padded witness is feasible on the larger window with at least the same value
            w = np.pad(out[-1].lower_witness, (N - prev_N, N - prev_N))
            est = NormEstimate(out[-1].lower, math.inf, False, w, est.method_tags)
        out.append(est)
        prev, prev_N = est.lower_witness, N
    return out


def norm_lambda_upper(f: Kernel, p) -> NormEstimate:
    """Upper bound by interpolating the exact p = 1 and p = 2 (or 2 and inf) norms."""
    p = as_exponent(p)
    if p.is_inf:
        raise ValueError("group algebras use p in [1, inf)")
    l1 = f.l1()
    if p.value == 1.0:
        return NormEstimate(l1, l1, True, None, ["exact:l1"])
    sym = symbol_sup(f)
    if p.value == 2.0:
        est = NormEstimate(sym.value * (1 - ROUND), sym.upper * (1 + ROUND), False, None, ["exact:symbol-sup"])
        est.exact = est.width <= 1e-8 * max(1.0, est.upper)
        return est
    if p.value < 2.0:
        ub = rt_bound(l1, sym.upper, theta_for(1, 2, p))
        tag = "upper:rt(1,2)"
    else:
        # at p = inf the norm is again ||f||_1 (transpose duality)
        ub = rt_bound(sym.upper, l1, theta_for(2, math.inf, p))
        tag = "upper:rt(2,inf)"
    return NormEstimate(0.0, ub * (1 + ROUND), False, None, [tag])
