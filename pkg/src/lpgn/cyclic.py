"""The group algebra F^p(Z_n) realised as circulant matrices on l^p_n.

An element is stored by its convolution coefficients ``f`` (``f[k]`` is the
coefficient of ``s**k`` for the cyclic shift ``s``); its Gelfand coordinates
are ``xi[j] = sum_k f[k] * w**(j*k)`` with ``w = exp(2*pi*i/n)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .exponent import as_exponent
from .pnorm import ROUND, NormBudget, NormEstimate, combine, norm_certified

__all__ = [
    "CyclicElement", "shift_matrix", "dft_matrix", "from_gelfand", "from_coeffs",
    "circulant", "norm", "delta_curve", "delta_closed_form", "shift_auto",
    "inversion_auto", "conj_auto", "classify_isometry", "IsometryClass",
    "gamma_check", "GammaReport", "periodize", "cyclic_convolve",
]


def _dft_kernel(n: int) -> np.ndarray:
    jk = np.outer(np.arange(n), np.arange(n)) % n
    return np.exp(2j * np.pi * jk / n)


def shift_matrix(n: int) -> np.ndarray:
    """Cyclic shift ``s_n``: ones on the subdiagonal and in the top-right corner."""
    if n < 1:
        raise ValueError("n must be positive")
    return np.roll(np.eye(n, dtype=complex), 1, axis=0)


def dft_matrix(n: int) -> np.ndarray:
    """Unitary ``u_n`` with entries ``w**(j*k) / sqrt(n)``."""
    if n < 1:
        raise ValueError("n must be positive")
    return _dft_kernel(n) / math.sqrt(n)


@dataclass(frozen=True, eq=False)
class CyclicElement:
    n: int
    coeffs: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.coeffs, dtype=complex).reshape(-1)
        if self.n < 1 or c.shape != (self.n,):
            raise ValueError(f"expected {self.n} coefficients, got {c.shape}")
        if not np.all(np.isfinite(c)):
            raise ValueError("coefficients must be finite")
        object.__setattr__(self, "coeffs", c)

    @cached_property
    def gelfand(self) -> np.ndarray:
        # direct O(n^2) sum; n stays small
        return _dft_kernel(self.n) @ self.coeffs

    def matrix(self) -> np.ndarray:
        return circulant(self.coeffs)

    def __mul__(self, other: "CyclicElement") -> "CyclicElement":
        return CyclicElement(self.n, cyclic_convolve(self.coeffs, other.coeffs))


def from_coeffs(n: int, f) -> CyclicElement:
    return CyclicElement(n, np.asarray(f, dtype=complex))


def from_gelfand(n: int, xi) -> CyclicElement:
    xi = np.asarray(xi, dtype=complex).reshape(-1)
    if xi.shape != (n,):
        raise ValueError(f"expected {n} Gelfand coordinates, got {xi.shape}")
    coeffs = _dft_kernel(n).conj() @ xi / n
    x = CyclicElement(n, coeffs)
    # keep the caller's values rather than a round-tripped copy
    x.__dict__["gelfand"] = xi.copy()
    return x


def circulant(f) -> np.ndarray:
    """Matrix of ``sum_k f[k] s**k``, i.e. ``C[j, m] = f[(j - m) % n]``."""
    f = np.asarray(f, dtype=complex)
    n = f.shape[0]
    idx = (np.arange(n)[:, None] - np.arange(n)[None, :]) % n
    return f[idx]


def cyclic_convolve(f, g) -> np.ndarray:
    f, g = np.asarray(f, dtype=complex), np.asarray(g, dtype=complex)
    return circulant(f) @ g


def norm(x: CyclicElement, p, budget: NormBudget | None = None) -> NormEstimate:
    """Certified norm of ``x`` in F^p(Z_n), p in [1, inf)."""
    p = as_exponent(p)
    if p.is_inf:
        raise ValueError("group algebras use p in [1, inf)")
    C = x.matrix()
    est = norm_certified(C, p, budget)
    if p.value == 2.0:
        sup = float(np.abs(x.gelfand).max())
        est = combine([est, NormEstimate(sup * (1 - ROUND), sup * (1 + ROUND), True, est.lower_witness,
                                         ["exact:gelfand-sup"])])
    return est


def delta_closed_form(t) -> float:
    t = as_exponent(t)
    return 2.0 ** abs(1.0 / t.value - 0.5)


def delta_curve(ts, budget: NormBudget | None = None) -> list[tuple]:
    """Certified ``||(1, i)||`` in F^t(Z_2) for each t."""
    x = from_gelfand(2, [1, 1j])
    return [(t, norm(x, t, budget)) for t in ts]


def shift_auto(x: CyclicElement) -> CyclicElement:
    """Gelfand coordinates rotated forward: (xi_{n-1}, xi_0, ..., xi_{n-2})."""
    return from_gelfand(x.n, np.roll(x.gelfand, 1))


def inversion_auto(x: CyclicElement) -> CyclicElement:
    """Group inversion: ``xi_j -> xi_{-j mod n}``, equivalently ``f(k) -> f(-k)``."""
    return from_gelfand(x.n, x.gelfand[(-np.arange(x.n)) % x.n])


def conj_auto(x: CyclicElement) -> CyclicElement:
    return from_gelfand(x.n, np.conj(x.gelfand))


@dataclass(frozen=True)
class IsometryClass:
    is_isometry: bool
    zeta: complex | None = None
    k: int | None = None


def classify_isometry(x: CyclicElement, p, tol: float = 1e-9) -> IsometryClass:
    """Decide whether ``x`` is an invertible isometry of F^p(Z_n) for p != 2.

    For p != 2 these are exactly the Gelfand vectors
    ``(zeta, zeta*w**k, ..., zeta*w**(k*(n-1)))``; this is a pattern match
    within ``tol`` in the sup norm, no norm is computed.
    """
    p = as_exponent(p)
    if p.value == 2.0:
        raise ValueError("at p = 2 every unimodular Gelfand vector is an isometry")
    if p.is_inf:
        raise ValueError("group algebras use p in [1, inf)")
    xi = x.gelfand
    n = x.n
    r0 = abs(xi[0])
    if abs(r0 - 1.0) > tol:
        return IsometryClass(False)
    zeta = complex(xi[0] / r0)
    k = 0
    if n > 1:
        k = int(round(np.angle(xi[1] / xi[0]) * n / (2 * np.pi))) % n
    pattern = zeta * np.exp(2j * np.pi * k * np.arange(n) / n)
    if np.abs(xi - pattern).max() > tol:
        return IsometryClass(False)
    return IsometryClass(True, zeta, k)


def isometry_distance(xi) -> float:
    """Sup-norm distance from ``xi`` to the set of classified isometries."""
    xi = np.asarray(xi, dtype=complex)
    n = xi.shape[0]
    best = math.inf
    j = np.arange(n)
    for k in range(n):
        # residual phases after removing the character; the optimal zeta
        # minimises the largest chord to those points on the circle
        v = xi * np.exp(-2j * np.pi * k * j / n)
        angles = np.linspace(0, 2 * np.pi, 2048, endpoint=False)
        d = np.abs(v[None, :] - np.exp(1j * angles)[:, None]).max(axis=1)
        a0 = angles[int(np.argmin(d))]
        fine = a0 + np.linspace(-np.pi / 1024, np.pi / 1024, 257)
        d2 = np.abs(v[None, :] - np.exp(1j * fine)[:, None]).max(axis=1)
        best = min(best, float(d2.min()))
    return best


@dataclass(frozen=True)
class GammaReport:
    p: float
    q: float
    norm_p: NormEstimate
    norm_q: NormEstimate
    slack: float

    @property
    def ok(self) -> bool:
        return self.norm_q.lower <= self.norm_p.upper + self.slack


def gamma_check(x: CyclicElement, p, q, budget: NormBudget | None = None, slack: float = 1e-9) -> GammaReport:
    """Check the contraction ``||x||_q <= ||x||_p`` for 1 <= p <= q <= 2."""
    p, q = as_exponent(p), as_exponent(q)
    if not 1.0 <= p.value <= q.value <= 2.0:
        raise ValueError("need 1 <= p <= q <= 2")
    return GammaReport(p.value, q.value, norm(x, p, budget), norm(x, q, budget), slack)


def periodize(f, n: int) -> CyclicElement:
    """Push a finitely supported kernel on Z down to Z_n: sum over residues."""
    if n < 1:
        raise ValueError("n must be positive")
    coeffs = np.zeros(n, dtype=complex)
    for k, v in f.items():
        coeffs[k % n] += v
    return CyclicElement(n, coeffs)
