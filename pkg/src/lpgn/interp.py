"""Riesz–Thorin bookkeeping: interpolation weights, bounds and log-convexity checks."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

from .exponent import Exponent, as_exponent


@dataclass(frozen=True)
class InterpolationTriple:
    p0: Exponent
    p1: Exponent
    p: Exponent
    theta: float


def theta_for(p0, p1, p) -> float:
    """Weight theta with 1/p = (1 - theta)/p0 + theta/p1."""
    p0, p1, p = as_exponent(p0), as_exponent(p1), as_exponent(p)
    r0, r1, r = p0.reciprocal(), p1.reciprocal(), p.reciprocal()
    if r0 == r1:
        raise ValueError("endpoint exponents must differ")
    lo, hi = min(r0, r1), max(r0, r1)
    if not (lo <= r <= hi):
        raise ValueError(f"1/p = {float(r)} lies outside [{float(lo)}, {float(hi)}]")
    theta = (r - r0) / (r1 - r0)
    return float(theta)


def triple(p0, p1, p) -> InterpolationTriple:
    p0, p1, p = as_exponent(p0), as_exponent(p1), as_exponent(p)
    return InterpolationTriple(p0, p1, p, theta_for(p0, p1, p))


def rt_bound(norm_p0: float, norm_p1: float, theta: float) -> float:
    """Interpolated bound ``norm_p0**(1-theta) * norm_p1**theta``."""
    if norm_p0 < 0 or norm_p1 < 0:
        raise ValueError("norms must be nonnegative")
    if not 0.0 <= theta <= 1.0:
        raise ValueError("theta must lie in [0, 1]")
    if theta == 0.0:
        return float(norm_p0)
    if theta == 1.0:
        return float(norm_p1)
    if norm_p0 == 0.0 or norm_p1 == 0.0:
        return 0.0
    if math.isinf(norm_p0) or math.isinf(norm_p1):
        return math.inf
    return float(norm_p0 ** (1.0 - theta) * norm_p1**theta)


@dataclass(frozen=True)
class Violation:
    p0: Exponent
    p: Exponent
    p1: Exponent
    lower: float
    bound: float

    @property
    def excess(self) -> float:
        return self.lower - self.bound


def check_logconvex(samples, slack: float = 1e-9) -> list[Violation]:
    """Check ``lower(p) <= rt_bound(upper(p0), upper(p1), theta) + slack``.

    ``samples`` is a sequence of ``(exponent, estimate)`` pairs where each
    estimate has ``lower`` and ``upper`` attributes.  Every triple whose middle
    reciprocal lies strictly between the outer two is checked.
    """
    pts = [(as_exponent(p), est) for p, est in samples]
    if len(pts) < 3:
        raise ValueError("need at least three samples")
    recips = [p.reciprocal() for p, _ in pts]
    if len(set(recips)) != len(recips):
        raise ValueError("exponents must be distinct")
    order = sorted(range(len(pts)), key=lambda i: recips[i])
    out = []
    for a, b, c in itertools.combinations(order, 3):
        (p0, e0), (p, e), (p1, e1) = pts[a], pts[b], pts[c]
        theta = theta_for(p0, p1, p)
        bound = rt_bound(e0.upper, e1.upper, theta)
        if e.lower > bound + slack:
            out.append(Violation(p0, p, p1, e.lower, bound))
    return out
