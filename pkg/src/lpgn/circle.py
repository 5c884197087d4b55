"""Antipodal points of circle homeomorphisms.

A homeomorphism of S^1 is given by a monotone lift ``h`` on [0, 2pi].  We look
for ``t`` in [0, pi] with ``g(t) = (h(t + pi) - h(t)) / pi = 1``, i.e. a point
whose antipode is mapped to the antipode of its image.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

TWO_PI = 2 * math.pi


class BracketError(RuntimeError):
    """No root of g - 1 was found; the input cannot have been a homeomorphism."""


@dataclass(frozen=True)
class MonotoneCircleMap:
    evaluator: Callable[[float], float]
    orientation: str = "preserving"
    samples: tuple | None = None

    def __post_init__(self):
        if self.orientation not in ("preserving", "reversing"):
            raise ValueError("orientation must be 'preserving' or 'reversing'")

    @classmethod
    def from_samples(cls, ts, hs, orientation: str | None = None) -> "MonotoneCircleMap":
        """Piecewise-linear map through tabulated points ``(ts[i], hs[i])``."""
        ts = np.asarray(ts, dtype=float)
        hs = np.asarray(hs, dtype=float)
        if ts.shape != hs.shape or ts.size < 2:
            raise ValueError("need matching sample arrays of length >= 2")
        if not (np.isclose(ts[0], 0.0) and np.isclose(ts[-1], TWO_PI)) or np.any(np.diff(ts) <= 0):
            raise ValueError("sample abscissae must increase from 0 to 2pi")
        if orientation is None:
            orientation = "preserving" if hs[-1] > hs[0] else "reversing"

        def h(t):
            return np.interp(t, ts, hs)

        return cls(h, orientation, (tuple(ts), tuple(hs)))


def _normalized(hmap: MonotoneCircleMap, scan: int):
    """Return an increasing lift with h(0) = 0, h(2pi) = 2pi, and a flag for reflection."""
    h = hmap.evaluator
    reversed_ = hmap.orientation == "reversing"
    if reversed_:
        def base(t):
            return h(TWO_PI - t)
    else:
        base = h
    h0 = float(base(0.0))

    def lift(t):
        return base(t) - h0

    grid = np.linspace(0.0, TWO_PI, scan + 1)
    vals = np.array([lift(t) for t in grid], dtype=float)
    if not np.all(np.isfinite(vals)) or np.any(np.diff(vals) <= 0):
        raise ValueError("map is not strictly monotone in the declared orientation")
    if not math.isclose(vals[-1], TWO_PI, rel_tol=0, abs_tol=1e-9):
        raise ValueError(f"lift must wind once: h(2pi) - h(0) = {vals[-1]!r}")
    return lift, reversed_


def antipodal_point(hmap: MonotoneCircleMap, tol: float = 1e-10, scan: int = 1024) -> float:
    """A point ``t*`` in [0, pi] with ``|h(t* + pi) - h(t*) - pi| <= tol * pi``.

    Bisection on g - 1 over [0, pi] when the endpoints bracket a sign change;
    otherwise the first strict sign change on a uniform scan; otherwise the
    smallest scan point where ``|g - 1| <= tol``.  Orientation-reversing maps
    are reflected first and the answer mapped back.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    lift, reversed_ = _normalized(hmap, scan)

    def g1(t):
        return (lift(t + math.pi) - lift(t)) / math.pi - 1.0

    lo, hi = 0.0, math.pi
    glo, ghi = g1(lo), g1(hi)
    bracket = None
    if glo * ghi < 0:
        bracket = (lo, hi, glo)
    else:
        ts = np.linspace(0.0, math.pi, scan + 1)
        gs = np.array([g1(t) for t in ts])
        change = np.flatnonzero(gs[:-1] * gs[1:] < 0)
        if change.size:
            i = int(change[0])
            bracket = (ts[i], ts[i + 1], gs[i])
        else:
            close = np.flatnonzero(np.abs(gs) <= tol)
            if not close.size:
                raise BracketError("g - 1 has no sign change and no near-zero on the scan")
            t = float(ts[close[0]])
            return _map_back(t, reversed_)
    lo, hi, glo = bracket
    t = 0.5 * (lo + hi)
    for _ in range(200):
        t = 0.5 * (lo + hi)
        gt = g1(t)
        if (hi - lo) <= tol and abs(gt) <= tol:
            break
        if gt == 0.0:
            break
        if (gt < 0) == (glo < 0):
            lo, glo = t, gt
        else:
            hi = t
    return _map_back(t, reversed_)


def _map_back(t: float, reversed_: bool) -> float:
    # for k(t) = h(2pi - t), an antipodal point t of k gives pi - t for h
    return math.pi - t if reversed_ else t


def antipodal_residual(hmap: MonotoneCircleMap, t: float) -> float:
    """``| |h(t + pi) - h(t)| - pi | / pi`` for the original (unnormalised) map."""
    h = hmap.evaluator
    return abs(abs(float(h(t + math.pi)) - float(h(t))) - math.pi) / math.pi
