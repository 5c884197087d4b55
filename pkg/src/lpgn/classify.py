"""Representability of group L^p-operator algebras on L^q-spaces.

``representable`` and ``isomorphic_group_algebras`` encode the classification
verbatim and do no numerics.  ``witness_search`` is the numerical side: it
looks for an element of F(Z_n) whose norms at p and q are certifiably
different, which rules out the canonical identification.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import cyclic
from ._parallel import parallel_map
from .exponent import Exponent, as_exponent
from .pnorm import NormBudget, NormEstimate

FLOAT_TOL = 1e-15


class OutOfScopeError(ValueError):
    """Inputs outside the hypotheses of the classification."""


@dataclass(frozen=True)
class GroupDescriptor:
    kind: str  # "trivial", "cyclic" or "integers"
    n: int | None = None
    abelian: bool = True

    def __post_init__(self):
        if self.kind not in ("trivial", "cyclic", "integers"):
            raise ValueError(f"unknown group kind {self.kind!r}")
        if self.kind == "cyclic" and (self.n is None or self.n < 2):
            raise ValueError("cyclic groups need n >= 2; use the trivial group for n = 1")

    @classmethod
    def trivial(cls) -> "GroupDescriptor":
        return cls("trivial")

    @classmethod
    def cyclic(cls, n: int) -> "GroupDescriptor":
        return cls("cyclic", n)

    @classmethod
    def integers(cls) -> "GroupDescriptor":
        return cls("integers")

    @classmethod
    def parse(cls, text: str) -> "GroupDescriptor":
        s = text.strip()
        if s.lower() in ("trivial", "1", "z1", "z_1"):
            return cls.trivial()
        if s in ("Z", "z", "integers"):
            return cls.integers()
        m = re.fullmatch(r"[Zz]_?(\d+)", s)
        if m:
            n = int(m.group(1))
            return cls.trivial() if n == 1 else cls.cyclic(n)
        raise ValueError(f"cannot parse group {text!r}; use Z, Zn (n >= 1) or trivial")

    @property
    def is_trivial(self) -> bool:
        return self.kind == "trivial"

    def __str__(self) -> str:
        return {"trivial": "trivial", "integers": "Z"}.get(self.kind, f"Z{self.n}")


def _same_distance(p: Exponent, q: Exponent) -> bool:
    dp, dq = p.distance_to_half(), q.distance_to_half()
    if isinstance(dp, Fraction) and isinstance(dq, Fraction):
        return dp == dq
    return abs(float(dp) - float(dq)) <= FLOAT_TOL


def _check_group_exponent(p: Exponent):
    if p.is_inf:
        raise OutOfScopeError("group algebra exponents lie in [1, inf)")


def representable(G: GroupDescriptor, p, q) -> bool:
    """Whether F^p(G) is isometrically representable on an L^q-space (q > 1)."""
    p, q = as_exponent(p), as_exponent(q)
    _check_group_exponent(p)
    _check_group_exponent(q)
    if q.value <= 1.0:
        raise OutOfScopeError("the classification needs q > 1; q = 1 is not covered")
    return G.is_trivial or _same_distance(p, q) or (p.value == 2.0 and G.abelian)


def isomorphic_group_algebras(G: GroupDescriptor, p, q) -> bool:
    """Whether F^p(G) and F^q(G) are isometrically isomorphic."""
    p, q = as_exponent(p), as_exponent(q)
    _check_group_exponent(p)
    _check_group_exponent(q)
    return G.is_trivial or _same_distance(p, q)


@dataclass
class Witness:
    group: GroupDescriptor
    element: "cyclic.CyclicElement"
    p: Exponent
    q: Exponent
    norm_p: NormEstimate
    norm_q: NormEstimate

    @property
    def gap_lower(self) -> float:
        """Certified lower bound on ``| ||x||_p - ||x||_q |``."""
        return max(0.0, self.norm_p.lower - self.norm_q.upper, self.norm_q.lower - self.norm_p.upper)

    @property
    def gap_mid(self) -> float:
        return abs(self.norm_p.midpoint - self.norm_q.midpoint)

    def to_dict(self) -> dict:
        xi = self.element.gelfand
        f = self.element.coeffs
        return {
            "schema": "1",
            "group": str(self.group),
            "p": str(self.p),
            "q": str(self.q),
            "gelfand": [[float(z.real), float(z.imag)] for z in xi],
            "coeffs": [[float(z.real), float(z.imag)] for z in f],
            "norm_p": {"lower": self.norm_p.lower, "upper": self.norm_p.upper},
            "norm_q": {"lower": self.norm_q.lower, "upper": self.norm_q.upper},
            "gap_lower": self.gap_lower,
        }


def canonical_candidates(n: int) -> list[np.ndarray]:
    j = np.arange(n)
    alt = np.where(j % 2 == 0, 1.0, 1j)
    return [1j**j, alt.astype(complex)]


def witness_search(G: GroupDescriptor, p, q, trials: int = 32, seed: int = 0,
                   budget: NormBudget | None = None, unimodular: bool = True,
                   screen_budget: NormBudget | None = None, certify_top: int = 3) -> Witness:
    """Search F(Z_n) for an element separating the p- and q-norms.

    Candidates are the patterns ``xi_j = i**j`` and ``(1, i, 1, i, ...)`` plus
    ``trials`` seeded random Gelfand vectors (unimodular unless
    ``unimodular=False``).  All are ranked by a cheap estimate of the gap;
    the best ``certify_top`` are recomputed with ``budget`` and the one with
    the largest certified gap is returned.  A zero gap is reported, not raised.
    """
    p, q = as_exponent(p), as_exponent(q)
    if G.kind != "cyclic":
        raise ValueError("witness search is implemented for finite cyclic groups Zn, n >= 2")
    if isomorphic_group_algebras(G, p, q):
        raise ValueError(
            f"|1/2 - 1/p| = |1/2 - 1/q| holds for p={p}, q={q}: "
            "the algebras are isometrically isomorphic, no witness exists")
    n = G.n
    rng = np.random.default_rng(seed)
    cands = canonical_candidates(n)
    for _ in range(trials):
        if unimodular:
            cands.append(np.exp(2j * np.pi * rng.random(n)))
        else:
            cands.append(rng.standard_normal(n) + 1j * rng.standard_normal(n))
    screen = screen_budget or NormBudget(starts=2, max_iter=100, tol=1e-10, max_rounds=12, cert_rtol=1e-6)

    def evaluate(xi, b):
        x = cyclic.from_gelfand(n, xi)
        return Witness(G, x, p, q, cyclic.norm(x, p, b), cyclic.norm(x, q, b))

    screened = parallel_map(lambda xi: evaluate(xi, screen), cands)
    order = sorted(range(len(cands)), key=lambda i: (-screened[i].gap_mid, i))[:certify_top]
    final = parallel_map(lambda i: evaluate(cands[i], budget), order)
    best = max(range(len(final)), key=lambda i: (final[i].gap_lower, -i))
    return final[best]
