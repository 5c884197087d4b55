"""Hölder exponents in [1, inf] with exact rational arithmetic when available."""

from __future__ import annotations

import math
import numbers
from dataclasses import dataclass
from fractions import Fraction


@dataclass(frozen=True)
class Exponent:
    """An exponent p in [1, inf].

    ``exact`` carries the rational value when the exponent was given as a
    fraction, an integer or a decimal string; conjugation and reciprocal
    arithmetic then stay exact, which matters for tests such as
    ``|1/2 - 1/p| == |1/2 - 1/q|``.
    """

    value: float
    exact: Fraction | None = None

    def __post_init__(self):
        if math.isnan(self.value) or self.value < 1:
            raise ValueError(f"exponent must lie in [1, inf], got {self.value!r}")
        if self.exact is not None and float(self.exact) != self.value:
            raise ValueError("exact and float values disagree")

    @property
    def is_inf(self) -> bool:
        return math.isinf(self.value)

    def reciprocal(self) -> Fraction | float:
        if self.is_inf:
            return Fraction(0)
        if self.exact is not None:
            return 1 / self.exact
        return 1.0 / self.value

    def conjugate(self) -> "Exponent":
        if self.is_inf:
            return Exponent(1.0, Fraction(1))
        if self.value == 1:
            return Exponent(math.inf)
        if self.exact is not None:
            c = 1 / (1 - 1 / self.exact)
            return Exponent(float(c), c)
        return Exponent(self.value / (self.value - 1.0))

    def distance_to_half(self) -> Fraction | float:
        return abs(self.reciprocal() - Fraction(1, 2))

    def __float__(self) -> float:
        return self.value

    def __str__(self) -> str:
        if self.is_inf:
            return "inf"
        if self.exact is not None:
            return str(self.exact)
        return repr(self.value)


def parse_exponent(text: str) -> Exponent:
    """Parse ``"4/3"``, ``"1.5"``, ``"2"`` or ``"inf"``; decimals are read exactly."""
    s = text.strip()
    if s.lower() in ("inf", "infinity", "∞"):
        return Exponent(math.inf)
    try:
        frac = Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"cannot parse exponent {text!r}") from exc
    return Exponent(float(frac), frac)


def as_exponent(p) -> Exponent:
    if isinstance(p, Exponent):
        return p
    if isinstance(p, str):
        return parse_exponent(p)
    if isinstance(p, (Fraction, numbers.Integral)):
        frac = Fraction(p)
        return Exponent(float(frac), frac)
    if isinstance(p, numbers.Real):
        if math.isinf(p):
            return Exponent(math.inf)
        return Exponent(float(p))
    raise TypeError(f"cannot interpret {p!r} as an exponent")
