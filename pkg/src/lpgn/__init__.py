"""Certified operator norms for group L^p-operator algebras of Z_n and Z."""

from .exponent import Exponent, as_exponent, parse_exponent
from .pnorm import NormBudget, NormEstimate, norm_certified

__version__ = "0.1.0"

__all__ = ["Exponent", "as_exponent", "parse_exponent", "NormBudget", "NormEstimate", "norm_certified"]
