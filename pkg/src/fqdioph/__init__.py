"""Exact arithmetic over F_q[t] and F_q((1/t)) for Diophantine approximation experiments."""

from .errors import FqError
from .field import FieldElem, FieldSpec
from .laurent import Laurent
from .lucas import ExponentSet, kstar, maximal_elements, portions, preceq, shadow
from .ordering import NEG_INF, BelowPrecision
from .poly import Poly, RatFunc, factor, gcd
from .upoly import UPoly

__all__ = [
    "BelowPrecision", "ExponentSet", "FieldElem", "FieldSpec", "FqError", "Laurent", "NEG_INF",
    "Poly", "RatFunc", "UPoly", "factor", "gcd", "kstar", "maximal_elements", "portions",
    "preceq", "shadow",
]
__version__ = "0.1.0"
