"""Exact arithmetic: finite fields, polynomials, truncated local rings."""

from .field import GF2, FiniteField
from .local import INFINITE, TruncatedLocalRing, colength
from .mpoly import MPoly
from .parse import parse_mpoly, parse_poly
from .poly import Polynomial

__all__ = [
    "GF2",
    "FiniteField",
    "INFINITE",
    "MPoly",
    "Polynomial",
    "TruncatedLocalRing",
    "colength",
    "parse_mpoly",
    "parse_poly",
]
