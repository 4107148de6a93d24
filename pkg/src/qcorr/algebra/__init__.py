"""Exact arithmetic: number fields, polynomials, rational functions, quadratic extensions."""

from .numberfield import RATIONALS, AlgebraicNumber, IncompatibleFields, NumberField, ZeroDivisor
from .poly import RationalFunction, UniPoly, poly_gcd, squarefree_decomposition
from .quadext import QuadExtElement, quadext_derivative

__all__ = [
    "RATIONALS",
    "AlgebraicNumber",
    "IncompatibleFields",
    "NumberField",
    "ZeroDivisor",
    "RationalFunction",
    "UniPoly",
    "poly_gcd",
    "squarefree_decomposition",
    "QuadExtElement",
    "quadext_derivative",
]
