"""Quadratic correspondences between genus 0 and genus 1 Belyi maps.

Subpackages: ``algebra`` (exact number fields and polynomials), ``dessin``
(permutation-pair dessins, enumeration, lifts), ``corpus`` (the catalog).
"""

from .algebra import RATIONALS, NumberField, QuadExtElement, RationalFunction, UniPoly
from .belyi import BelyiMap, q_correspond, verify_belyi, j_invariant
from .dessin import Dessin, enumerate_dessins, lift_double_cover, quotient_by_antisymmetry
from .passport import Partition, Passport, correspondent_passports

__version__ = "0.1.0"

__all__ = [
    "RATIONALS", "NumberField", "QuadExtElement", "RationalFunction", "UniPoly",
    "BelyiMap", "q_correspond", "verify_belyi", "j_invariant", "Dessin",
    "enumerate_dessins", "lift_double_cover", "quotient_by_antisymmetry",
    "Partition", "Passport", "correspondent_passports",
]
