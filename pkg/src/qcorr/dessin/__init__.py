"""Dessins d'enfants as permutation pairs."""

from .core import (
    Dessin,
    DessinError,
    canonical_form,
    find_isomorphism,
    genus_of,
    is_isomorphic,
    passport_of,
)
from .enumerate import MAX_DEGREE, DegreeTooLarge, count_dessins, enumerate_dessins
from .kernels import backend, use_backend
from .lift import (
    BranchCountError,
    InvalidSymmetry,
    LiftError,
    LiftResult,
    ParityObstruction,
    SingularSystem,
    lift_double_cover,
    quotient_by_antisymmetry,
)
from .symmetry import SymmetryReport, classify_symmetries

__all__ = [
    "Dessin", "DessinError", "canonical_form", "find_isomorphism", "genus_of",
    "is_isomorphic", "passport_of", "MAX_DEGREE", "DegreeTooLarge", "count_dessins",
    "enumerate_dessins", "backend", "use_backend", "BranchCountError", "InvalidSymmetry",
    "LiftError", "LiftResult", "ParityObstruction", "SingularSystem", "lift_double_cover",
    "quotient_by_antisymmetry", "SymmetryReport", "classify_symmetries",
]
