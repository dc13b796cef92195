"""Quantum real weighted projective spaces as quotients of O(Sigma_q^3)."""

from .coeff import LaurentPoly, q
from .ncalg import Element, Morphism, Presentation, check_morphism, check_presentation, reduce
from . import algebras, grading

__all__ = [
    "LaurentPoly", "q", "Element", "Morphism", "Presentation",
    "check_morphism", "check_presentation", "reduce", "algebras", "grading",
]
