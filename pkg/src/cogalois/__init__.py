"""Exact finite-dimensional computations with entwining structures and coalgebra-Galois extensions."""

from .linalg import GF, QQ, Field, LinearMap, Subspace
from .structures import FinAlgebra, FinCoalgebra, Violation, validate, dualize
from .entwining import Entwining, EntwinedModule, HopfAlgebra, validate_entwining
from .galois import Extension, GaloisData, galois_data

__all__ = [
    "GF", "QQ", "Field", "LinearMap", "Subspace",
    "FinAlgebra", "FinCoalgebra", "Violation", "validate", "dualize",
    "Entwining", "EntwinedModule", "HopfAlgebra", "validate_entwining",
    "Extension", "GaloisData", "galois_data",
]
