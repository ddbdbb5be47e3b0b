"""Graded commutative algebra toolkit: Gröbner bases, modules, complexes and resolutions,
Artin-Rees numbers and Koszul annihilating sequences over exact fields."""

__version__ = "0.1.0"

from .ring import GF, QQ, Field, PolyRing, Polynomial, QuotientRing, parse_polynomial
from .groebner import Ideal, groebner_basis, ideal_intersection, ideal_quotient, krull_dimension
from .modules import FreeModule, ModuleMap, Subquotient
from .complexes import ChainComplex, homology, koszul_complex
from .resolution import free_resolution, syzygy_module, tor

__all__ = [
    "GF", "QQ", "Field", "PolyRing", "Polynomial", "QuotientRing", "parse_polynomial",
    "Ideal", "groebner_basis", "ideal_intersection", "ideal_quotient", "krull_dimension",
    "FreeModule", "ModuleMap", "Subquotient",
    "ChainComplex", "homology", "koszul_complex",
    "free_resolution", "syzygy_module", "tor",
]
