"""Named exact and non-exact complexes shared by the complex tests and the acceptance suite."""

from __future__ import annotations

from syzygetic.complexes import ChainComplex, koszul_complex, power_complex, tensor_complexes
from syzygetic.groebner import Ideal
from syzygetic.modules import FreeModule, ModuleMap, Subquotient
from syzygetic.resolution import free_resolution
from syzygetic.ring import PolyRing, QuotientRing


def one_map(S, rows):
    return ChainComplex.from_maps([ModuleMap.from_matrix(S, rows)])


def exact_fixtures() -> dict:
    """Complexes known to be exact, keyed by a short name."""
    S2 = PolyRing("x y")
    x, y = S2.gens()
    S3 = PolyRing("x y z")
    a, b, c = S3.gens()
    Q = QuotientRing(S2, [x**2])
    cubic = QuotientRing(S3, [a**3 + b**3 + c**3])
    return {
        "koszul(x,y)": koszul_complex([x, y], S2),
        "koszul(x,y,z)": koszul_complex([a, b, c], S3),
        "koszul(x2,y2)": koszul_complex([x**2, y**2], S2),
        "koszul(x+y,z)": koszul_complex([a + b, c], S3),
        "mult-by-x": one_map(S2, [[x]]),
        "power(x,y;2)": power_complex([x, y], 2, S2),
        "power(x,y,z;2)": power_complex([a, b, c], 2, S3),
        "koszul(x)*koszul(y)": tensor_complexes(koszul_complex([x], S2), koszul_complex([y], S2)),
        "res(x2,xy)": free_resolution(Subquotient.cyclic(Ideal(S2, [x**2, x * y])), 3).complex,
        "koszul(y) over k[x,y]/(x2)": koszul_complex([y], Q),
        "koszul(x,y) over cubic": koszul_complex([a, b], cubic),
    }


def non_exact_fixtures() -> dict:
    """Complexes with nonzero homology in some positive degree."""
    S2 = PolyRing("x y")
    x, y = S2.gens()
    S3 = PolyRing("x y z")
    a, b, c = S3.gens()
    F = FreeModule(S2, 1)
    return {
        "koszul(x2,xy)": koszul_complex([x**2, x * y], S2),
        "zero map": ChainComplex.from_maps([ModuleMap.zero(F, F)]),
        "koszul(x) over k[x,y]/(xy)": koszul_complex([x], QuotientRing(S2, [x * y])),
        "koszul(x,y,x+y)": koszul_complex([a, b, a + b], S3),
        "koszul(x,x)": koszul_complex([x, x], S2),
        "row (x y)": one_map(S2, [[x, y]]),
    }
