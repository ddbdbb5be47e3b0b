from __future__ import annotations

import pytest
from hypothesis import given, strategies as st

from syzygetic.groebner import (
    Ideal, groebner_basis, hilbert_function, ideal_intersection, ideal_membership, ideal_power,
    ideal_quotient, krull_dimension, length, saturation,
)
from syzygetic.ring import GF, HomogeneityError, PolyRing

from oracles import exponents_of_degree, poly_dict, quotient_hilbert_function


def gens_set(polys):
    return {str(p) for p in polys}


def test_groebner_examples(kxy):
    S, (x, y) = kxy
    assert gens_set(groebner_basis(Ideal(S, [x**2, x * y]))) == {"x^2", "x*y"}
    gb = groebner_basis(Ideal(S, [x**2 + y**2, x * y]))
    assert len(gb) == 3
    assert Ideal(S, gb).equals(Ideal(S, [x**2 + y**2, x * y, y**3]))
    assert y**3 in gb
    assert groebner_basis(Ideal(S, [x])) == [x]


def test_groebner_basis_deterministic(kxyz):
    S, (x, y, z) = kxyz
    gens = [x**2 - y * z, x * y - z**2, y**3]
    assert groebner_basis(Ideal(S, gens)) == groebner_basis(Ideal(S, gens))


def test_membership_examples(kxy):
    S, (x, y) = kxy
    I = Ideal(S, [x**2, x * y])
    assert ideal_membership(x**2 * y, I)
    assert not ideal_membership(y, I)
    assert ideal_membership(x**2 + x * y, I)
    with pytest.raises(ValueError):
        ideal_membership(PolyRing("a b").gens()[0], I)


def test_intersection_examples(kxy):
    S, (x, y) = kxy
    assert ideal_intersection(Ideal(S, [x]), Ideal(S, [y])).equals(Ideal(S, [x * y]))
    m2 = ideal_power(Ideal(S, [x, y]), 2)
    assert ideal_intersection(m2, Ideal(S, [x])).equals(Ideal(S, [x**2, x * y]))
    I = Ideal(S, [x**2 + y**2, x * y])
    assert ideal_intersection(I, I).equals(I)


def test_quotient_and_saturation_examples(kxy):
    S, (x, y) = kxy
    assert ideal_quotient(Ideal(S, [x**2 * y]), y).equals(Ideal(S, [x**2]))
    assert saturation(Ideal(S, [x**2 * y]), y).equals(Ideal(S, [x**2]))
    assert ideal_quotient(Ideal(S, [x**2, x * y]), x).equals(Ideal(S, [x, y]))
    with pytest.raises(ValueError):
        ideal_quotient(Ideal(S, [x]), S.zero())


def test_saturation_needs_several_steps(kxy):
    S, (x, y) = kxy
    I = Ideal(S, [x**3 * y**2])
    assert ideal_quotient(I, y).equals(Ideal(S, [x**3 * y]))
    assert saturation(I, y).equals(Ideal(S, [x**3]))


def test_dimension_examples(kxy):
    S, (x, y) = kxy
    assert krull_dimension(Ideal(S, [x * y])) == 1
    assert krull_dimension(Ideal(S, [x, y])) == 0
    assert krull_dimension(Ideal(S, [x**2, x * y])) == 1
    assert krull_dimension(Ideal(S, [])) == 2
    assert krull_dimension(Ideal.unit(S)) == -1


def test_power_examples(kxy):
    S, (x, y) = kxy
    assert ideal_power(Ideal(S, [x, y]), 2).equals(Ideal(S, [x**2, x * y, y**2]))
    assert ideal_power(Ideal(S, [x]), 3).equals(Ideal(S, [x**3]))
    assert ideal_power(Ideal(S, [x**2, y**2]), 2).equals(Ideal(S, [x**4, x**2 * y**2, y**4]))
    I = Ideal(S, [x**2 + y**2, x * y])
    assert ideal_power(I, 1).equals(I)


def test_hilbert_examples(kxy):
    S, (x, y) = kxy
    assert hilbert_function(ideal_power(Ideal(S, [x, y]), 2), range(4)) == [1, 2, 0, 0]
    assert hilbert_function(Ideal(S, []), range(3)) == [1, 2, 3]
    assert hilbert_function(Ideal(S, [x * y]), range(4)) == [1, 2, 2, 2]
    assert length(ideal_power(Ideal(S, [x, y]), 2)) == 3
    assert length(Ideal(S, [x * y])) is None
    with pytest.raises(HomogeneityError):
        hilbert_function(Ideal(S, [x + y**2]), range(3))


def test_quotient_ring_ideals(cubic_surface):
    R = cubic_surface
    x, y, z = R.ambient.gens()
    m = Ideal(R, [x, y, z])
    assert krull_dimension(Ideal(R, [])) == 2
    assert krull_dimension(Ideal(R, [x])) == 1
    assert hilbert_function(Ideal(R, []), range(5)) == [1, 3, 6, 9, 12]
    assert ideal_membership(x**3, Ideal(R, [y, z]))
    assert length(ideal_power(m, 2)) == 4


# -- properties -----------------------------------------------------------------------

P = 101
S3 = PolyRing("x y z", GF(P))


@st.composite
def homogeneous_poly(draw, max_degree=3):
    d = draw(st.integers(1, max_degree))
    mons = exponents_of_degree(3, d)
    chosen = draw(st.lists(st.sampled_from(mons), min_size=1, max_size=3, unique=True))
    coeffs = draw(st.lists(st.integers(1, P - 1), min_size=len(chosen), max_size=len(chosen)))
    return sum((S3.monomial(e, c) for e, c in zip(chosen, coeffs)), S3.zero())


ideals = st.lists(homogeneous_poly(), min_size=1, max_size=3).map(lambda g: Ideal(S3, g))


@given(ideals, ideals)
def test_intersection_bounds(I, J):
    K = ideal_intersection(I, J)
    assert I.contains_ideal(K) and J.contains_ideal(K)
    assert K.contains_ideal(I * J)


@given(ideals, homogeneous_poly())
def test_quotient_times_f_in_ideal(I, f):
    Q = ideal_quotient(I, f)
    assert Q.contains_ideal(I)
    assert all(I.contains(g * f) for g in Q.generators)
    assert saturation(I, f).contains_ideal(Q)


@given(ideals, st.integers(1, 3))
def test_dimension_of_powers(I, n):
    assert krull_dimension(ideal_power(I, n)) == krull_dimension(I)


@given(ideals)
def test_hilbert_function_matches_linear_algebra(I):
    degrees = range(6)
    oracle = quotient_hilbert_function([poly_dict(g) for g in I.generators], 3, degrees, P)
    assert hilbert_function(I, degrees) == oracle


@given(ideals)
def test_hilbert_function_eventually_polynomial(I):
    dim = krull_dimension(I)
    values = hilbert_function(I, range(10, 18))
    diffs = values
    for _ in range(max(dim - 1, 0)):
        diffs = [b - a for a, b in zip(diffs, diffs[1:])]
    # polynomial of degree dim - 1: its (dim-1)-th difference is the positive multiplicity
    assert len(set(diffs)) == 1
    if dim >= 1:
        assert diffs[0] > 0
    else:
        assert diffs[0] == 0


@given(ideals)
def test_groebner_basis_generates_same_ideal(I):
    gb = groebner_basis(I)
    J = Ideal(S3, gb)
    assert J.contains_ideal(I) and I.contains_ideal(J)
    assert all(I.contains(g) for g in gb)
