from __future__ import annotations

import json

import pytest
from hypothesis import given, strategies as st

from syzygetic.artin_rees import (
    FAMILY_LABEL, NOT_COMPUTED, artin_rees_number, main_reduction_check, reduction_certificate,
    reduction_number, seeded_ideal_family, syzygetic_ar, uniform_sweep, weak_containment_holds,
)
from syzygetic.groebner import Ideal, groebner_basis, ideal_power
from syzygetic.modules import FreeModule, Subquotient
from syzygetic.resolution import free_resolution, torUAR_crosscheck
from syzygetic.ring import GF, PolyRing

from oracles import exponents_of_degree, monomial_reduction_number, poly_dict


def cyclic(S, gens):
    return Subquotient.cyclic(Ideal(S, gens))


def test_ar_number_examples(kxy):
    S, (x, y) = kxy
    F = FreeModule(S, 1)
    m = Ideal(S, [x, y])
    res = artin_rees_number(Subquotient(F, [[x]]), F, m, 6)
    assert res.h_weak == 1
    assert all(res.t_values[n] == 1 for n in range(1, 7))
    assert artin_rees_number(F.full(), F, m, 6).h_weak == 0
    zero = artin_rees_number(Subquotient(F, []), F, m, 6)
    assert zero.h_weak == 0 and zero.h_strong == 0


def test_ar_number_strong_at_least_weak(kxy):
    S, (x, y) = kxy
    F = FreeModule(S, 1)
    res = artin_rees_number(Subquotient(F, [[x**2], [y**3]]), F, Ideal(S, [x, y]), 6)
    assert res.h_strong >= res.h_weak
    weak_only = artin_rees_number(Subquotient(F, [[x**2], [y**3]]), F, Ideal(S, [x, y]), 6, strong=False)
    assert weak_only.h_strong == NOT_COMPUTED
    assert weak_only.to_json()["h_strong"] == NOT_COMPUTED


def test_ar_number_rejects_bad_input(kxy):
    S, (x, y) = kxy
    F = FreeModule(S, 1)
    B = Subquotient(F, [[x]])
    with pytest.raises(ValueError):
        artin_rees_number(Subquotient(F, [[y]]), B, Ideal(S, [x]), 3)
    with pytest.raises(ValueError):
        artin_rees_number(B, F, Ideal(S, [x]), 0)


def test_syzygetic_ar_examples(kxy):
    S, (x, y) = kxy
    m = Ideal(S, [x, y])
    assert syzygetic_ar(cyclic(S, [x, y]), m, [2], 6)[2].h_weak == 0
    assert syzygetic_ar(cyclic(S, [x**2, y**2]), m, [2], 6)[2].h_weak == 0
    # the Koszul example: the number is at least t (here exactly t)
    hs = [syzygetic_ar(cyclic(S, [x**t, y**t]), m, [0], 8)[0].h_weak for t in (2, 3, 4)]
    assert hs == [2, 3, 4]


def test_reduction_number_examples(kxy):
    S, (x, y) = kxy
    m2 = Ideal(S, [x**2, x * y, y**2])
    assert reduction_number(Ideal(S, [x**2, y**2]), m2) == 1
    assert reduction_number(m2, m2) == 0
    m3 = ideal_power(Ideal(S, [x, y]), 3)
    assert reduction_number(Ideal(S, [x**3, y**3]), m3) == 1
    n3 = [(3, 0), (2, 1), (1, 2), (0, 3)]
    assert monomial_reduction_number([(3, 0), (0, 3)], n3, 2) == 1
    with pytest.raises(ValueError):
        reduction_number(Ideal(S, [x]), Ideal(S, [y]))


def test_reduction_number_exceeds_window(kxy):
    S, (x, y) = kxy
    cert = reduction_certificate(Ideal(S, [x**2]), Ideal(S, [x**2, y**2]), k_max=4)
    assert cert["reduction_number"] == "exceeds-window"
    assert cert["consequences_hold"] is None


def test_reduction_consequences(kxy):
    S, (x, y) = kxy
    cert = reduction_certificate(Ideal(S, [x**2, y**2]), Ideal(S, [x**2, x * y, y**2]), window=5)
    assert cert["consequences_hold"] and set(cert["consequences"]) == {"1", "2", "3", "4", "5"}


def test_main_reduction_examples(kxy):
    S, (x, y) = kxy
    res = free_resolution(cyclic(S, [x, y]), 3)
    N, G = res.image(1), res.free_module(1)
    assert main_reduction_check(N, G, [x, y], 0, 4, 2)
    assert main_reduction_check(N, G, [x, y], 1, 4, 2)
    ok, info = main_reduction_check(N, G, [x, y], 0, 4, 0, details=True)
    assert not ok
    w = [S(e) for e in info["witness"]]
    # the witness lies in m^4 G ∩ N but not in the right-hand side
    assert N.contains(w)
    m4 = ideal_power(Ideal(S, [x, y]), 4)
    assert all(m4.contains(e) for e in w)
    right = Subquotient(G, list(N.times_ideal(m4).generators) + [[x**4 * e for e in G.entries(g)]
                                                                 for g in N.generators])
    assert not right.contains(w)
    # h = n makes the right side all of N
    assert main_reduction_check(N, G, [x, y], 0, 3, 3)
    with pytest.raises(ValueError):
        main_reduction_check(N, G, [x, y], 2, 4, 2)


def test_main_reduction_degenerate_chain(kxy):
    S, (x, y) = kxy
    F = FreeModule(S, 1)
    A = Subquotient(F, [[x]])
    # with x_seq = (x, x) both ideals of the chain are (x); the right side then contains
    # (x)^{n-h} F ∩ A, which contains the left side for every h
    for h in range(0, 4):
        assert main_reduction_check(A, F, [x, x], 0, 3, h)
    # a genuine chain (x) ⊆ (x, y) against A = (y)
    B = Subquotient(F, [[y]])
    assert not main_reduction_check(B, F, [x, y], 0, 3, 0)


def test_sweep_examples(kxy):
    S, (x, y) = kxy
    mods = [(f"R/{g}", cyclic(S, g)) for g in ([x, y], [x**2, y**2], [x**2, x * y, y**2])]
    ids = [(str(g), Ideal(S, g)) for g in ([x, y], [x**2, y**2], [x, y**2])]
    rep = uniform_sweep(mods, ids, i_min=2, n_max=6)
    assert rep.max_h == 0 and rep.label == FAMILY_LABEL
    assert rep.max_h == max(c["h_weak"] for c in rep.cases)
    low = uniform_sweep(mods, ids, i_min=0, i_max=1, n_max=6)
    assert low.max_h == max(c["h_weak"] for c in low.cases) == 2
    single = uniform_sweep(mods[:1], ids[:1], i_min=0, i_max=0, n_max=4)
    assert len(single.cases) == 1 and single.max_h == single.cases[0]["h_weak"]
    assert uniform_sweep(mods, ids, i_min=5, n_max=3).max_h == 0
    with pytest.raises(ValueError):
        uniform_sweep([], ids)


def test_sweep_determinism(cubic_surface):
    R = cubic_surface
    x, y, z = R.ambient.gens()
    mods = [("R/m", cyclic(R, [x, y, z]))]
    runs = []
    for _ in range(2):
        ids = seeded_ideal_family(R, 3, seed=99)
        runs.append(json.dumps(uniform_sweep(mods, ids, n_max=3, seed=99).to_json(), sort_keys=True))
    assert runs[0] == runs[1]


def test_sweep_consistent_with_tor(kxy):
    S, (x, y) = kxy
    M = cyclic(S, [x**2, x * y])
    I = Ideal(S, [x, y**2])
    for i in (1, 2):
        for n in (1, 2, 3):
            assert torUAR_crosscheck(M, I, i, n)


# -- properties -----------------------------------------------------------------------

S2 = PolyRing("x y", GF(101))
_mon2 = st.sampled_from([e for d in (1, 2, 3) for e in exponents_of_degree(2, d)])
_mon_ideal = st.lists(_mon2, min_size=1, max_size=3, unique=True)


def _exps(I):
    return [next(iter(poly_dict(g))) for g in I.generators]


@given(_mon_ideal, st.data())
def test_reduction_number_matches_monomial_oracle(gens, data):
    I = Ideal(S2, [S2.monomial(e) for e in gens]).minimal_generators()
    Ie = _exps(I)
    Je = data.draw(st.lists(st.sampled_from(Ie), min_size=1, unique=True))
    J = Ideal(S2, [S2.monomial(e) for e in Je])
    got = reduction_number(J, I, k_max=4)
    want = monomial_reduction_number(Je, Ie, 2, k_max=4)
    assert got == ("exceeds-window" if want is None else want)


@given(_mon_ideal, st.data())
def test_reduction_number_zero_iff_equal(gens, data):
    I = Ideal(S2, [S2.monomial(e) for e in gens]).minimal_generators()
    Je = data.draw(st.lists(st.sampled_from(_exps(I)), min_size=1, unique=True))
    J = Ideal(S2, [S2.monomial(e) for e in Je])
    same = groebner_basis(J) == groebner_basis(I)
    assert (reduction_number(J, I, k_max=4) == 0) == same


@given(_mon_ideal, _mon_ideal)
def test_weak_containment_monotone_in_h(a_gens, i_gens):
    F = FreeModule(S2, 1)
    A = Subquotient(F, [[S2.monomial(e)] for e in a_gens])
    I = Ideal(S2, [S2.monomial(e) for e in i_gens])
    res = artin_rees_number(A, F, I, 4, strong=False)
    for n in range(1, 5):
        holds = [weak_containment_holds(A, F, I, n, h) for h in range(0, n + 1)]
        assert holds[-1]
        assert all(b for a, b in zip(holds, holds[1:]) if a)
        assert holds.index(True) == res.t_values[n]
