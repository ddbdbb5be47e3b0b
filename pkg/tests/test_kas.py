from __future__ import annotations

from functools import lru_cache
from itertools import combinations

import pytest
from hypothesis import given, strategies as st

from syzygetic.complexes import koszul_complex, power_complex
from syzygetic.groebner import Ideal, ideal_intersection, ideal_power, ideal_quotient, krull_dimension
from syzygetic.kas import (
    BoundFunctionTable, CohomologyAnnihilators, KASSearchError, certify_candidate, cohomology_annihilators,
    double_annihilator, dth_syzygy_family, e1_bound, e_bound, find_complex_exponent, find_empirical_exponent,
    fromagt_checks, fromagt_complex, fromagt_grid, is_system_of_parameters, kas_candidate,
    kas_complex_annihilation, kas_verify, prescribed_exponent, special_reduction, well_suited_check,
)
from syzygetic.modules import FreeModule, module_intersection
from syzygetic.ring import PolyRing, QuotientRing


# -- bound functions -----------------------------------------------------------------

@lru_cache(maxsize=None)
def E_oracle(d, n, t):
    return d - n + 1 if t == 0 else d + (d + 2) * E_oracle(d, n - 1, t - 1)


@lru_cache(maxsize=None)
def E1_oracle(d, n, t):
    return d - n + 1 if t == 0 else d + (d + 2) * E1_oracle(d - 1, n - 1, t - 1)


def test_bound_examples():
    assert e1_bound(5, 3, 0) == 3
    assert e1_bound(2, 2, 1) == 6
    assert e_bound(2, 2, 1) == 10
    assert prescribed_exponent(2) == 6
    assert prescribed_exponent(1) == 1


@pytest.mark.parametrize("args", [(2, 3, 0), (3, 2, 2), (3, 2, -1), (0, 0, 0)])
def test_bound_arguments_rejected(args):
    with pytest.raises(ValueError):
        e_bound(*args)
    with pytest.raises(ValueError):
        e1_bound(*args)


def test_bound_table():
    tab = BoundFunctionTable.build(7)
    assert not tab.recursion_violations()
    assert tab.e1_exceeds_e() == []
    assert {"delta": 2, "nu": 2, "tau": 1, "E": 10, "E1": 6} in tab.rows()
    for (d, n, t), v in tab.e.items():
        assert v == E_oracle(d, n, t) and tab.e1[(d, n, t)] == E1_oracle(d, n, t)


@given(st.integers(1, 12).flatmap(lambda d: st.tuples(st.just(d), st.integers(1, d)))
       .flatmap(lambda dn: st.tuples(st.just(dn[0]), st.just(dn[1]), st.integers(0, dn[1] - 1))))
def test_bounds_positive_and_match_oracle(args):
    assert e_bound(*args) == E_oracle(*args) > 0
    assert e1_bound(*args) == E1_oracle(*args) > 0
    assert e1_bound(*args) <= e_bound(*args)


# -- cohomology annihilators -------------------------------------------------------------

def local_h0_annihilator(R, top=4):
    """``Ann H^0_m(R)`` computed directly as ``Ann (0 : m^top)`` (no duality)."""
    zero = Ideal(R)
    gens = R.ambient.gens()
    torsion = None
    mons = [m for m in ideal_power(Ideal(R, gens), top).generators]
    for m in mons:
        col = ideal_quotient(zero, m)
        torsion = col if torsion is None else ideal_intersection(torsion, col)
    if torsion.is_zero():
        return Ideal.unit(R)
    out = None
    for g in torsion.generators:
        col = ideal_quotient(zero, g)
        out = col if out is None else ideal_intersection(out, col)
    return out


def test_annihilator_examples(kxy):
    S, (x, y) = kxy
    R = QuotientRing(S, [x**2, x * y])
    anns = cohomology_annihilators(R)
    assert len(anns.a_ideals) == 1 and anns.a_ideals[0].equals(Ideal(R, [x, y]))
    assert anns.certificates["resolution_over_ambient"] == [1, 2, 1, 0]
    assert cohomology_annihilators(QuotientRing(S, [x * y])).a_ideals[0].is_unit()
    regular = cohomology_annihilators(QuotientRing(S, []))
    assert all(a.is_unit() for a in regular.a_ideals) and len(regular.a_ideals) == 2


@pytest.mark.parametrize("defining", ["x^2, x*y", "x^3, x^2*y", "x^2*y, x*y^2", "x*y, x^2"])
def test_a0_matches_direct_local_cohomology(defining):
    S = PolyRing("x y")
    R = QuotientRing(S, [S(g) for g in defining.split(",")])
    anns = cohomology_annihilators(R)
    assert anns.a_ideals[0].equals(local_h0_annihilator(R))


def test_b_chain_certificates(cubic_surface):
    S = PolyRing("x y z w")
    x, y, z, w = S.gens()
    for R in (cubic_surface, QuotientRing(S, [x * z, x * w, y * z, y * w])):
        anns = cohomology_annihilators(R)
        bs = anns.b_ideals
        assert all(bs[k].contains_ideal(bs[k + 1]) for k in range(len(bs) - 1))
        assert all(krull_dimension(b) <= i for i, b in enumerate(bs))
        assert anns.certificates["dimension_bound_holds"] and anns.certificates["descending"]
    two_planes = cohomology_annihilators(QuotientRing(S, [x * z, x * w, y * z, y * w]))
    assert two_planes.a_ideals[0].is_unit()
    assert two_planes.a_ideals[1].equals(Ideal(two_planes.ring, [x, y, z, w]))


def test_syzygy_cohomology_instance(kxy):
    # b_0 kills H^0_m of a first syzygy; for M inside R^r this is M ∩ H^0_m(R)·R^r
    S, (x, y) = kxy
    R = QuotientRing(S, [x**2, x * y])
    b0 = cohomology_annihilators(R).b_ideals[0]
    (_, M), = dth_syzygy_family(R, [Ideal(R, [y**2])])
    torsion = ideal_quotient(Ideal(R), y**3)  # H^0_m(R) = (x)
    assert torsion.equals(Ideal(R, [x]))
    F = M.ambient
    H0 = module_intersection(M, F.full().times_ideal(torsion))
    assert not H0.is_zero()
    for g in H0.generators:
        for b in b0.generators:
            assert all(R.reduce(b * e).is_zero() for e in F.entries(g))


# -- systems of parameters -----------------------------------------------------------------

def test_system_of_parameters_examples(kxy):
    S, (x, y) = kxy
    R = QuotientRing(S, [])
    assert is_system_of_parameters([x, y], R)
    assert not is_system_of_parameters([x, x * y], R)
    assert not is_system_of_parameters([x], R)


def test_well_suited_example(kxy):
    S, (x, y) = kxy
    R = QuotientRing(S, [])
    ok, info = well_suited_check([x + y, x - y], [x, y], R, details=True)
    d = 2
    expected = sum(len(list(combinations(range(d), d - (j - i + 1))))
                   for i in range(1, d + 1) for j in range(i, d + 1))
    assert ok and info["checked"] == expected == 5
    ok, info = well_suited_check([x, x], [x, y], R, details=True)
    assert not ok and info["failures"]
    with pytest.raises(ValueError):
        well_suited_check([x], [x, y], R)


def test_double_annihilator(kxy):
    S, (x, y) = kxy
    R = QuotientRing(S, [x * y])
    assert double_annihilator(R, x).equals(Ideal(R, [x]))
    assert double_annihilator(R, x + y).is_unit()


# -- candidates -----------------------------------------------------------------------------

def test_regular_candidate(kxy):
    S, (x, y) = kxy
    R = QuotientRing(S, [])
    cand = kas_candidate(R, seed=1, degree_bound=1)
    assert cand.d == 2 and all(c.degree() == 1 for c in cand.base_elements)
    assert cand.prescribed_exponent == 6 and cand.exponent == 1
    fixed = cand.with_policy("prescribed")
    assert [c.degree() for c in fixed.elements] == [6, 6]
    assert fixed.content_hash() != cand.content_hash()
    with pytest.raises(ValueError):
        cand.with_policy("other")


def test_depth_zero_candidate(kxy):
    S, (x, y) = kxy
    R = QuotientRing(S, [x**2, x * y])
    cand = kas_candidate(R, seed=3, degree_bound=2)
    (c1,) = cand.elements
    assert Ideal(R, [x, y]).contains(c1)
    assert krull_dimension(Ideal(R, [c1])) == 0


@pytest.mark.parametrize("defining", [[], ["x^2", "x*y"]])
def test_candidate_certificates_reverify(defining):
    S = PolyRing("x y")
    R = QuotientRing(S, [S(g) for g in defining])
    cand = kas_candidate(R, seed=11, degree_bound=2)
    fresh = certify_candidate(QuotientRing(PolyRing("x y"), [PolyRing("x y")(g) for g in defining]),
                              [str(c) for c in cand.elements],
                              cohomology_annihilators(QuotientRing(PolyRing("x y"),
                                                                   [PolyRing("x y")(g) for g in defining])))
    assert fresh["valid"]
    assert fresh == {k: v for k, v in cand.certificates.items() if k != "base"}


def test_candidate_search_failures(kxy):
    S, (x, y) = kxy
    R = QuotientRing(S, [x**2, x * y])
    m2 = ideal_power(Ideal(R, [x, y]), 2)
    too_high = CohomologyAnnihilators(R, [m2], [m2], {})
    with pytest.raises(KASSearchError) as err:
        kas_candidate(R, seed=0, degree_bound=1, anns=too_high)
    assert err.value.certificate["b_min_degree"] == 2
    nilpotent = CohomologyAnnihilators(R, [Ideal(R, [x])], [Ideal(R, [x])], {})
    with pytest.raises(KASSearchError) as err:
        # degree-1 draws are multiples of x, which is nilpotent; degree 2 would give zero
        kas_candidate(R, seed=0, degree_bound=1, retries=4, anns=nilpotent)
    assert err.value.certificate["reason"] == "dimension did not drop"


def test_candidate_deterministic(cubic_surface):
    a = kas_candidate(cubic_surface, seed=8, degree_bound=2)
    b = kas_candidate(cubic_surface, seed=8, degree_bound=2)
    assert a.to_json() == b.to_json() and a.content_hash() == b.content_hash()


# -- verification grids -----------------------------------------------------------------

def test_kas_verify_regular(kxy):
    S, (x, y) = kxy
    R = QuotientRing(S, [])
    cand = kas_candidate(R, seed=2, degree_bound=1)
    mods = dth_syzygy_family(R, [Ideal(R, [x**2, x * y]), Ideal(R, [x, y])])
    rep = kas_verify(cand, mods + [("R", FreeModule(R, 1).full())], t_list=(1, 2), seed=5)
    assert rep["tested"] > 0 and rep["failures"] == []
    assert all(c["k"] <= c["j"] <= c["v"] <= 2 for c in rep["configurations"])
    assert "not verified" in rep["scope"]


def hypersurface_modules(R):
    x, y, z = R.ambient.gens()
    return dth_syzygy_family(R, [Ideal(R, [x, y, z]), Ideal(R, [x, y, z**2])])


def test_hypersurface_modules_are_nonzero(cubic_surface):
    R = cubic_surface
    x, y, z = R.ambient.gens()
    assert [M.minimal_generator_count() for _, M in hypersurface_modules(R)] == [4, 4]
    (_, Z), = dth_syzygy_family(R, [Ideal(R, [x, y])])
    assert Z.is_zero()


def test_kas_verify_hypersurface(cubic_surface):
    R = cubic_surface
    cand = kas_candidate(R, seed=5, degree_bound=2)
    rep = kas_verify(cand, hypersurface_modules(R), t_list=(1, 2), seed=1, n_max=2)
    assert rep["tested"] >= 24 and rep["failures"] == [] and rep["skipped"] == []
    assert find_empirical_exponent(cand, hypersurface_modules(R)[:1]) == 1


def test_kas_verify_skips_bad_prefix(kxy):
    S, (x, y) = kxy
    R = QuotientRing(S, [])
    cand = kas_candidate(R, seed=2, degree_bound=1)
    rep = kas_verify(cand, [("R", FreeModule(R, 1).full())], sops=[[x, x], [cand.c(2)]])
    assert len(rep["skipped"]) == 2 and rep["tested"] == 0


# -- special reductions ---------------------------------------------------------------------

def test_special_reduction_examples(kxy):
    S, (x, y) = kxy
    R = QuotientRing(S, [])
    cand = kas_candidate(R, seed=3, degree_bound=1)
    m = Ideal(R, [x, y])
    rep = special_reduction(m, cand, seed=4)
    assert Ideal(R, rep["elements"]).equals(m)
    assert all(c["reduction_number"] == 0 for c in rep["conditions"])
    assert rep["well_suited"]["failures"] == []
    m2 = ideal_power(m, 2)
    rep = special_reduction(m2, cand, seed=4)
    assert all(e.degree() == 2 for e in rep["elements"])
    assert rep["reduction_of_I"]["reduction_number"] == 1


def test_special_reduction_preconditions(kxy):
    S, (x, y) = kxy
    R = QuotientRing(S, [])
    cand = kas_candidate(R, seed=3, degree_bound=1)
    with pytest.raises(ValueError, match="primary"):
        special_reduction(Ideal(R, [x]), cand, seed=0)
    with pytest.raises(ValueError, match="one degree"):
        special_reduction(Ideal(R, [x, y**2]), cand, seed=0)


# -- annihilation of complexes and the fromAGT items ---------------------------------------

def test_complex_annihilation_examples(kxy):
    S, (x, y) = kxy
    R = QuotientRing(S, [])
    cand = kas_candidate(R, seed=2, degree_bound=1)
    free = FreeModule(R, 1).full()
    rep = kas_complex_annihilation(cand, koszul_complex(cand.elements, R), free, 1)
    assert rep["status"] == "holds"
    rep = kas_complex_annihilation(cand, power_complex([x, y], 2, R), free, 1)
    assert rep["status"] == "holds"
    rep = kas_complex_annihilation(cand, koszul_complex([x**2, x * y], R), free, 1)
    assert rep["status"] == "hypothesis-failure"
    assert rep["hypotheses"]["m_primary"]["2"] is False


def test_complex_exponent_on_hypersurface(cubic_surface):
    R = cubic_surface
    x, y, z = R.ambient.gens()
    cand = kas_candidate(R, seed=5, degree_bound=2)
    xs = [x + 2 * y, y + 3 * z]
    complexes = [fromagt_complex(cand, xs, 1, 2, 1, [1]), fromagt_complex(cand, xs, 2, 2, 2, [])]
    for _, M in hypersurface_modules(R):
        found = find_complex_exponent(cand, complexes, M)
        assert found["t"] is not None and not found["capped"]


def test_fromagt_regular(kxy):
    S, (x, y) = kxy
    R = QuotientRing(S, [])
    cand = kas_candidate(R, seed=2, degree_bound=1)
    free = FreeModule(R, 1).full()
    rep = fromagt_checks(cand, [x, y], free, 1, 2, 2, [1], 1)
    assert rep["pass"] and all(rep[k] for k in ("1", "2", "3", "4"))
    with pytest.raises(ValueError):
        fromagt_checks(cand, [x, y], free, 2, 1, 1, [], 1)
    with pytest.raises(ValueError):
        fromagt_checks(cand, [x, y], free, 1, 2, 1, [], 1)


def test_fromagt_degenerate_colon(cubic_surface):
    R = cubic_surface
    x, y, z = R.ambient.gens()
    cand = kas_candidate(R, seed=5, degree_bound=2)
    (_, M), = hypersurface_modules(R)[:1]
    xs = [x + 2 * y, y + 3 * z]
    assert well_suited_check(xs, cand.elements, R)
    rep = fromagt_checks(cand, xs, M, 2, 2, 1, [], 1)
    # I_2 is m-primary, so the colon is all of M and c_2 M is not inside I_2 M
    assert rep["4"] is None and rep["4_degenerate"] is False
    assert rep["pass"]
    rep = fromagt_checks(cand, xs, M, 1, 2, 2, [1], 1)
    assert rep["4"] is True and rep["pass"]


def test_fromagt_grid_small(cubic_surface):
    R = cubic_surface
    x, y, z = R.ambient.gens()
    cand = kas_candidate(R, seed=5, degree_bound=2)
    xs = [x + 2 * y, y + 3 * z]
    rep = fromagt_grid(cand, xs, hypersurface_modules(R)[:1], n_max=2)
    assert rep["status"] == "pass" and rep["t"] >= 1 and rep["failures"] == []
    assert {(c["j"], c["i"]) for c in rep["cases"]} == {(1, 1), (1, 2), (2, 2)}
