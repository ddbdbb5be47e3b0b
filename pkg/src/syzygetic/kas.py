"""Bound functions, cohomology annihilators, Koszul annihilating sequences.

Local cohomology annihilators are computed through graded duality: the
annihilator of ``H^i_m(R)`` equals that of ``Ext_S^{D-i}(R, S)`` where ``S`` is
the ambient polynomial ring in ``D`` variables.  Prime avoidance is replaced by
random draws that are accepted only with exact dimension certificates.
"""

from __future__ import annotations

import hashlib
import json
import random
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Sequence

from . import _vectors as V
from .artin_rees import reduction_certificate
from .complexes import (
    ChainComplex, koszul_complex, power_complex,
    rank_profile, tensor_complexes, tensor_homology,
)
from .groebner import Ideal, ideal_intersection, ideal_power, ideal_quotient, krull_dimension
from .modules import Subquotient, colon_capture, module_intersection
from .resolution import free_resolution, syzygy_module, tor
from .ring import Polynomial, QuotientRing

T_CAP = 16


# -- bound functions ---------------------------------------------------------------

def _check_args(delta: int, nu: int, tau: int):
    if not (isinstance(delta, int) and isinstance(nu, int) and isinstance(tau, int)):
        raise TypeError("bound arguments must be integers")
    if not delta >= nu > tau >= 0:
        raise ValueError(f"need delta >= nu > tau >= 0, got ({delta}, {nu}, {tau})")


@lru_cache(maxsize=None)
def _e(delta: int, nu: int, tau: int) -> int:
    if tau == 0:
        return delta - nu + 1
    return delta + (delta + 2) * _e(delta, nu - 1, tau - 1)


@lru_cache(maxsize=None)
def _e1(delta: int, nu: int, tau: int) -> int:
    if tau == 0:
        return delta - nu + 1
    return delta + (delta + 2) * _e1(delta - 1, nu - 1, tau - 1)


def e_bound(delta: int, nu: int, tau: int) -> int:
    """``E``: the recursion keeps ``delta`` fixed."""
    _check_args(delta, nu, tau)
    return _e(delta, nu, tau)


def e1_bound(delta: int, nu: int, tau: int) -> int:
    """``E_1``: the recursion lowers ``delta`` with ``nu`` and ``tau``."""
    _check_args(delta, nu, tau)
    return _e1(delta, nu, tau)


@dataclass
class BoundFunctionTable:
    max_delta: int
    e: dict = field(default_factory=dict)
    e1: dict = field(default_factory=dict)

    @classmethod
    def build(cls, max_delta: int) -> BoundFunctionTable:
        if max_delta < 1:
            raise ValueError("max_delta must be positive")
        tab = cls(max_delta)
        for delta in range(1, max_delta + 1):
            for nu in range(1, delta + 1):
                for tau in range(0, nu):
                    tab.e[(delta, nu, tau)] = e_bound(delta, nu, tau)
                    tab.e1[(delta, nu, tau)] = e1_bound(delta, nu, tau)
        return tab

    def recursion_violations(self) -> list[str]:
        """Points where a stored value disagrees with its recursion (expected empty)."""
        bad = []
        for (d, n, t), v in self.e.items():
            want = d - n + 1 if t == 0 else d + (d + 2) * self.e[(d, n - 1, t - 1)]
            if v != want or v <= 0:
                bad.append(f"E{(d, n, t)}")
        for (d, n, t), v in self.e1.items():
            if t == 0:
                want = d - n + 1
            else:
                prev = self.e1.get((d - 1, n - 1, t - 1), _e1(d - 1, n - 1, t - 1))
                want = d + (d + 2) * prev
            if v != want or v <= 0:
                bad.append(f"E1{(d, n, t)}")
        return bad

    def e1_exceeds_e(self) -> list[tuple]:
        return [k for k in self.e1 if self.e1[k] > self.e[k]]

    def rows(self) -> list[dict]:
        return [{"delta": d, "nu": n, "tau": t, "E": self.e[(d, n, t)], "E1": self.e1[(d, n, t)]}
                for (d, n, t) in sorted(self.e)]


def prescribed_exponent(d: int) -> int:
    """``E_1(d, d, d-1)``, the exponent applied to the drawn elements."""
    if d < 1:
        return 1
    return e1_bound(d, d, d - 1)


# -- cohomology annihilators --------------------------------------------------------

@dataclass
class CohomologyAnnihilators:
    ring: QuotientRing
    a_ideals: list[Ideal]
    b_ideals: list[Ideal]
    certificates: dict

    def to_json(self) -> dict:
        return {
            "a": [[str(g) for g in I.generators] for I in self.a_ideals],
            "b": [[str(g) for g in I.generators] for I in self.b_ideals],
            "certificates": self.certificates,
        }


def _ext_annihilator(res, j: int, S: QuotientRing) -> Ideal:
    """``Ann Ext^j_S(R, S)`` from the dual of a resolution of ``R`` over ``S``."""
    C = res.complex
    Fj = C.module(j)
    if Fj.rank == 0:
        return Ideal.unit(S)
    out_map = C.differential(j + 1).transpose()   # F_j* -> F_{j+1}*
    in_map = C.differential(j).transpose() if j >= 1 else None  # F_{j-1}* -> F_j*
    dual = out_map.source
    if out_map.target.rank:
        cycles = V.preimage(S, out_map.target.degrees, out_map.columns, dual.degrees)
    else:
        cycles = dual.basis()
    boundaries = in_map.columns if in_map is not None else ()
    from .modules import annihilator
    return annihilator(Subquotient(dual, cycles, boundaries))


def cohomology_annihilators(R: QuotientRing) -> CohomologyAnnihilators:
    """``a_i = Ann H^i_m(R)`` for ``0 <= i < d`` and ``b_i = a_0 ⋯ a_i``."""
    S = QuotientRing(R.ambient, [])
    D = R.nvars
    d = R.dimension
    Q = Ideal(S, R.defining)
    res = free_resolution(Subquotient.cyclic(Q), D + 1)
    a_ideals, b_ideals = [], []
    for i in range(d):
        ann = _ext_annihilator(res, D - i, S)
        a_ideals.append(Ideal(R, [R.reduce(g) for g in ann.generators]))
    prod = None
    for a in a_ideals:
        prod = a if prod is None else (prod * a).minimal_generators()
        b_ideals.append(prod)
    dims = [krull_dimension(b) for b in b_ideals]
    descending = all(b_ideals[k].contains_ideal(b_ideals[k + 1]) for k in range(len(b_ideals) - 1))
    certs = {
        "dim_R_mod_b": dims,
        "dimension_bound_holds": all(dims[i] <= i for i in range(len(dims))),
        "descending": descending,
        "resolution_over_ambient": res.betti_numbers(),
    }
    if not certs["dimension_bound_holds"] or not descending:
        raise AssertionError(f"annihilator certificates failed: {certs}")
    return CohomologyAnnihilators(R, a_ideals, b_ideals, certs)


# -- systems of parameters ------------------------------------------------------------

def quotient_dimension(R: QuotientRing, elements: Sequence) -> int:
    return krull_dimension(Ideal(R, list(elements)))


def is_system_of_parameters(seq: Sequence, R: QuotientRing) -> bool:
    return len(seq) == R.dimension and quotient_dimension(R, seq) == 0


def well_suited_combinations(x_seq: Sequence, c_seq: Sequence, d: int):
    """Yield ``(i, j, subset, sequence)`` for every combination to be checked."""
    for i in range(1, d + 1):
        for j in range(i, d + 1):
            size = d - (j - i + 1)
            for sub in combinations(range(len(x_seq)), size):
                seq = [x_seq[s] for s in sub] + list(c_seq[i - 1:j])
                yield i, j, sub, seq


def well_suited_check(x_seq: Sequence, c_seq: Sequence, R: QuotientRing, details: bool = False):
    d = R.dimension
    if len(x_seq) != d or len(c_seq) != d:
        raise ValueError(f"both sequences need length d = {d}")
    failures = []
    checked = 0
    for i, j, sub, seq in well_suited_combinations(x_seq, c_seq, d):
        checked += 1
        if not is_system_of_parameters(seq, R):
            failures.append({"i": i, "j": j, "x_subset": list(sub)})
    ok = not failures
    if details:
        return ok, {"checked": checked, "failures": failures}
    return ok


# -- KAS candidates --------------------------------------------------------------------

class KASSearchError(RuntimeError):
    def __init__(self, message: str, certificate: dict):
        super().__init__(message)
        self.certificate = certificate


def generic_element(I: Ideal, degree: int, rng: random.Random) -> Polynomial:
    """A random homogeneous element of ``I`` of the given degree (zero if none)."""
    R = I.ring
    out = R.zero()
    for g in I.generators:
        e = degree - g.degree()
        if e >= 0:
            out = out + R.ambient.random_homogeneous(e, rng) * g
    return R.reduce(out)


def double_annihilator(R: QuotientRing, c: Polynomial) -> Ideal:
    """``(0 : (0 : c))``."""
    zero = Ideal(R)
    inner = ideal_quotient(zero, c)
    out = Ideal.unit(R)
    first = True
    for g in inner.generators:
        col = ideal_quotient(zero, g)
        out = col if first else ideal_intersection(out, col)
        first = False
    return out


@dataclass
class KASCandidate:
    ring: QuotientRing
    base_elements: list[Polynomial]       # c'_1 .. c'_d
    prescribed_exponent: int
    empirical_exponent: int = 1
    policy: str = "empirical"
    certificates: dict = field(default_factory=dict)
    seed: int = 0

    @property
    def d(self) -> int:
        return len(self.base_elements)

    @property
    def exponent(self) -> int:
        return self.prescribed_exponent if self.policy == "prescribed" else self.empirical_exponent

    @property
    def elements(self) -> list[Polynomial]:
        """``c_1 .. c_d`` with the active exponent applied."""
        e = self.exponent
        return [self.ring.reduce(c ** e) for c in self.base_elements]

    def c(self, i: int) -> Polynomial:
        """``c_i`` (1-based)."""
        return self.elements[i - 1]

    def with_policy(self, policy: str) -> KASCandidate:
        if policy not in ("empirical", "prescribed"):
            raise ValueError("policy is 'empirical' or 'prescribed'")
        return KASCandidate(self.ring, self.base_elements, self.prescribed_exponent,
                            self.empirical_exponent, policy, dict(self.certificates), self.seed)

    def to_json(self) -> dict:
        return {
            "ring": {"variables": list(self.ring.variables), "characteristic": self.ring.field.characteristic,
                     "defining": [str(g) for g in self.ring.defining]},
            "base_elements": [str(c) for c in self.base_elements],
            "prescribed_exponent": self.prescribed_exponent,
            "empirical_exponent": self.empirical_exponent,
            "policy": self.policy,
            "certificates": self.certificates,
            "seed": self.seed,
        }

    def content_hash(self) -> str:
        blob = json.dumps(self.to_json(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode()).hexdigest()[:16]


def certify_candidate(R: QuotientRing, elements: Sequence[Polynomial], anns: CohomologyAnnihilators) -> dict:
    """All certificates of a KAS candidate, recomputed from scratch."""
    d = R.dimension
    els = [R(c) for c in elements]
    memberships = {}
    for i in range(1, d + 1):
        memberships[str(i)] = anns.b_ideals[i - 1].contains(els[i - 1])
    tail_dims = {}
    for i in range(1, d + 1):
        tail_dims[str(i)] = quotient_dimension(R, els[i - 1:])
    double = {}
    for m in range(1, d):
        double[str(m)] = krull_dimension(double_annihilator(R, els[m - 1]))
    cert = {
        "b_membership": memberships,
        "tail_dimensions": tail_dims,
        "double_annihilator_dimensions": double,
        "system_of_parameters": quotient_dimension(R, els) == 0,
    }
    cert["valid"] = (all(memberships.values())
                     and all(tail_dims[str(i)] == i - 1 for i in range(1, d + 1))
                     and all(double[str(m)] <= m - 1 for m in range(1, d))
                     and cert["system_of_parameters"])
    return cert


def kas_candidate(R: QuotientRing, seed: int, degree_bound: int, retries: int = 25,
                  anns: CohomologyAnnihilators | None = None, policy: str = "empirical",
                  empirical_exponent: int = 1) -> KASCandidate:
    """Draw ``c'_d, ..., c'_1`` from the ``b`` ideals with dimension certificates."""
    d = R.dimension
    if d < 1:
        raise KASSearchError("ring has dimension 0; there is nothing to choose", {"dimension": d})
    anns = anns if anns is not None else cohomology_annihilators(R)
    rng = random.Random(seed)
    chosen: dict[int, Polynomial] = {}
    for i in range(d, 0, -1):
        b = anns.b_ideals[i - 1]
        low = min((g.degree() for g in b.generators), default=0)
        low = max(low, 1)
        if low > degree_bound:
            raise KASSearchError(
                f"no elements of b_{i - 1} of degree <= {degree_bound}",
                {"index": i, "b_min_degree": low, "degree_bound": degree_bound})
        last_cert: dict = {}
        found = None
        for attempt in range(retries):
            deg = low + (attempt % (degree_bound - low + 1))
            c = generic_element(b, deg, rng)
            if not c.terms:
                last_cert = {"index": i, "degree": deg, "reason": "zero draw"}
                continue
            tail = [c] + [chosen[k] for k in range(i + 1, d + 1)]
            dim = quotient_dimension(R, tail)
            if dim != i - 1:
                last_cert = {"index": i, "degree": deg, "reason": "dimension did not drop", "dimension": dim}
                continue
            if 1 <= i <= d - 1:
                dd = krull_dimension(double_annihilator(R, c))
                if dd > i - 1:
                    last_cert = {"index": i, "degree": deg, "reason": "double annihilator too large",
                                 "dimension": dd}
                    continue
            found = c
            break
        if found is None:
            raise KASSearchError(f"no candidate for c_{i} within {retries} draws", last_cert)
        chosen[i] = found
    base = [chosen[i] for i in range(1, d + 1)]
    cand = KASCandidate(R, base, prescribed_exponent(d), empirical_exponent, policy, seed=seed)
    cert = certify_candidate(R, cand.elements, anns)
    cert["base"] = certify_candidate(R, base, anns)["valid"]
    if not cert["valid"]:
        raise KASSearchError("candidate failed its certificates", cert)
    cand.certificates = cert
    return cand


# -- verification grid --------------------------------------------------------------------

def koszul_homology(seq: Sequence[Polynomial], M: Subquotient, n: int) -> Subquotient:
    K = koszul_complex(list(seq), M.ring)
    return tensor_homology(K, M, n)


def kills(f: Polynomial, H: Subquotient) -> bool:
    R = H.ring
    p = R.field.characteristic
    return all(H.is_relation(V.reduce(R, V.scale(g, f.terms, p))) for g in H.generators)


def random_sop_prefix(R: QuotientRing, cand: KASCandidate, k: int, rng: random.Random,
                      degree: int = 1, retries: int = 25) -> list[Polynomial] | None:
    """``x_1..x_k`` with ``x, c_{k+1}, ..., c_d`` a system of parameters."""
    tail = cand.elements[k:]
    for _ in range(retries):
        xs = [R.random_homogeneous(degree, rng) for _ in range(k)]
        if any(not x.terms for x in xs):
            continue
        if is_system_of_parameters(xs + tail, R):
            return xs
    return None


def kas_verify(cand: KASCandidate, modules: Sequence[tuple[str, Subquotient]],
               sops: Sequence[list[Polynomial]] | None = None, t_list: Sequence[int] = (1,),
               seed: int = 0, n_max: int | None = None, sop_per_k: int = 1) -> dict:
    """Check ``c_v·H_n(x_1..x_k, c_{k+1}^t..c_j^t; M) = 0`` over the grid.

    Grid: ``1 <= k <= j <= v <= d``, ``1 <= n <= min(j, n_max)``, ``t`` in
    ``t_list``.  Prefixes failing the parameter condition are skipped and logged.
    """
    R = cand.ring
    d = cand.d
    c = cand.elements
    rng = random.Random(seed)
    if sops is None:
        sops = []
        for k in range(1, d + 1):
            for _ in range(sop_per_k):
                xs = random_sop_prefix(R, cand, k, rng)
                if xs is not None:
                    sops.append(xs)
    tested = []
    failures = []
    skipped = []
    for m_desc, M in modules:
        for xs in sops:
            k = len(xs)
            if not 1 <= k <= d:
                skipped.append({"module": m_desc, "prefix": [str(x) for x in xs], "reason": "length out of range"})
                continue
            if not is_system_of_parameters(list(xs) + c[k:], R):
                skipped.append({"module": m_desc, "prefix": [str(x) for x in xs],
                                "reason": "not a system of parameters with the c-tail"})
                continue
            for j in range(k, d + 1):
                for t in t_list:
                    seq = list(xs) + [R.reduce(ci ** t) for ci in c[k:j]]
                    top = j if n_max is None else min(j, n_max)
                    K = koszul_complex(seq, R)
                    phi = M.presentation()
                    for n in range(1, top + 1):
                        H = tensor_homology(K, M, n, phi)
                        zero = H.is_zero()
                        for v in range(j, d + 1):
                            ok = zero or kills(c[v - 1], H)
                            rec = {"module": m_desc, "k": k, "j": j, "v": v, "n": n, "t": t,
                                   "prefix": [str(x) for x in xs]}
                            tested.append(rec)
                            if not ok:
                                failures.append(rec)
    return {
        "candidate": cand.content_hash(),
        "tested": len(tested),
        "failures": failures,
        "skipped": skipped,
        "grid": {"k<=j<=v<=d": d, "n_max": n_max, "t_list": list(t_list)},
        "scope": "sampled prefixes and listed modules only; the quantifier over all sequences is not verified",
        "configurations": tested,
    }


def find_empirical_exponent(cand: KASCandidate, modules, t_list=(1,), seed: int = 0, n_max: int | None = None,
                            cap: int = T_CAP) -> int | None:
    """Smallest exponent in 1, 2, 4, ... <= cap for which the grid passes."""
    e = 1
    while e <= cap:
        trial = KASCandidate(cand.ring, cand.base_elements, cand.prescribed_exponent, e, "empirical",
                             cand.certificates, cand.seed)
        if not kas_verify(trial, modules, None, t_list, seed, n_max)["failures"]:
            return e
        e *= 2
    return None


def dth_syzygy_family(R: QuotientRing, ideals: Sequence[Ideal]) -> list[tuple[str, Subquotient]]:
    """``(description, syzygy_module(R/I, d))`` for each ideal."""
    out = []
    for I in ideals:
        M = syzygy_module(Subquotient.cyclic(I), R.dimension)
        out.append((f"syz_{R.dimension}(R/{I.describe()})", M))
    return out


# -- special reductions ------------------------------------------------------------------

def special_reduction(I: Ideal, cand: KASCandidate, seed: int, k_max: int = 6, retries: int = 20) -> dict:
    """``d`` generic elements of ``I`` satisfying the special-reduction conditions."""
    R = I.ring
    d = R.dimension
    if krull_dimension(I) != 0:
        raise ValueError("I is not primary to the maximal ideal")
    degs = {g.degree() for g in I.minimal_generators().generators}
    if len(degs) != 1:
        raise ValueError("special reductions are computed only for ideals generated in one degree")
    deg = degs.pop()
    c = cand.elements
    rng = random.Random(seed)
    last: dict = {}
    for attempt in range(retries):
        xs = [generic_element(I, deg, rng) for _ in range(d)]
        if any(not x.terms for x in xs):
            continue
        ok, ws = well_suited_check(xs, c, R, details=True)
        if not ok:
            last = {"attempt": attempt, "reason": "not well-suited", "detail": ws}
            continue
        conds = []
        good = True
        for i in range(0, d):
            m = d - i
            mods = {"tail": [c[k - 1] for k in range(m, d + 1)],
                    "double_annihilator": list(double_annihilator(R, c[m - 1]).generators)}
            for name, extra in mods.items():
                Rq = R.quotient(extra) if extra else R
                J = Ideal(Rq, xs[:m - 1])
                Iq = Ideal(Rq, xs[:m])
                if Iq.is_zero():
                    rn = 0
                else:
                    rn = reduction_certificate(J, Iq, k_max, window=k_max)["reduction_number"]
                conds.append({"i": i, "modulo": name, "reduction_number": rn})
                if not isinstance(rn, int):
                    good = False
        if not good:
            last = {"attempt": attempt, "reason": "reduction number exceeds k_max", "conditions": conds}
            continue
        whole = reduction_certificate(Ideal(R, xs), I, k_max, window=k_max)
        if not isinstance(whole["reduction_number"], int):
            last = {"attempt": attempt, "reason": "not a reduction of I", "detail": whole}
            continue
        return {
            "elements": xs,
            "well_suited": ws,
            "conditions": conds,
            "reduction_of_I": whole,
        }
    raise KASSearchError("retry budget exhausted for special reduction", last)


# -- homology annihilation for complexes ---------------------------------------------------

def complex_hypotheses(cand: KASCandidate, G: ChainComplex) -> dict:
    """Standard conditions on rank, and ``I(∂_i) + (c_{i+1},..,c_d)`` primary to ``m``."""
    d = cand.d
    c = cand.elements
    prof = rank_profile(G, with_grades=False)
    primary = {}
    for i in range(1, G.length + 1):
        ideal = prof.ideals[i].extend(c[i:d])
        primary[str(i)] = krull_dimension(ideal) <= 0
    return {
        "standard_conditions": prof.satisfies_standard_conditions(),
        "m_primary": primary,
        "ok": prof.satisfies_standard_conditions() and all(primary.values()),
    }


def kas_complex_annihilation(cand: KASCandidate, G: ChainComplex, M: Subquotient, t: int) -> dict:
    """Test ``c_{n+j}^t H_i(G ⊗ M) = 0`` for ``i >= 1``, ``0 <= j <= d-n``."""
    R = cand.ring
    d = cand.d
    n = G.length
    if n > d:
        raise ValueError("complex is longer than the ring dimension")
    hyp = complex_hypotheses(cand, G)
    if not hyp["ok"]:
        return {"status": "hypothesis-failure", "hypotheses": hyp, "failures": []}
    phi = M.presentation()
    failures = []
    checks = 0
    for i in range(1, n + 1):
        H = tensor_homology(G, M, i, phi)
        if H.is_zero():
            checks += d - n + 1
            continue
        for j in range(0, d - n + 1):
            if n + j < 1:
                continue
            f = R.reduce(cand.c(n + j) ** t)
            checks += 1
            if not kills(f, H):
                failures.append({"i": i, "j": j})
    return {"status": "holds" if not failures else "conclusion-failure", "hypotheses": hyp,
            "failures": failures, "checks": checks, "t": t}


def find_complex_exponent(cand: KASCandidate, complexes: Sequence[ChainComplex], M: Subquotient,
                          cap: int = T_CAP) -> dict:
    """Doubling search ``t = 1, 2, 4, ...`` up to ``cap`` for the annihilation exponent."""
    t = 1
    while t <= cap:
        reports = [kas_complex_annihilation(cand, G, M, t) for G in complexes]
        if all(r["status"] != "conclusion-failure" for r in reports):
            return {"t": t, "capped": False, "reports": [r["status"] for r in reports]}
        t *= 2
    return {"t": None, "capped": True, "cap": cap}


# -- the annihilation items for powers of parameter ideals ------------------------------------

def fromagt_complex(cand: KASCandidate, x_seq: Sequence[Polynomial], j: int, i: int, n: int,
                    exps: Sequence[int]) -> ChainComplex:
    """Resolution of ``R/I_j^n`` tensored with the Koszul complex on ``c_{j+1}^{t}..c_i^{t}``."""
    R = cand.ring
    B = power_complex(list(x_seq[:j]), n, R)
    if i == j:
        return B
    tail = [R.reduce(cand.c(m) ** e) for m, e in zip(range(j + 1, i + 1), exps)]
    return tensor_complexes(B, koszul_complex(tail, R))


def _L(R: QuotientRing, cand: KASCandidate, x_seq, j: int, upto: int, n: int, exps) -> Ideal:
    """``I_j^n + (c_{j+1}^{t_{j+1}}, ..., c_upto^{t_upto})``."""
    base = ideal_power(Ideal(R, list(x_seq[:j])), n)
    tail = [R.reduce(cand.c(m) ** e) for m, e in zip(range(j + 1, upto + 1), exps)]
    return base.extend(tail)


def fromagt_checks(cand: KASCandidate, x_seq: Sequence, M: Subquotient, j: int, i: int, n: int,
                   exps: Sequence[int], t: int, items: Sequence[int] = (1, 2, 3, 4)) -> dict:
    """Evaluate items (1)-(4) for one parameter choice; ``exps`` are ``t_{j+1}..t_i``."""
    R = cand.ring
    d = cand.d
    x_seq = [R(x) for x in x_seq]
    if not 1 <= j <= i <= d:
        raise ValueError(f"need 1 <= j <= i <= d, got j={j}, i={i}, d={d}")
    if len(exps) != i - j:
        raise ValueError(f"need {i - j} exponents t_(j+1)..t_i")
    if n < 1 or t < 0:
        raise ValueError("need n >= 1 and t >= 0")
    report: dict = {"j": j, "i": i, "n": n, "exponents": list(exps), "t": t}
    ks = range(i, d + 1)
    if 1 in items:
        G = fromagt_complex(cand, x_seq, j, i, n, exps)
        report["1"] = complex_hypotheses(cand, G)["ok"]
    L = _L(R, cand, x_seq, j, i, n, exps)
    if 2 in items:
        T1 = tor(1, L, M)
        report["2"] = all(kills(R.reduce(cand.c(k) ** t), T1) for k in ks)
    if 3 in items:
        phi = M.presentation()
        G0 = phi.target
        N = Subquotient(G0, phi.columns)
        left = module_intersection(G0.full().times_ideal(L), N)
        right = N.times_ideal(L)
        p = R.field.characteristic
        ok3 = True
        for k in ks:
            f = R.reduce(cand.c(k) ** t)
            for g in left.generators:
                if not right.contains(V.reduce(R, V.scale(g, f.terms, p))):
                    ok3 = False
                    break
        report["3"] = ok3
    if 4 in items:
        ok4 = _colon_item(cand, x_seq, M, j, i, n, exps, t)
        if i > j:
            report["4"] = ok4
        else:
            # no c_i factor in the complex: the containment is not implied and
            # fails whenever I_j is m-primary, so it is recorded but not judged
            report["4"] = None
            report["4_degenerate"] = ok4
    report["pass"] = all(report[str(it)] is not False for it in items)
    return report


def _colon_item(cand: KASCandidate, x_seq, M: Subquotient, j: int, i: int, n: int, exps, t: int) -> bool:
    """``c_k^t (L'M : c_i^∞) ⊆ L'M`` for ``k = i..d``."""
    R = cand.ring
    Lp = _L(R, cand, x_seq, j, i - 1, n, exps[:max(i - 1 - j, 0)])
    sub = M.submodule_part() if not M.relations else M
    W = colon_capture(sub, Lp, cand.c(i))
    LM = sub.times_ideal(Lp)
    p = R.field.characteristic
    for k in range(i, cand.d + 1):
        f = R.reduce(cand.c(k) ** t)
        for g in W.generators:
            if not LM.contains(V.reduce(R, V.scale(g, f.terms, p))):
                return False
    return True


def fromagt_grid(cand: KASCandidate, x_seq: Sequence, modules: Sequence[tuple[str, Subquotient]],
                 i_max: int | None = None, n_max: int = 3, t: int | None = None, t_cap: int = T_CAP) -> dict:
    """Items (1)-(4) over ``1 <= j <= i <= i_max``, ``n <= n_max``, tail exponents ``<= t``.

    When ``t`` is omitted it is found by doubling search on the item (1)
    complexes against each module.
    """
    d = cand.d
    i_max = d if i_max is None else min(i_max, d)
    pairs = [(j, i) for i in range(1, i_max + 1) for j in range(1, i + 1)]
    search = None
    if t is None:
        complexes = [fromagt_complex(cand, x_seq, j, i, n, [1] * (i - j))
                     for (j, i) in pairs for n in range(1, n_max + 1)]
        ts = []
        for _, M in modules:
            found = find_complex_exponent(cand, complexes, M, t_cap)
            if found["t"] is None:
                return {"status": "t-cap-exceeded", "cap": t_cap, "cases": [], "failures": []}
            ts.append(found["t"])
        t = max(ts, default=1)
        search = ts
    cases, failures = [], []
    for desc, M in modules:
        for (j, i) in pairs:
            for n in range(1, n_max + 1):
                for e in range(1, t + 1):
                    exps = [e] * (i - j)
                    rep = fromagt_checks(cand, x_seq, M, j, i, n, exps, t)
                    rep["module"] = desc
                    cases.append(rep)
                    if not rep["pass"]:
                        failures.append(rep)
                    if i == j:
                        break  # tail exponents play no role
    return {
        "status": "pass" if not failures else "fail",
        "t": t,
        "t_search": search,
        "cases": cases,
        "failures": failures,
        "x_seq": [str(x) for x in x_seq],
        "candidate": cand.content_hash(),
    }
