"""Artin-Rees numbers over a window of powers, reduction numbers and sweeps.

Every number reported here is certified only for ``n <= n_max`` and for the
finite family actually tested; results carry that label.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Sequence

from .groebner import Ideal, ideal_power
from .modules import FreeModule, Subquotient, module_intersection, module_sum
from .resolution import Resolution, free_resolution
from .ring import QuotientRing

WINDOW_LABEL = "window-certified"
FAMILY_LABEL = "window-certified, family-certified"
UNBOUNDED = "unbounded-in-window"
NOT_COMPUTED = "not-computed"


@dataclass
class ARResult:
    """Weak and strong Artin-Rees numbers of ``A ⊆ B`` with respect to ``I``.

    ``t_values[n]`` is the least ``h`` with ``I^nB ∩ A ⊆ I^{n-h}A``.
    """

    pair_id: str
    n_max: int
    h_weak: int | None
    h_strong: int | None | str
    t_values: dict[int, int]
    strong_values: dict[int, int]
    status: str = WINDOW_LABEL
    witnesses: dict[int, dict] = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "pair_id": self.pair_id,
            "n_max": self.n_max,
            "h_weak": self.h_weak if self.h_weak is not None else UNBOUNDED,
            "h_strong": UNBOUNDED if self.h_strong is None else self.h_strong,
            "t_values": {str(n): t for n, t in sorted(self.t_values.items())},
            "strong_values": {str(n): t for n, t in sorted(self.strong_values.items())},
            "status": self.status,
            "witnesses": {str(n): w for n, w in sorted(self.witnesses.items())},
        }


class _PowerCache:
    """``I^k·A`` membership engines, built on demand."""

    def __init__(self, I: Ideal, A: Subquotient):
        self.I = I
        self.A = A
        self.cache: dict[int, Subquotient] = {}

    def get(self, k: int) -> Subquotient:
        if k not in self.cache:
            if k <= 0:
                self.cache[k] = self.A
            else:
                self.cache[k] = self.A.times_ideal(ideal_power(self.I, k))
        return self.cache[k]


def _as_submodule(B) -> Subquotient:
    if isinstance(B, FreeModule):
        return B.full()
    return B.submodule_part()


def _first_h(X: Subquotient, n: int, pw: _PowerCache) -> tuple[int, dict | None]:
    """Least ``h`` in ``[0, n]`` with ``X ⊆ I^{n-h}A``, plus a witness for ``h-1``."""
    witness = None
    for h in range(0, n + 1):
        target = pw.get(n - h)
        bad = next((g for g in X.generators if not target.contains(g)), None)
        if bad is None:
            return h, witness
        witness = {"h": h, "generator": [str(e) for e in X.ambient.entries(bad)]}
    return n, witness


def artin_rees_number(A: Subquotient, B_amb, I: Ideal, n_max: int, pair_id: str = "",
                      strong: bool = True) -> ARResult:
    """Weak and strong Artin-Rees numbers of ``A ⊆ B`` over ``1 <= n <= n_max``."""
    if n_max < 1:
        raise ValueError("n_max must be at least 1")
    B = _as_submodule(B_amb)
    A = A.submodule_part()
    if A.ambient != B.ambient:
        raise ValueError("A and B live in different free modules")
    if not B.span_contains(A):
        raise ValueError("A is not contained in B")
    if A.is_zero() or I.is_zero():
        zero = {n: 0 for n in range(1, n_max + 1)}
        return ARResult(pair_id, n_max, 0, 0, zero, dict(zero))
    pw = _PowerCache(I, A)
    X: dict[int, Subquotient] = {0: A}
    t_values: dict[int, int] = {}
    witnesses: dict[int, dict] = {}
    for n in range(1, n_max + 1):
        X[n] = module_intersection(B.times_ideal(ideal_power(I, n)), A)
        t, w = _first_h(X[n], n, pw)
        t_values[n] = t
        if w is not None:
            witnesses[n] = w
    h_weak = None
    for h in range(0, n_max + 1):
        if all(t_values[n] <= h for n in range(max(h, 1), n_max + 1)):
            h_weak = h
            break
    strong_values: dict[int, int] = {}
    h_strong: int | None | str = NOT_COMPUTED
    if strong:
        h_strong = None
        for n in range(1, n_max + 1):
            strong_values[n] = n
            for h in range(0, n + 1):
                target = X[h].times_ideal(ideal_power(I, n - h)) if n > h else X[h]
                if target.span_contains(X[n]):
                    strong_values[n] = h
                    break
        for h in range(0, n_max + 1):
            if all(_strong_holds(X, I, n, h) for n in range(max(h, 1), n_max + 1)):
                h_strong = h
                break
    status = WINDOW_LABEL
    if h_weak is not None and h_weak >= n_max and n_max > 1 and t_values[n_max] >= n_max:
        status = UNBOUNDED
        h_weak = None
    return ARResult(pair_id, n_max, h_weak, h_strong, t_values, strong_values, status, witnesses)


def _strong_holds(X: dict, I: Ideal, n: int, h: int) -> bool:
    target = X[h].times_ideal(ideal_power(I, n - h)) if n > h else X[h]
    return target.span_contains(X[n])


def weak_containment_holds(A: Subquotient, B_amb, I: Ideal, n: int, h: int) -> bool:
    """``I^nB ∩ A ⊆ I^{n-h}A`` for a single ``(n, h)``."""
    B = _as_submodule(B_amb)
    X = module_intersection(B.times_ideal(ideal_power(I, n)), A.submodule_part())
    target = A.submodule_part().times_ideal(ideal_power(I, n - h)) if n > h else A.submodule_part()
    return target.span_contains(X)


def syzygetic_ar(M: Subquotient, I: Ideal, i_range: Sequence[int], n_max: int,
                 resolution: Resolution | None = None, strong: bool = False) -> dict[int, ARResult]:
    """Weak Artin-Rees numbers of ``Im ∂_{i+1} ⊆ F_i`` for each ``i``."""
    i_range = list(i_range)
    if not i_range:
        return {}
    need = max(i_range) + 1
    res = resolution if resolution is not None and resolution.length_computed >= need \
        else free_resolution(M, need)
    out = {}
    for i in i_range:
        F = res.free_module(i)
        A = res.image(i)
        out[i] = artin_rees_number(A, F, I, n_max, pair_id=f"i={i}", strong=strong)
    return out


# -- reduction numbers ------------------------------------------------------------

def reduction_certificate(J: Ideal, I: Ideal, k_max: int = 10, window: int = 6) -> dict:
    """Least ``k <= k_max`` with ``I^{k+1} = J I^k`` and the containments it implies."""
    if not I.contains_ideal(J):
        raise ValueError("J is not contained in I")
    k_found = None
    for k in range(0, k_max + 1):
        lhs = ideal_power(I, k + 1)
        rhs = J * ideal_power(I, k) if k > 0 else J
        if rhs.contains_ideal(lhs):
            k_found = k
            break
    consequences = {}
    if k_found is not None:
        for n in range(k_found, window + 1):
            consequences[str(n)] = ideal_power(J, n - k_found).contains_ideal(ideal_power(I, n))
    return {
        "reduction_number": k_found if k_found is not None else "exceeds-window",
        "k_max": k_max,
        "consequence_window": window,
        "consequences": consequences,
        "consequences_hold": all(consequences.values()) if k_found is not None else None,
    }


def reduction_number(J: Ideal, I: Ideal, k_max: int = 10, window: int = 6):
    """Least ``k`` with ``I^{k+1} = J I^k``, or ``"exceeds-window"``.

    Raises when the implied containments ``I^n ⊆ J^{n-k}`` fail in the window.
    """
    cert = reduction_certificate(J, I, k_max, window)
    if cert["consequences_hold"] is False:
        raise AssertionError("reduction consequence failed: " + str(cert["consequences"]))
    return cert["reduction_number"]


# -- the main-reduction containment ------------------------------------------------

def main_reduction_check(N: Subquotient, G: FreeModule, x_seq: Sequence, i: int, n: int, h: int,
                         details: bool = False):
    """``I_{d-i}^n G ∩ N ⊆ I_{d-i}^{n-h} N + (I_{d-i-1}^{n-h} G ∩ N)``.

    ``I_j = (x_1, ..., x_j)`` with ``I_0 = 0``; ``d = len(x_seq)``.
    """
    R = G.ring
    d = len(x_seq)
    if not 0 <= i <= d - 1:
        raise ValueError(f"index i={i} out of range 0..{d - 1}")
    if n < h or h < 0:
        raise ValueError("need 0 <= h <= n")
    if N.ambient != G:
        raise ValueError("N is not a submodule of G")
    xs = [R(x) for x in x_seq]

    def chain(j: int) -> Ideal:
        return Ideal(R, xs[:j])

    def pow_(I: Ideal, k: int) -> Ideal:
        return ideal_power(I, k)

    Nsub = N.submodule_part()
    Gfull = G.full()
    Ia = chain(d - i)
    Ib = chain(d - i - 1)
    left = module_intersection(Gfull.times_ideal(pow_(Ia, n)), Nsub)
    part1 = Nsub.times_ideal(pow_(Ia, n - h))
    part2 = module_intersection(Gfull.times_ideal(pow_(Ib, n - h)), Nsub)
    right = module_sum(part1, part2)
    bad = next((g for g in left.generators if not right.contains(g)), None)
    ok = bad is None
    if details:
        return ok, {"witness": None if ok else [str(e) for e in G.entries(bad)]}
    return ok


# -- sweeps ---------------------------------------------------------------------------

@dataclass
class SweepReport:
    family: dict
    cases: list[dict]
    max_h: int | None
    seed: int
    label: str = FAMILY_LABEL
    scope: str = ("max_h is certified only for n <= n_max and for the listed modules and ideals; "
                  "it is not a proof of a bound for all ideals or all modules")

    def to_json(self) -> dict:
        return {
            "family": self.family,
            "cases": self.cases,
            "max_h": self.max_h if self.max_h is not None else UNBOUNDED,
            "seed": self.seed,
            "label": self.label,
            "scope": self.scope,
        }


def uniform_sweep(modules: Sequence[tuple[str, Subquotient]], ideals: Sequence[tuple[str, Ideal]],
                  i_min: int | None = None, n_max: int = 6, seed: int = 0, i_max: int | None = None,
                  family: dict | None = None, strong: bool = False) -> SweepReport:
    """Syzygetic Artin-Rees numbers for every (module, ideal) pair, ``i_min <= i <= i_max``.

    ``i_min`` defaults to the ring dimension and ``i_max`` to ``i_min + 1``.
    """
    if not modules or not ideals:
        raise ValueError("empty family")
    R: QuotientRing = modules[0][1].ring
    if i_min is None:
        i_min = R.dimension
    if i_max is None:
        i_max = i_min + 1
    cases = []
    max_h: int | None = 0
    for m_desc, M in modules:
        res = free_resolution(M, i_max + 1)
        for I_desc, I in ideals:
            per_i = syzygetic_ar(M, I, range(i_min, i_max + 1), n_max, resolution=res, strong=strong)
            for i, ar in per_i.items():
                rec = ar.to_json()
                rec.update({"case_id": f"{len(cases)}", "module_desc": m_desc, "ideal_desc": I_desc, "i": i})
                cases.append(rec)
                if ar.h_weak is None:
                    max_h = None
                elif max_h is not None:
                    max_h = max(max_h, ar.h_weak)
    fam = family or {"modules": [m for m, _ in modules], "ideals": [d for d, _ in ideals],
                     "i_min": i_min, "i_max": i_max, "n_max": n_max}
    return SweepReport(fam, cases, max_h, seed)


# -- seeded families -------------------------------------------------------------------

def random_monomial_ideal(R: QuotientRing, rng: random.Random, max_degree: int, max_gens: int) -> Ideal:
    ring = R.ambient
    gens = []
    count = rng.randint(1, max_gens)
    for _ in range(count):
        d = rng.randint(1, max_degree)
        mons = ring.monomials_of_degree(d)
        gens.append(ring.monomial(ring.unpack(rng.choice(mons))))
    return Ideal(R, gens).minimal_generators()


def random_homogeneous_ideal(R: QuotientRing, rng: random.Random, degrees: Sequence[int]) -> Ideal:
    gens = []
    for d in degrees:
        f = R.random_homogeneous(d, rng)
        if f.terms:
            gens.append(f)
    return Ideal(R, gens)


def seeded_ideal_family(R: QuotientRing, count: int, seed: int, kind: str = "homogeneous",
                        max_degree: int = 2, max_gens: int = 3) -> list[tuple[str, Ideal]]:
    """``count`` seeded ideals; the generator lists are part of the description."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        if kind == "monomial":
            I = random_monomial_ideal(R, rng, max_degree, max_gens)
        else:
            k = rng.randint(1, max_gens)
            I = random_homogeneous_ideal(R, rng, [rng.randint(1, max_degree) for _ in range(k)])
        if I.is_zero() or I.is_unit():
            continue
        out.append((I.describe(), I))
    return out
