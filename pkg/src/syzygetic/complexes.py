"""Finite complexes of graded free modules and exactness tests."""

from __future__ import annotations

import math
import random
from itertools import combinations
from typing import Sequence

from . import _vectors as V
from .groebner import Ideal, as_quotient_ring, ideal_quotient
from .modules import FreeModule, ModuleMap, Subquotient, module_intersection
from .ring import HomogeneityError, Polynomial, QuotientRing, _add, poly_mul

INFINITE = math.inf
DEFAULT_MINOR_CAP = 8


class ChainComplexError(ValueError):
    pass


class ChainComplex:
    """``0 -> G_n -> ... -> G_1 -> G_0 -> 0``.

    ``modules[i]`` is ``G_i`` and ``differentials[i-1]`` is ``∂_i: G_i -> G_{i-1}``.
    """

    def __init__(self, modules: Sequence[FreeModule], differentials: Sequence[ModuleMap], check: bool = True):
        if len(differentials) != max(len(modules) - 1, 0):
            raise ChainComplexError("need exactly one differential between consecutive modules")
        self.modules = list(modules)
        self.differentials = list(differentials)
        if not self.modules:
            raise ChainComplexError("a complex needs at least one module")
        self.ring: QuotientRing = self.modules[0].ring
        for i, d in enumerate(self.differentials, start=1):
            if d.source.rank != self.modules[i].rank or d.target.rank != self.modules[i - 1].rank:
                raise ChainComplexError(f"differential {i} does not match the module ranks")
            if d.ring != self.ring:
                raise ChainComplexError("all differentials must live over one ring")
        if check:
            for i in range(1, len(self.differentials)):
                comp = self.differentials[i - 1].compose(self.differentials[i])
                if not comp.is_zero():
                    raise ChainComplexError(f"∂_{i}∘∂_{i + 1} is not zero")

    @property
    def length(self) -> int:
        return len(self.modules) - 1

    def __repr__(self):
        return f"ChainComplex(ranks={self.ranks()})"

    def ranks(self) -> list[int]:
        return [G.rank for G in self.modules]

    def module(self, i: int) -> FreeModule:
        if 0 <= i < len(self.modules):
            return self.modules[i]
        return FreeModule(self.ring, [])

    def differential(self, i: int) -> ModuleMap:
        """``∂_i``; zero maps outside the stored range."""
        if 1 <= i <= len(self.differentials):
            return self.differentials[i - 1]
        return ModuleMap.zero(self.module(i), self.module(i - 1))

    @classmethod
    def from_maps(cls, maps: Sequence[ModuleMap]) -> ChainComplex:
        """Complex with ``maps[0] = ∂_1``, ``maps[1] = ∂_2``, ..."""
        if not maps:
            raise ChainComplexError("need at least one map")
        mods = [maps[0].target] + [m.source for m in maps]
        return cls(mods, maps)

    @classmethod
    def single(cls, F: FreeModule) -> ChainComplex:
        return cls([F], [])

    def homology(self, i: int) -> Subquotient:
        return homology(self, i)

    def is_graded(self) -> bool:
        return True


def homology(C: ChainComplex, i: int) -> Subquotient:
    """``H_i(C) = ker ∂_i / im ∂_{i+1}`` as a subquotient of ``G_i``."""
    G = C.module(i)
    R = C.ring
    d_in = C.differential(i + 1)
    if i == 0 or i > C.length:
        cycles = G.basis()
    else:
        d = C.differential(i)
        cycles = V.preimage(R, d.target.degrees, d.columns, G.degrees)
    return Subquotient(G, cycles, d_in.columns)


# -- Koszul complexes -----------------------------------------------------------

def koszul_complex(seq: Sequence, R) -> ChainComplex:
    """Koszul complex on ``seq`` over ``R``; ``G_i`` has basis the i-subsets."""
    R = as_quotient_ring(R)
    seq = [R(f) for f in seq]
    n = len(seq)
    if n == 0:
        raise ValueError("the Koszul complex needs a nonempty sequence")
    degs = [f.degree() if f.terms else 0 for f in seq]
    subsets = [list(combinations(range(n), i)) for i in range(n + 1)]
    index = [{s: k for k, s in enumerate(subsets[i])} for i in range(n + 1)]
    mods = [FreeModule(R, [sum(degs[j] for j in s) for s in subsets[i]]) for i in range(n + 1)]
    S = R.ambient.comp_shift
    maps = []
    for i in range(1, n + 1):
        cols = []
        for s in subsets[i]:
            col: dict = {}
            for k, j in enumerate(s):
                t = s[:k] + s[k + 1:]
                c = index[i - 1][t] << S
                sign = 1 if k % 2 == 0 else -1
                for E, a in seq[j].terms.items():
                    col[c | E] = sign * a
            cols.append(V.reduce(R, _fix(R, col)))
        maps.append(ModuleMap(mods[i], mods[i - 1], cols, check=False))
    return ChainComplex(mods, maps)


def _fix(R: QuotientRing, v: dict) -> dict:
    p = R.field.characteristic
    if p:
        return {T: a % p for T, a in v.items() if a % p}
    return v


# -- tensor products ------------------------------------------------------------

def _tensor_free(A: FreeModule, B: FreeModule) -> FreeModule:
    return FreeModule(A.ring, [a + b for a in A.degrees for b in B.degrees])


def _tensor_vector(R: QuotientRing, v: dict, q: int, brank: int) -> dict:
    """``v ⊗ e_q`` inside ``A ⊗ B`` (index ``p*brank + q``)."""
    S = R.ambient.comp_shift
    mask = R.ambient.exp_mask
    return {(((T >> S) * brank + q) << S) | (T & mask): a for T, a in v.items()}


def _vector_tensor(R: QuotientRing, p_idx: int, w: dict, brank: int) -> dict:
    """``e_p ⊗ w`` inside ``A ⊗ B``."""
    S = R.ambient.comp_shift
    mask = R.ambient.exp_mask
    return {((p_idx * brank + (T >> S)) << S) | (T & mask): a for T, a in w.items()}


def tensor_homology(C: ChainComplex, M: Subquotient, i: int, presentation: ModuleMap | None = None) -> Subquotient:
    """``H_i(C ⊗ M)`` computed from a presentation ``F_1 -> F_0 -> M``."""
    R = C.ring
    if M.ring != R:
        raise ValueError("complex and module live in different rings")
    phi = presentation if presentation is not None else M.presentation()
    F0 = phi.target
    a = F0.rank

    def rels(k: int) -> list[dict]:
        G = C.module(k)
        return [_vector_tensor(R, p_idx, col, a) for p_idx in range(G.rank) for col in phi.columns]

    def tmap(k: int) -> list[dict]:
        d = C.differential(k)
        return [_tensor_vector(R, d.columns[p_idx], q, a) for p_idx in range(d.source.rank) for q in range(a)]

    A_i = _tensor_free(C.module(i), F0)
    if i < 0 or i > C.length:
        return Subquotient(A_i)
    if i == 0:
        cycles = A_i.basis()
    else:
        A_prev = _tensor_free(C.module(i - 1), F0)
        cycles = V.preimage(R, A_prev.degrees, tmap(i), A_i.degrees, rels(i - 1))
    boundaries = tmap(i + 1) if i + 1 <= C.length else []
    return Subquotient(A_i, cycles, list(boundaries) + rels(i))


def tensor_with_module(C: ChainComplex, M: Subquotient) -> list[Subquotient]:
    """``[H_0(C⊗M), ..., H_n(C⊗M)]``."""
    phi = M.presentation()
    return [tensor_homology(C, M, i, phi) for i in range(C.length + 1)]


def tensor_complexes(C1: ChainComplex, C2: ChainComplex) -> ChainComplex:
    """Total complex of ``C1 ⊗ C2`` with sign ``(-1)^i`` on the second factor."""
    R = C1.ring
    if C2.ring != R:
        raise ValueError("complexes live in different rings")
    n = C1.length + C2.length
    S = R.ambient.comp_shift
    mask = R.ambient.exp_mask
    p = R.field.characteristic
    layout = []   # per total degree: list of (i, j, offset)
    mods = []
    for k in range(n + 1):
        blocks = []
        degs = []
        off = 0
        for i in range(k + 1):
            j = k - i
            if i > C1.length or j > C2.length:
                continue
            A, B = C1.module(i), C2.module(j)
            blocks.append((i, j, off))
            degs.extend(a + b for a in A.degrees for b in B.degrees)
            off += A.rank * B.rank
        layout.append(blocks)
        mods.append(FreeModule(R, degs))
    offsets = [{(i, j): off for i, j, off in blocks} for blocks in layout]

    def place(v: dict, k: int, i: int, j: int, bidx_fn) -> dict:
        base = offsets[k][(i, j)]
        return {((base + bidx_fn(T >> S)) << S) | (T & mask): a for T, a in v.items()}

    maps = []
    for k in range(1, n + 1):
        cols = []
        for i, j, off in layout[k]:
            A, B = C1.module(i), C2.module(j)
            for pa in range(A.rank):
                for qb in range(B.rank):
                    col: dict = {}
                    if i >= 1:
                        d1 = C1.differential(i).columns[pa]
                        brank = B.rank
                        col = V.add(col, place(d1, k - 1, i - 1, j, lambda r, qb=qb, brank=brank: r * brank + qb), p)
                    if j >= 1:
                        d2 = C2.differential(j).columns[qb]
                        brank2 = C2.module(j - 1).rank
                        part = place(d2, k - 1, i, j - 1, lambda r, pa=pa, brank2=brank2: pa * brank2 + r)
                        if i % 2:
                            part = V.scalar(part, -1, p) if p else {T: -a for T, a in part.items()}
                        col = V.add(col, part, p)
                    cols.append(col)
        maps.append(ModuleMap(mods[k], mods[k - 1], cols, check=False))
    return ChainComplex(mods, maps)


# -- minors, ranks, grade -----------------------------------------------------

class _MinorTable:
    """Memoized Laplace expansion of the minors of a polynomial matrix modulo ``Q``."""

    def __init__(self, R: QuotientRing, rows: list[list[dict]]):
        self.R = R
        self.rows = rows
        self.p = R.field.characteristic
        self.memo: dict = {}

    def minor(self, rows: tuple, cols: tuple) -> dict:
        key = (rows, cols)
        hit = self.memo.get(key)
        if hit is not None:
            return hit
        if len(rows) == 1:
            val = self.rows[rows[0]][cols[0]]
        else:
            last = cols[-1]
            rest = cols[:-1]
            val: dict = {}
            r = len(rows)
            for k, row in enumerate(rows):
                a = self.rows[row][last]
                if not a:
                    continue
                sub = self.minor(rows[:k] + rows[k + 1:], rest)
                if not sub:
                    continue
                sign = 1 if (k + r - 1) % 2 == 0 else -1
                val = _add(val, poly_mul(a, sub, self.p), sign, self.p)
            val = self.R.reduce_terms(val) if val else val
        self.memo[key] = val
        return val

    def minors(self, size: int) -> list[dict]:
        m = len(self.rows)
        n = len(self.rows[0]) if m else 0
        out = []
        for cols in combinations(range(n), size):
            for rows in combinations(range(m), size):
                v = self.minor(rows, cols)
                if v:
                    out.append(v)
        return out

    def any_nonzero(self, size: int) -> bool:
        m = len(self.rows)
        n = len(self.rows[0]) if m else 0
        for cols in combinations(range(n), size):
            for rows in combinations(range(m), size):
                if self.minor(rows, cols):
                    return True
        return False


def _matrix_terms(phi: ModuleMap) -> list[list[dict]]:
    return [[e.terms for e in row] for row in phi.matrix()]


def minors_ideal(phi: ModuleMap, size: int, cap: int = DEFAULT_MINOR_CAP) -> Ideal:
    """Ideal of ``size × size`` minors; ``I_0 = R``."""
    R = phi.ring
    if size <= 0:
        return Ideal.unit(R)
    if size > cap:
        raise ValueError(f"minor size {size} exceeds the cap {cap}")
    if size > min(phi.source.rank, phi.target.rank):
        return Ideal(R)
    table = _MinorTable(R, _matrix_terms(phi))
    return Ideal(R, [Polynomial(R.ambient, t) for t in table.minors(size)])


def map_rank(phi: ModuleMap, cap: int = DEFAULT_MINOR_CAP) -> tuple[int, Ideal]:
    """``(rank, I_rank)`` where rank is the largest size of a nonzero minor."""
    R = phi.ring
    top = min(phi.source.rank, phi.target.rank)
    if top == 0 or phi.is_zero():
        return 0, Ideal.unit(R)
    table = _MinorTable(R, _matrix_terms(phi))
    r = 0
    for size in range(1, top + 1):
        if size > cap:
            raise ValueError(f"rank search exceeds the minor cap {cap}")
        if table.any_nonzero(size):
            r = size
        else:
            break
    return r, Ideal(R, [Polynomial(R.ambient, t) for t in table.minors(r)])


def koszul_grade(I: Ideal, at_least: int | None = None) -> float:
    """``n - max{i : H_i(f; R) != 0}`` on a minimal generating set ``f``."""
    if I.is_unit():
        return INFINITE
    gens = list(I.minimal_generators().generators)
    if not gens:
        return 0
    K = koszul_complex(gens, I.ring)
    n = len(gens)
    stop = 1 if at_least is None else max(1, n - at_least + 1)
    for i in range(n, stop - 1, -1):
        if not homology(K, i).is_zero():
            return n - i
    # H_i = 0 for i >= stop; stop is clamped at 1, where the bound n is exact
    return n - stop + 1


def regular_sequence_grade(I: Ideal, at_least: int | None = None, seed: int = 0, retries: int = 20) -> float:
    """Grade via a maximal regular sequence of generic elements of ``I``.

    Each chosen element is certified a nonzerodivisor by a colon check; the
    loop stops when ``(Y : I) != Y``, i.e. ``I`` consists of zerodivisors on
    ``R/Y``.  Exact whenever it returns.
    """
    R = I.ring
    if I.is_unit():
        return INFINITE
    gens = list(I.minimal_generators().generators)
    if not gens:
        return 0
    rng = random.Random(seed)
    top = max(g.degree() for g in gens)
    Y = Ideal(R)
    k = 0
    while True:
        if at_least is not None and k >= at_least:
            return k
        if not _contains_nonzerodivisor(Y, I):
            return k
        for _ in range(retries):
            y = _generic_element(R, gens, top, rng)
            if y.terms and ideal_quotient(Y, y).equals(Y):
                break
        else:
            raise RuntimeError("could not find a nonzerodivisor; retry budget exhausted")
        Y = Y.extend([y])
        k += 1


def _contains_nonzerodivisor(Y: Ideal, I: Ideal) -> bool:
    """True when ``I`` contains a nonzerodivisor on ``R/Y``, i.e. ``(Y : I) == Y``."""
    from .groebner import ideal_intersection

    col = None
    for g in I.generators:
        c = ideal_quotient(Y, g)
        col = c if col is None else ideal_intersection(col, c)
        if Y.contains_ideal(col):
            return True
    return False


def _generic_element(R: QuotientRing, gens: list[Polynomial], degree: int, rng: random.Random) -> Polynomial:
    out = R.zero()
    for g in gens:
        coeff = R.ambient.random_homogeneous(degree - g.degree(), rng)
        out = out + coeff * g
    return R.reduce(out)


KOSZUL_GRADE_LIMIT = 4


def grade(I: Ideal, at_least: int | None = None) -> float:
    """Grade of a proper nonzero ideal.

    Uses Koszul homology for ideals with few minimal generators and a certified
    regular sequence otherwise.  ``at_least`` allows stopping once that bound is
    established (the returned value is then only a lower bound).
    """
    if I.is_zero():
        raise ValueError("grade of the zero ideal is not defined here")
    if I.is_unit():
        raise ValueError("grade of the unit ideal is not defined here")
    return _grade(I, at_least)


def _grade(I: Ideal, at_least: int | None = None) -> float:
    if I.is_unit():
        return INFINITE
    if I.is_zero():
        return 0
    if len(I.minimal_generators().generators) <= KOSZUL_GRADE_LIMIT:
        return koszul_grade(I, at_least)
    return regular_sequence_grade(I, at_least)


class RankProfile:
    """Per-differential rank, determinantal ideal and grade."""

    def __init__(self, complex_: ChainComplex, ranks: dict, ideals: dict, grades: dict):
        self.complex = complex_
        self.ranks = ranks
        self.ideals = ideals
        self.grades = grades

    def standard_conditions(self) -> list[int]:
        """Indices ``i`` where ``rank G_i != rank ∂_i + rank ∂_{i+1}``."""
        C = self.complex
        bad = []
        for i in range(1, C.length + 1):
            if C.module(i).rank != self.ranks.get(i, 0) + self.ranks.get(i + 1, 0):
                bad.append(i)
        return bad

    def satisfies_standard_conditions(self) -> bool:
        return not self.standard_conditions()

    def to_json(self) -> dict:
        return {
            "ranks": {str(i): r for i, r in sorted(self.ranks.items())},
            "grades": {str(i): _grade_json(g) for i, g in sorted(self.grades.items())},
            "ideals": {str(i): [str(g) for g in I.generators] for i, I in sorted(self.ideals.items())},
            "standard_conditions": self.satisfies_standard_conditions(),
        }


def _grade_json(g):
    return "inf" if g == INFINITE else g


def rank_profile(C: ChainComplex, with_grades: bool = True, cap: int = DEFAULT_MINOR_CAP) -> RankProfile:
    ranks, ideals, grades = {}, {}, {}
    for i in range(1, C.length + 1):
        r, I = map_rank(C.differential(i), cap)
        ranks[i] = r
        ideals[i] = I
        if with_grades:
            grades[i] = _grade(I)
    return RankProfile(C, ranks, ideals, grades)


class ExactnessCertificate:
    def __init__(self, exact: bool, failures: list[dict], profile: RankProfile):
        self.exact = exact
        self.failures = failures
        self.profile = profile

    def __bool__(self):
        return self.exact

    def to_json(self) -> dict:
        return {"exact": self.exact, "failures": self.failures, "profile": self.profile.to_json()}


def buchsbaum_eisenbud_exact(C: ChainComplex, cap: int = DEFAULT_MINOR_CAP) -> ExactnessCertificate:
    """Exactness in positive degrees from ranks of minors and their grades."""
    prof = rank_profile(C, with_grades=False, cap=cap)
    failures = []
    for i in prof.standard_conditions():
        failures.append({"index": i, "condition": "rank",
                         "detail": f"rank G_{i} = {C.module(i).rank} but rank ∂_{i} + rank ∂_{i + 1} = "
                                   f"{prof.ranks.get(i, 0) + prof.ranks.get(i + 1, 0)}"})
    for i in range(1, C.length + 1):
        g = _grade(prof.ideals[i], at_least=i)
        prof.grades[i] = g
        if g < i:
            failures.append({"index": i, "condition": "grade",
                             "detail": f"grade I(∂_{i}) = {g} < {i}"})
    failures.sort(key=lambda f: (f["index"], f["condition"]))
    return ExactnessCertificate(not failures, failures, prof)


def is_exact_by_homology(C: ChainComplex) -> bool:
    return all(homology(C, i).is_zero() for i in range(1, C.length + 1))


# -- the banded matrix and the power complex -------------------------------------

def banded_matrix(J_gens: Sequence, n: int, R) -> ModuleMap:
    """The ``n × (n+h-1)`` matrix with ``x_1..x_h`` shifted along each row."""
    R = as_quotient_ring(R)
    xs = [R(f) for f in J_gens]
    h = len(xs)
    cols = n + h - 1
    rows = [[R.zero() for _ in range(cols)] for _ in range(n)]
    for r in range(n):
        for k, f in enumerate(xs):
            rows[r][r + k] = f
    cols_ = [[rows[r][c] for r in range(n)] for c in range(cols)]
    try:
        return ModuleMap(FreeModule(R, [_col_degree(rows, c) for c in range(cols)]),
                         FreeModule(R, [0] * n), cols_)
    except HomogeneityError:
        return ModuleMap(FreeModule(R, [0] * cols), FreeModule(R, [0] * n), cols_, check=False)


def _col_degree(rows, c):
    for row in rows:
        if row[c].terms:
            return row[c].degree()
    return 0


def power_complex(J_gens: Sequence, n: int, R=None) -> ChainComplex:
    """A free resolution of ``R/J^n`` for ``J`` generated by a regular sequence."""
    from .groebner import ideal_power
    from .resolution import free_resolution

    if not J_gens:
        raise ValueError("need at least one generator")
    if R is None:
        R = J_gens[0].ring
    R = as_quotient_ring(R)
    J = Ideal(R, J_gens)
    if len(J.generators) != len(J_gens) or _grade(J) != len(J_gens):
        raise ValueError("generators do not form a regular sequence (grade check failed)")
    Jn = ideal_power(J, n)
    res = free_resolution(Subquotient.cyclic(Jn), len(J_gens) + 1)
    C = res.complex
    # trim trailing zero modules
    while C.length > 0 and C.module(C.length).rank == 0:
        C = ChainComplex(C.modules[:-1], C.differentials[:-1], check=False)
    return C


def presentation_differential(C: ChainComplex) -> ModuleMap:
    """``∂_2`` (the relations among the generators of the presented ideal)."""
    return C.differential(2)


# -- perturbations ----------------------------------------------------------------

def _injective(phi: ModuleMap) -> ExactnessCertificate:
    return buchsbaum_eisenbud_exact(ChainComplex.from_maps([phi]))


def two_term_perturbation_test(phi: ModuleMap, q: int, trials: int, rng_seed: int,
                               perturbations: Sequence[Sequence[Sequence]] | None = None) -> dict:
    """Perturb an injective ``G_1 -> G_0`` by graded entries in ``m^q``.

    Entry ``(i, j)`` of a random perturbation is a random form of the degree
    forced by the grading, or zero when that degree is below ``q`` (or below 1:
    units never enter a graded perturbation).  Explicit perturbation matrices
    may be supplied instead.
    """
    if q < 0:
        raise ValueError("q must be nonnegative")
    base = _injective(phi)
    if not base.exact:
        raise ValueError("the map is not injective: " + "; ".join(f["detail"] for f in base.failures))
    R = phi.ring
    rng = random.Random(rng_seed)
    rows = phi.matrix()
    nr, nc = phi.target.rank, phi.source.rank
    results = []
    mats = list(perturbations) if perturbations is not None else [None] * trials
    for t, given in enumerate(mats):
        if given is None:
            pert = []
            for i in range(nr):
                row = []
                for j in range(nc):
                    e = phi.source.degrees[j] - phi.target.degrees[i]
                    row.append(R.random_homogeneous(e, rng) if e >= max(q, 1) else R.zero())
                pert.append(row)
        else:
            pert = [[R(e) for e in row] for row in given]
        new_rows = [[R.reduce(rows[i][j] + pert[i][j]) for j in range(nc)] for i in range(nr)]
        new = ModuleMap(phi.source, phi.target,
                        [[new_rows[i][j] for i in range(nr)] for j in range(nc)], check=False)
        cert = _injective(new)
        results.append({
            "trial": t,
            "persists": cert.exact,
            "nonzero_entries": sum(1 for row in pert for e in row if e.terms),
            "failures": cert.failures,
        })
    persisted = sum(1 for r in results if r["persists"])
    return {
        "q": q,
        "trials": len(results),
        "persisted": persisted,
        "fraction": f"{persisted}/{len(results)}",
        "results": results,
    }


# -- the foundation homology check -----------------------------------------------

def _module_at(C: ChainComplex, k: int, M: Subquotient | None) -> Subquotient:
    """``M_k = G_k ⊗ M`` (or ``G_k`` itself) as a subquotient."""
    G = C.module(k)
    if M is None:
        return G.full()
    phi = M.presentation()
    R = C.ring
    a = phi.target.rank
    A = _tensor_free(G, phi.target)
    rels = [_vector_tensor(R, p_idx, col, a) for p_idx in range(G.rank) for col in phi.columns]
    return Subquotient(A, A.basis(), rels)


def _kills(f: Polynomial, H: Subquotient) -> bool:
    R = H.ring
    p = R.field.characteristic
    return all(H.is_relation(V.reduce(R, V.scale(g, f.terms, p))) for g in H.generators)


def hom_from_quotient(H: Subquotient, xs: Sequence[Polynomial]) -> Subquotient:
    """``{z in H : x z = 0 for all x}`` as a subquotient with the relations of ``H``."""
    from .modules import colon_module

    F = H.ambient
    W = H.submodule_part()
    rel = Subquotient(F, H.relations)
    for x in xs:
        if not x.terms:
            continue
        col = Subquotient(F, colon_module(list(H.relations), F, x)) if H.relations else \
            Subquotient(F, colon_module([], F, x))
        W = module_intersection(W, col)
    return Subquotient(F, W.generators, rel.generators)


def foundation_homology_check(C: ChainComplex, x_seq: Sequence, d_list: Sequence, d_elt,
                              M: Subquotient | None = None) -> dict:
    """Check the annihilation of ``Hom(R/(x), H_1(M_•))`` by ``(∏ d_i)·d^n``.

    ``M_•`` is ``C`` (or ``C ⊗ M``) padded with zeros to length ``n = len(x_seq)``.
    Returns ``status`` in {holds, conclusion-failure, hypothesis-failure}.
    """
    R = C.ring
    xs = [R(x) for x in x_seq]
    n = len(xs)
    ds = [R(d) for d in d_list]
    d = R(d_elt)
    if n < 1:
        raise ValueError("x_seq must be nonempty")
    if C.length > n:
        raise ValueError("the complex is longer than the sequence")
    if len(ds) != max(n - 1, 0):
        raise ValueError(f"need {max(n - 1, 0)} elements d_0..d_(n-2)")

    def H(k: int) -> Subquotient:
        if M is None:
            return homology(C, k)
        return tensor_homology(C, M, k)

    hyp_fail = []
    for i in range(0, n - 1):
        if not _kills(ds[i], H(n - i)):
            hyp_fail.append({"hypothesis": 1, "index": i, "detail": f"d_{i} does not kill H_{n - i}"})
    K = koszul_complex(xs, R)
    for j in range(1, n):
        Mj = _module_at(C, j + 1, M)
        Hk = tensor_homology(K, Mj, n - j)
        if not _kills(d, Hk):
            hyp_fail.append({"hypothesis": 2, "index": j,
                             "detail": f"d does not kill H_{n - j}(x; M_{j + 1})"})
    D = R.one()
    for di in ds:
        D = D * di
    D = R.reduce(D * d ** n)
    W = hom_from_quotient(H(1), xs)
    conclusion = _kills(D, W)
    if hyp_fail:
        status = "hypothesis-failure"
    elif conclusion:
        status = "holds"
    else:
        status = "conclusion-failure"
    return {"status": status, "conclusion": conclusion, "hypothesis_failures": hyp_fail,
            "D": str(D), "n": n}
