"""Graded free modules, maps between them, and subquotients.

A vector of ``R^r`` is stored as a packed-term dict; the public API also
accepts a list of polynomials.  Basis vectors carry a *degree*: the free
module written ``R(-a)`` elsewhere has a basis vector of degree ``a``.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from . import _kernel
from . import _vectors as V
from .groebner import Ideal, as_quotient_ring, ideal_intersection
from .ring import HomogeneityError, Polynomial, QuotientRing, parse_matrix


class FreeModule:
    """``R^r`` with a degree for each basis vector."""

    def __init__(self, ring, degrees: Sequence[int] | int):
        self.ring: QuotientRing = as_quotient_ring(ring)
        if isinstance(degrees, int):
            degrees = [0] * degrees
        self.degrees: tuple[int, ...] = tuple(int(d) for d in degrees)

    @property
    def rank(self) -> int:
        return len(self.degrees)

    @property
    def twists(self) -> tuple[int, ...]:
        return tuple(-d for d in self.degrees)

    def __repr__(self):
        return f"FreeModule(rank={self.rank}, degrees={list(self.degrees)})"

    def __eq__(self, other):
        return isinstance(other, FreeModule) and self.ring == other.ring and self.degrees == other.degrees

    def __hash__(self):
        return hash((self.ring, self.degrees))

    def basis(self) -> list[dict]:
        S = self.ring.ambient.comp_shift
        return [{c << S: 1} for c in range(self.rank)]

    def vector(self, entries) -> dict:
        """Coerce a list of polynomials (or a vector dict) into a reduced vector."""
        if isinstance(entries, dict):
            return V.reduce(self.ring, entries)
        entries = list(entries)
        if len(entries) != self.rank:
            raise ValueError(f"vector has {len(entries)} entries, module rank is {self.rank}")
        R = self.ring
        return V.from_polys(R, [R(e) for e in entries])

    def entries(self, v: dict) -> list[Polynomial]:
        return V.to_polys(self.ring, v, self.rank)

    def degree_of(self, v: dict) -> int | None:
        return V.degree(self.ring, self.degrees, v)

    def direct_sum(self, other: FreeModule) -> FreeModule:
        return FreeModule(self.ring, self.degrees + other.degrees)

    def full(self) -> Subquotient:
        return Subquotient(self, self.basis())

    def is_homogeneous(self, v: dict) -> bool:
        return not v or self.degree_of(v) is not None


class ModuleMap:
    """Homomorphism ``source -> target`` stored by the images of basis vectors."""

    def __init__(self, source: FreeModule, target: FreeModule, columns: Sequence, check: bool = True):
        if source.ring != target.ring:
            raise ValueError("source and target live in different rings")
        self.source = source
        self.target = target
        cols = [target.vector(c) for c in columns]
        if len(cols) != source.rank:
            raise ValueError(f"map has {len(cols)} columns but the source has rank {source.rank}")
        self.columns: tuple[dict, ...] = tuple(cols)
        if check:
            for j, col in enumerate(cols):
                d = target.degree_of(col)
                if col and d != source.degrees[j]:
                    raise HomogeneityError(
                        f"column {j} has degree {d}, expected {source.degrees[j]}")

    @property
    def ring(self) -> QuotientRing:
        return self.source.ring

    @classmethod
    def from_matrix(cls, ring, rows, target_degrees: Sequence[int] | None = None,
                    source_degrees: Sequence[int] | None = None) -> ModuleMap:
        """Build a graded map from a row-major matrix (text or nested lists).

        Missing source degrees are inferred from the first nonzero entry of each
        column; zero columns get degree 0 unless given.
        """
        R = as_quotient_ring(ring)
        if isinstance(rows, str) or (rows and isinstance(rows[0], (list, tuple)) and rows[0]
                                     and isinstance(rows[0][0], str)):
            rows = parse_matrix(R.ambient, rows)
        rows = [[R(e) for e in row] for row in rows]
        nr = len(rows)
        nc = len(rows[0]) if rows else 0
        if any(len(r) != nc for r in rows):
            raise ValueError("matrix rows have different lengths")
        tdeg = list(target_degrees) if target_degrees is not None else [0] * nr
        if source_degrees is None:
            sdeg = []
            for j in range(nc):
                d = 0
                for i in range(nr):
                    if rows[i][j].terms:
                        d = rows[i][j].degree() + tdeg[i]
                        break
                sdeg.append(d)
        else:
            sdeg = list(source_degrees)
        target = FreeModule(R, tdeg)
        source = FreeModule(R, sdeg)
        cols = [[rows[i][j] for i in range(nr)] for j in range(nc)]
        return cls(source, target, cols)

    @classmethod
    def identity(cls, F: FreeModule) -> ModuleMap:
        return cls(F, F, F.basis())

    @classmethod
    def zero(cls, source: FreeModule, target: FreeModule) -> ModuleMap:
        return cls(source, target, [{}] * source.rank)

    def matrix(self) -> list[list[Polynomial]]:
        cols = [self.target.entries(c) for c in self.columns]
        return [[cols[j][i] for j in range(self.source.rank)] for i in range(self.target.rank)]

    def entry(self, i: int, j: int) -> Polynomial:
        return self.target.entries(self.columns[j])[i]

    def __repr__(self):
        rows = self.matrix()
        body = "; ".join(", ".join(str(e) for e in row) for row in rows)
        return f"ModuleMap({self.target.rank}x{self.source.rank}: [{body}])"

    def apply(self, v) -> dict:
        if not isinstance(v, dict):
            v = self.source.vector(v)
        R = self.ring
        p = R.field.characteristic
        out: dict = {}
        for c, f in enumerate(self.source.entries(v)):
            if f.terms and self.columns[c]:
                out = V.add(out, V.scale(self.columns[c], f.terms, p), p)
        return V.reduce(R, out)

    def compose(self, other: ModuleMap) -> ModuleMap:
        """``self ∘ other``."""
        if other.target.rank != self.source.rank:
            raise ValueError("maps are not composable")
        return ModuleMap(other.source, self.target, [self.apply(c) for c in other.columns], check=False)

    def is_zero(self) -> bool:
        return not any(self.columns)

    def image(self) -> Subquotient:
        return Subquotient(self.target, self.columns)

    def cokernel(self) -> Subquotient:
        return Subquotient(self.target, self.target.basis(), self.columns)

    def transpose(self) -> ModuleMap:
        """The dual map ``Hom(target, R) -> Hom(source, R)`` with negated degrees."""
        src = FreeModule(self.ring, [-d for d in self.target.degrees])
        tgt = FreeModule(self.ring, [-d for d in self.source.degrees])
        rows = self.matrix()
        cols = [[rows[i][j] for j in range(self.source.rank)] for i in range(self.target.rank)]
        return ModuleMap(src, tgt, cols, check=False)

    def has_unit_entry(self) -> bool:
        mask = self.ring.ambient.exp_mask
        return any((T & mask) == 0 for col in self.columns for T in col)


class Subquotient:
    """``(span(generators) + span(relations)) / span(relations)`` inside a free module."""

    def __init__(self, ambient: FreeModule, generators: Iterable = (), relations: Iterable = ()):
        self.ambient = ambient
        self.generators: tuple[dict, ...] = tuple(g for g in (ambient.vector(v) for v in generators) if g)
        self.relations: tuple[dict, ...] = tuple(r for r in (ambient.vector(v) for v in relations) if r)
        self._rel_engine = None
        self._full_engine = None

    @property
    def ring(self) -> QuotientRing:
        return self.ambient.ring

    def __repr__(self):
        return (f"Subquotient(rank {self.ambient.rank}, {len(self.generators)} generators, "
                f"{len(self.relations)} relations)")

    @classmethod
    def cyclic(cls, I: Ideal) -> Subquotient:
        """``R/I`` as a quotient of ``R^1``."""
        F = FreeModule(I.ring, [0])
        return cls(F, F.basis(), [{g_E: a for g_E, a in g.terms.items()} for g in I.generators])

    @classmethod
    def from_map(cls, phi: ModuleMap) -> Subquotient:
        return phi.image()

    # -- engines --------------------------------------------------------------
    def relation_engine(self) -> _kernel.GroebnerEngine:
        if self._rel_engine is None:
            self._rel_engine = V.submodule_engine(self.ring, self.ambient.degrees, self.relations)
        return self._rel_engine

    def full_engine(self) -> _kernel.GroebnerEngine:
        if self._full_engine is None:
            self._full_engine = V.submodule_engine(
                self.ring, self.ambient.degrees, self.generators + self.relations)
        return self._full_engine

    def is_homogeneous(self) -> bool:
        F = self.ambient
        return all(F.is_homogeneous(v) for v in self.generators + self.relations)

    # -- predicates -------------------------------------------------------------
    def contains(self, v) -> bool:
        """Membership in ``span(generators) + span(relations)``."""
        v = self.ambient.vector(v)
        return not v or self.full_engine().contains(v)

    def is_relation(self, v) -> bool:
        v = self.ambient.vector(v)
        return not v or self.relation_engine().contains(v)

    def is_zero(self) -> bool:
        return all(self.is_relation(g) for g in self.generators)

    def is_submodule(self) -> bool:
        return not self.relations

    def span_contains(self, other: Subquotient) -> bool:
        """``span(other) ⊆ span(self)`` as submodules of the ambient module."""
        return all(self.contains(g) for g in other.generators + other.relations)

    def same_span(self, other: Subquotient) -> bool:
        return self.span_contains(other) and other.span_contains(self)

    # -- constructions ------------------------------------------------------
    def submodule_part(self) -> Subquotient:
        """``span(generators) + span(relations)`` as a plain submodule."""
        return Subquotient(self.ambient, self.generators + self.relations)

    def relation_module(self) -> Subquotient:
        return Subquotient(self.ambient, self.relations)

    def times_ideal(self, I: Ideal) -> Subquotient:
        """``I·span(generators)`` (relations kept)."""
        R = self.ring
        p = R.field.characteristic
        gens = [V.reduce(R, V.scale(g, f.terms, p)) for f in I.generators for g in self.generators]
        return Subquotient(self.ambient, gens, self.relations)

    def minimize(self) -> Subquotient:
        """Prune generators to a minimal set (graded Nakayama)."""
        gens = V.minimal_subset(self.ring, self.ambient.degrees, self.generators, self.relations)
        return Subquotient(self.ambient, gens, self.relations)

    def minimal_generator_count(self) -> int:
        return len(self.minimize().generators)

    def generator_degrees(self) -> list[int]:
        out = []
        for g in self.generators:
            d = self.ambient.degree_of(g)
            out.append(d if d is not None else V.max_degree(self.ring, self.ambient.degrees, g))
        return out

    def presentation(self, minimal: bool = True) -> ModuleMap:
        """A map ``phi: R^k -> R^m`` whose cokernel is isomorphic to this module."""
        M = self.minimize() if minimal else self
        R = self.ring
        m_deg = M.generator_degrees()
        F0 = FreeModule(R, m_deg)
        rels = V.preimage(R, M.ambient.degrees, M.generators, m_deg, M.relations)
        if minimal:
            rels = V.minimal_subset(R, m_deg, rels)
        k_deg = [V.degree(R, m_deg, r) if V.degree(R, m_deg, r) is not None
                 else V.max_degree(R, m_deg, r) for r in rels]
        return ModuleMap(FreeModule(R, k_deg), F0, rels, check=False)

    def as_cokernel(self, minimal: bool = True) -> Subquotient:
        return self.presentation(minimal).cokernel()

    def hilbert_numerator(self) -> dict:
        if not self.is_homogeneous():
            raise HomogeneityError("Hilbert series needs homogeneous data")
        R = self.ring
        deg = self.ambient.degrees
        a = V.hilbert_numerator(R, deg, self.relations)
        b = V.hilbert_numerator(R, deg, self.generators + self.relations)
        return {k: v for k, v in V_sub(a, b).items() if v}

    def hilbert_function(self, degrees: Iterable[int]) -> list[int]:
        ring = self.ring.ambient
        return _kernel.hilbert_values(self.hilbert_numerator(), ring.nvars, ring.weights, degrees)

    def hilbert_series_polynomial(self) -> dict | None:
        return _kernel.hilbert_polynomial_part(self.hilbert_numerator(), self.ring.ambient.weights)

    def length(self) -> int | None:
        poly = self.hilbert_series_polynomial()
        return None if poly is None else sum(poly.values())

    def dimension(self) -> int:
        """Krull dimension; -1 for the zero module."""
        pres = self.presentation(minimal=False)
        return V.quotient_dimension(self.ring, pres.target.degrees, pres.columns)


def V_sub(a: dict, b: dict) -> dict:
    out = dict(a)
    for k, v in b.items():
        out[k] = out.get(k, 0) - v
    return out


def _as_submodule_vectors(N: Subquotient) -> tuple[dict, ...]:
    return N.generators + N.relations


# -- operations -----------------------------------------------------------------

def syzygy_matrix(phi: ModuleMap, minimal: bool = True) -> ModuleMap:
    """A map whose columns generate ``ker(phi)``."""
    R = phi.ring
    src = phi.source
    syz = V.preimage(R, phi.target.degrees, phi.columns, src.degrees)
    if minimal:
        syz = V.minimal_subset(R, src.degrees, syz)
    degs = [src.degree_of(s) if src.degree_of(s) is not None else V.max_degree(R, src.degrees, s)
            for s in syz]
    return ModuleMap(FreeModule(R, degs), src, syz, check=False)


def kernel(phi: ModuleMap) -> Subquotient:
    return syzygy_matrix(phi).image()


def preimage_module(phi: ModuleMap, N: Subquotient) -> Subquotient:
    """``phi^{-1}(span N)`` as a submodule of the source."""
    R = phi.ring
    gens = V.preimage(R, phi.target.degrees, phi.columns, phi.source.degrees, _as_submodule_vectors(N))
    return Subquotient(phi.source, V.minimal_subset(R, phi.source.degrees, gens))


def module_intersection(N1: Subquotient, N2: Subquotient) -> Subquotient:
    """``N1 ∩ N2`` for submodules of a common free module (relations are folded in)."""
    if N1.ambient != N2.ambient:
        raise ValueError("modules live in different free modules")
    R = N1.ring
    deg = N1.ambient.degrees
    gens = V.intersect(R, deg, _as_submodule_vectors(N1), _as_submodule_vectors(N2))
    return Subquotient(N1.ambient, V.minimal_subset(R, deg, gens))


def module_sum(*mods: Subquotient) -> Subquotient:
    F = mods[0].ambient
    gens = []
    for N in mods:
        if N.ambient != F:
            raise ValueError("modules live in different free modules")
        gens.extend(_as_submodule_vectors(N))
    return Subquotient(F, gens)


def module_membership(v, N: Subquotient) -> bool:
    if not isinstance(v, dict):
        v = list(v)
        if len(v) != N.ambient.rank:
            raise ValueError("vector rank does not match the module")
    return N.contains(v)


def annihilator(M: Subquotient) -> Ideal:
    """``{r : r·M = 0}``, the intersection of the colons ``(relations : g)``."""
    R = M.ring
    deg = M.ambient.degrees
    out = Ideal.unit(R)
    for g in M.minimize().generators:
        col = Ideal(R, [Polynomial(R.ambient, t) for t in V.colon(R, deg, M.relations, g)])
        out = ideal_intersection(out, col) if not out.is_unit() else col.minimal_generators()
        if out.is_zero():
            break
    return out


def colon_module(U: Sequence[dict], F: FreeModule, f: Polynomial) -> list[dict]:
    """Generators of ``(span U :_F f)``."""
    R = F.ring
    cols = [V.scale(e, f.terms, R.field.characteristic) for e in F.basis()]
    gens = V.preimage(R, F.degrees, [V.reduce(R, c) for c in cols],
                      [d + f.degree() for d in F.degrees] if f.is_homogeneous() else list(F.degrees), U)
    return V.minimal_subset(R, F.degrees, gens)


def colon_capture(N: Subquotient, J: Ideal, f, within: bool = True) -> Subquotient:
    """``{v : f^s v in J·N for some s}``, iterating the single colon to stability.

    With ``within=True`` the answer is intersected with ``N`` (the colon taken
    inside ``N``); relations of ``N`` are carried along.
    """
    R = N.ring
    f = R(f)
    if not f.terms:
        raise ValueError("cannot take the colon by zero")
    F = N.ambient
    base = list(N.times_ideal(J).generators) + list(N.relations)
    cur = Subquotient(F, base)
    iterations = 0
    while True:
        nxt = Subquotient(F, colon_module(cur.generators, F, f))
        iterations += 1
        if cur.span_contains(nxt):
            break
        cur = nxt
    if within:
        gens = module_intersection(cur, N.submodule_part()).generators
    else:
        gens = cur.generators
    out = Subquotient(F, gens, N.relations)
    out.iterations = iterations
    return out


def module_hilbert_function(M: Subquotient, degrees: Iterable[int]) -> list[int]:
    return M.hilbert_function(degrees)


def hilbert_window(*mods: Subquotient, default_span: int = 8) -> range:
    """A degree window covering all nonzero pieces of finite-length modules.

    For modules of infinite length the window is ``[min generator degree,
    max generator degree + default_span]``.
    """
    lo, hi = None, None
    for M in mods:
        poly = M.hilbert_series_polynomial()
        if poly is not None:
            ks = [k for k, v in poly.items() if v]
            if ks:
                lo = min(ks) if lo is None else min(lo, min(ks))
                hi = max(ks) if hi is None else max(hi, max(ks))
            continue
        degs = M.generator_degrees() or [0]
        lo = min(degs) if lo is None else min(lo, min(degs))
        hi = max(degs) + default_span if hi is None else max(hi, max(degs) + default_span)
    if lo is None:
        return range(0, 1)
    return range(lo, hi + 1)


def same_hilbert_series(A: Subquotient, B: Subquotient) -> bool:
    """Exact equality of Hilbert series numerators."""
    return {k: v for k, v in A.hilbert_numerator().items() if v} == \
        {k: v for k, v in B.hilbert_numerator().items() if v}
