"""Buchberger engine for ideals and submodules of graded free modules.

Vectors are dicts ``term -> coefficient`` where a term packs the component
index above the exponent fields (see ``ring``).  A module order is an
injective *linear* functional on terms, so the key of ``m * t`` is
``key(t) + mono_key(m)`` and reduction never recomputes keys.

Module orders are degree-first term-over-position inside blocks, with blocks
compared first; giving some components a higher block makes the order an
elimination order for them, which is how syzygies, preimages and
intersections are extracted.
"""

from __future__ import annotations

from collections import defaultdict
from heapq import heapify, heappop, heappush
from itertools import combinations
from typing import Iterable, Sequence

from .ring import FIELD_BITS, PolyRing, _monomials_cached

_BLOCK_SPAN = 1 << 32


class _KeyCache(dict):
    __slots__ = ("fn",)

    def __init__(self, fn):
        super().__init__()
        self.fn = fn

    def __missing__(self, t):
        v = self.fn(t)
        self[t] = v
        return v


class ModuleOrder:
    """Term order on ``S^r`` with generator degrees ``degrees``.

    ``ideal=True`` (rank one only) uses the ring's own monomial order; the
    default is degree-first, then the ring order, then position, with
    ``blocks`` compared before everything else.
    """

    def __init__(self, ring: PolyRing, degrees: Sequence[int], blocks: Sequence[int] | None = None,
                 ideal: bool = False):
        self.ring = ring
        self.degrees = list(degrees)
        self.ncomp = nc = len(self.degrees)
        self.blocks = list(blocks) if blocks is not None else [0] * nc
        self.ideal = ideal
        if ideal and nc != 1:
            raise ValueError("ideal orders have a single component")
        self.shift = ring.comp_shift
        self.mask = ring.exp_mask
        self._dr = ring.key_span * 2
        self._kappa = [
            ((self.blocks[c] * _BLOCK_SPAN + self.degrees[c]) * self._dr) * nc + (nc - 1 - c)
            for c in range(nc)
        ]
        self.key = _KeyCache(self._key)

    def _key(self, t: int) -> int:
        ring = self.ring
        E = t & self.mask
        if self.ideal:
            return ring.order_key(E)
        c = t >> self.shift
        return self._kappa[c] + (ring.wdeg(E) * self._dr + ring.order_key(E)) * self.ncomp

    def mono_key(self, m: int) -> int:
        ring = self.ring
        if self.ideal:
            return ring.order_key(m)
        return (ring.wdeg(m) * self._dr + ring.order_key(m)) * self.ncomp

    def deg(self, t: int) -> int:
        return self.ring.wdeg(t & self.mask) + self.degrees[t >> self.shift]

    def vec_degree(self, v: dict) -> int | None:
        """Common degree of a homogeneous vector, or None if inhomogeneous."""
        degs = {self.deg(t) for t in v}
        if len(degs) == 1:
            return degs.pop()
        return None


class _Elem:
    __slots__ = ("lt", "ltk", "tail", "comp", "sugar", "alive", "idx")

    def __init__(self, terms, comp, sugar, idx):
        # terms: list of (key, term, coeff) sorted by decreasing key, monic
        self.ltk, self.lt, _ = terms[0]
        self.tail = terms[1:]
        self.comp = comp
        self.sugar = sugar
        self.alive = True
        self.idx = idx

    def as_dict(self) -> dict:
        d = {self.lt: 1}
        for _, t, c in self.tail:
            d[t] = c
        return d


def _reduce(work: dict, tmap: dict, active: dict, shift: int, guard: int, p: int, full: bool) -> dict:
    """Reduce ``work`` (key -> coeff) by ``active`` (comp -> monic elems).

    Returns the remainder as key -> coeff; ``tmap`` maps keys to terms and is
    extended in place.  With ``full=False`` stops at the first irreducible
    leading term.
    """
    heap = [-k for k in work]
    heapify(heap)
    rem = {}
    pop = work.pop
    get = work.get
    while heap:
        k = -heappop(heap)
        c = pop(k, None)
        if c is None:
            continue
        t = tmap[k]
        red = None
        for g in active.get(t >> shift, ()):
            if not ((t - g.lt) & guard):
                red = g
                break
        if red is None:
            rem[k] = c
            if not full:
                rem.update(work)
                return rem
            continue
        dk = k - red.ltk
        dt = t - red.lt
        if p:
            for gk, gt, gc in red.tail:
                nk = gk + dk
                v = get(nk)
                if v is None:
                    work[nk] = (-c * gc) % p
                    tmap[nk] = gt + dt
                    heappush(heap, -nk)
                else:
                    v = (v - c * gc) % p
                    if v:
                        work[nk] = v
                    else:
                        del work[nk]
        else:
            for gk, gt, gc in red.tail:
                nk = gk + dk
                v = get(nk)
                if v is None:
                    work[nk] = -c * gc
                    tmap[nk] = gt + dt
                    heappush(heap, -nk)
                else:
                    v = v - c * gc
                    if v:
                        work[nk] = v
                    else:
                        del work[nk]
    return rem


class GroebnerEngine:
    """Incremental Buchberger computation with Gebauer-Möller pair pruning.

    Generators and S-pairs share one queue ordered by (sugar) degree.  For
    homogeneous input ``complete(D)`` yields a basis that is correct for
    every element of degree <= D.
    """

    def __init__(self, order: ModuleOrder):
        self.order = order
        self.ring = order.ring
        self.p = self.ring.field.characteristic
        self.shift = self.ring.comp_shift
        self.guard = self.ring.guard
        self.ideal_mode = order.ideal
        self.elems: list[_Elem] = []
        self.active: dict[int, list[_Elem]] = defaultdict(list)
        self.queue: list = []
        self.pairs: dict[int, dict[int, tuple]] = defaultdict(dict)
        self.homogeneous = True
        self._seq = 0
        self.npairs = 0

    # -- input ------------------------------------------------------------
    def _terms(self, v: dict):
        key = self.order.key
        return sorted(((key[t], t, c) for t, c in v.items()), reverse=True)

    def preload(self, vectors: Iterable[dict]):
        """Insert vectors already forming a Gröbner basis among themselves.

        Must be called before any other input; no pairs are formed among them.
        """
        if self.elems or self.queue:
            raise RuntimeError("preload must precede other input")
        for v in vectors:
            if v:
                self._insert(self._make_monic(self._terms(v)), form_pairs=False)

    def add(self, v: dict):
        if not v:
            return
        d = self.order.vec_degree(v)
        if d is None:
            self.homogeneous = False
            d = max(self.order.deg(t) for t in v)
        self._seq += 1
        heappush(self.queue, (d, 0, self._seq, v))

    def extend(self, vectors: Iterable[dict]):
        for v in vectors:
            self.add(v)

    # -- core -------------------------------------------------------------
    def _make_monic(self, terms):
        c0 = terms[0][2]
        if c0 == 1:
            return terms
        p = self.p
        if p:
            inv = pow(c0, -1, p)
            return [(k, t, (c * inv) % p) for k, t, c in terms]
        return [(k, t, c / c0) for k, t, c in terms]

    def _insert(self, terms, form_pairs=True, sugar=None):
        t0 = terms[0][1]
        comp = t0 >> self.shift
        if sugar is None:
            sugar = max(self.order.deg(t) for _, t, _ in terms)
        h = _Elem(terms, comp, sugar, len(self.elems))
        self.elems.append(h)
        if form_pairs:
            self._update(h)
        act = self.active[comp]
        guard = self.guard
        act[:] = [g for g in act if (g.lt - h.lt) & guard]
        act.append(h)
        return h

    def _update(self, h: _Elem):
        ring = self.ring
        comp = h.comp
        hexp = ring.unpack(h.lt)
        cand = []
        for g in self.active[comp]:
            gexp = ring.unpack(g.lt)
            lcm = tuple(max(a, b) for a, b in zip(gexp, hexp))
            coprime = self.ideal_mode and all(a == 0 or b == 0 for a, b in zip(gexp, hexp))
            cand.append((g, lcm, coprime))
        # Gebauer-Möller criteria M and F on the new pairs
        kept = []
        for idx, (g, lcm, coprime) in enumerate(cand):
            if coprime:
                kept.append((g, lcm, coprime))
                continue
            dominated = False
            for g2, lcm2, _ in cand[idx + 1:]:
                if all(a <= b for a, b in zip(lcm2, lcm)):
                    dominated = True
                    break
            if not dominated:
                for g2, lcm2, _ in kept:
                    if all(a <= b for a, b in zip(lcm2, lcm)):
                        dominated = True
                        break
            if not dominated:
                kept.append((g, lcm, coprime))
        # criterion B on old pairs
        old = self.pairs[comp]
        if old:
            dead = []
            for seq, (g1, g2, lcm) in old.items():
                if all(a <= b for a, b in zip(hexp, lcm)):
                    l1 = tuple(max(a, b) for a, b in zip(ring.unpack(g1.lt), hexp))
                    l2 = tuple(max(a, b) for a, b in zip(ring.unpack(g2.lt), hexp))
                    if l1 != lcm and l2 != lcm:
                        dead.append(seq)
            for seq in dead:
                del old[seq]
        cshift = comp << self.shift
        deg = self.order.deg
        for g, lcm, coprime in kept:
            if coprime:
                continue
            L = ring.pack(lcm) | cshift
            if self.homogeneous:
                d = deg(L)
            else:
                wl = ring.wdeg(L & ring.exp_mask)
                d = max(g.sugar + wl - ring.wdeg(g.lt & ring.exp_mask),
                        h.sugar + wl - ring.wdeg(h.lt & ring.exp_mask))
            self._seq += 1
            old[self._seq] = (g, h, lcm)
            heappush(self.queue, (d, 1, self._seq, (g, h, L, comp)))

    def _spoly(self, g1: _Elem, g2: _Elem, L: int):
        key = self.order.key
        kL = key[L]
        work = {}
        tmap = {}
        p = self.p
        for g, sign in ((g1, 1), (g2, -1)):
            dk = kL - g.ltk
            dt = L - g.lt
            for gk, gt, gc in g.tail:
                nk = gk + dk
                v = work.get(nk, 0) + sign * gc
                if p:
                    v %= p
                if v:
                    work[nk] = v
                    tmap[nk] = gt + dt
                else:
                    work.pop(nk, None)
        return work, tmap

    def complete(self, limit: int | None = None):
        """Process queued generators and pairs up to degree ``limit``."""
        queue = self.queue
        while queue:
            if limit is not None and self.homogeneous and queue[0][0] > limit:
                break
            d, kind, seq, payload = heappop(queue)
            if kind == 1:
                g1, g2, L, comp = payload
                if self.pairs[comp].pop(seq, None) is None:
                    continue
                self.npairs += 1
                work, tmap = self._spoly(g1, g2, L)
            else:
                key = self.order.key
                work = {key[t]: c for t, c in payload.items()}
                tmap = {key[t]: t for t in payload}
            if not work:
                continue
            rem = _reduce(work, tmap, self.active, self.shift, self.guard, self.p, True)
            if rem:
                terms = sorted(((k, tmap[k], c) for k, c in rem.items()), reverse=True)
                self._insert(self._make_monic(terms), sugar=d)

    # -- queries ----------------------------------------------------------
    def reduce(self, v: dict) -> dict:
        """Normal form of ``v`` against the current basis (term -> coeff)."""
        if not v:
            return {}
        key = self.order.key
        work = {key[t]: c for t, c in v.items()}
        tmap = {key[t]: t for t in v}
        rem = _reduce(work, tmap, self.active, self.shift, self.guard, self.p, True)
        return {tmap[k]: c for k, c in rem.items()}

    def contains(self, v: dict) -> bool:
        if not v:
            return True
        d = self.order.vec_degree(v)
        self.complete(d if (d is not None and self.homogeneous) else None)
        return not self.reduce(v)

    def basis(self) -> list[dict]:
        """Reduced Gröbner basis (after completing the computation)."""
        self.complete()
        out = []
        tmap = {}
        for comp in sorted(self.active):
            for g in self.active[comp]:
                work = {}
                for k, t, c in g.tail:
                    work[k] = c
                    tmap[k] = t
                rem = _reduce(work, tmap, self.active, self.shift, self.guard, self.p, True)
                v = {g.lt: 1}
                for k, c in rem.items():
                    v[tmap[k]] = c
                out.append((g.ltk, v))
        out.sort(key=lambda x: x[0])
        return [v for _, v in out]

    def leading_terms(self) -> list[int]:
        self.complete()
        return [g.lt for comp in sorted(self.active) for g in self.active[comp]]

    def active_vectors(self) -> list[dict]:
        return [g.as_dict() for comp in sorted(self.active) for g in self.active[comp]]


# -- ideal helpers ----------------------------------------------------------

def ideal_groebner(ring: PolyRing, polys: Sequence[dict]) -> list[dict]:
    """Reduced Gröbner basis (ring order) of the ideal generated by ``polys``."""
    eng = GroebnerEngine(ModuleOrder(ring, [0], ideal=True))
    eng.extend(p for p in polys if p)
    return eng.basis()


class IdealReducer:
    """Normal forms modulo a fixed Gröbner basis in the ring order."""

    def __init__(self, ring: PolyRing, basis: Sequence[dict]):
        self.engine = GroebnerEngine(ModuleOrder(ring, [0], ideal=True))
        self.engine.preload(basis)

    def reduce(self, f: dict) -> dict:
        return self.engine.reduce(f)


def leading_term(ring: PolyRing, order: ModuleOrder, v: dict) -> int:
    return max(v, key=order.key.__getitem__)


# -- monomial combinatorics ------------------------------------------------

def _supports(ring: PolyRing, leads: Iterable[int]):
    out = []
    for E in leads:
        e = ring.unpack(E)
        out.append(frozenset(i for i, a in enumerate(e) if a))
    return out


def monomial_dimension(ring: PolyRing, leads: Sequence[int]) -> int:
    """Krull dimension of S/(leads); -1 when the ideal is the unit ideal."""
    n = ring.nvars
    sups = _supports(ring, leads)
    if any(not s for s in sups):
        return -1
    sups = [s for s in sups if not any(o < s for o in sups)]
    for size in range(n, -1, -1):
        for U in combinations(range(n), size):
            Us = set(U)
            if not any(s <= Us for s in sups):
                return size
    return 0


def _minimalize(gens: list[tuple]) -> list[tuple]:
    gens = sorted(set(gens), key=sum)
    out = []
    for g in gens:
        if not any(all(a <= b for a, b in zip(h, g)) for h in out):
            out.append(g)
    return out


def _poly_mul_t(a: dict, b: dict) -> dict:
    out = defaultdict(int)
    for i, x in a.items():
        for j, y in b.items():
            out[i + j] += x * y
    return {k: v for k, v in out.items() if v}


def _poly_add_t(a: dict, b: dict, sign=1) -> dict:
    out = dict(a)
    for k, v in b.items():
        out[k] = out.get(k, 0) + sign * v
    return {k: v for k, v in out.items() if v}


def hilbert_numerator(gens: Sequence[tuple], weights: Sequence[int]) -> dict:
    """Numerator N(t) with HS(S/J) = N(t) / prod(1 - t^w_i), J monomial."""
    gens = _minimalize([tuple(g) for g in gens])
    return _hnum(tuple(gens), tuple(weights))


def _hnum(gens: tuple, weights: tuple) -> dict:
    if not gens:
        return {0: 1}
    if any(sum(g) == 0 for g in gens):
        return {}

    def wd(g):
        return sum(a * w for a, w in zip(g, weights))

    coprime = True
    seen = set()
    for g in gens:
        s = {i for i, a in enumerate(g) if a}
        if s & seen:
            coprime = False
            break
        seen |= s
    if coprime:
        out = {0: 1}
        for g in gens:
            out = _poly_mul_t(out, {0: 1, wd(g): -1})
        return out
    # pivot on a pure power dividing a mixed generator; it is never in J
    n = len(weights)
    counts = [sum(1 for g in gens if g[i]) for i in range(n)]
    mixed = [g for g in gens if sum(1 for a in g if a) > 1]
    g0 = mixed[0]
    var = max((i for i in range(n) if g0[i]), key=lambda i: counts[i])
    e = g0[var]
    piv = tuple(e if i == var else 0 for i in range(n))
    with_p = _minimalize(list(gens) + [piv])
    colon = _minimalize([tuple(max(a - b, 0) for a, b in zip(g, piv)) for g in gens])
    left = _hnum(tuple(with_p), weights)
    right = _hnum(tuple(colon), weights)
    return _poly_add_t(left, {k + wd(piv): v for k, v in right.items()})


def count_monomials(nvars: int, weights: tuple, degree: int) -> int:
    if degree < 0:
        return 0
    return len(_monomials_cached(nvars, tuple(weights), degree))


def hilbert_values(numerator: dict, nvars: int, weights: Sequence[int], degrees: Iterable[int]) -> list[int]:
    weights = tuple(weights)
    out = []
    for D in degrees:
        out.append(sum(c * count_monomials(nvars, weights, D - j) for j, c in numerator.items()))
    return out


def hilbert_polynomial_part(numerator: dict, weights: Sequence[int]) -> dict | None:
    """Divide N(t) by prod(1 - t^w); the Hilbert series as a polynomial, or None
    when the module has infinite length."""
    num = dict(numerator)
    for w in weights:
        if not num:
            break
        # divide by (1 - t^w): q_k = num_k + q_{k-w}
        lo, hi = min(num), max(num)
        q = {}
        for k in range(lo, hi + 1):
            v = num.get(k, 0) + q.get(k - w, 0)
            if v:
                q[k] = v
        # remainder check: q*(1-t^w) must reproduce num exactly
        check = _poly_add_t(q, {k + w: v for k, v in q.items()}, -1)
        if check != {k: v for k, v in num.items() if v}:
            return None
        num = q
    return num


def unit_vector(ring: PolyRing, comp: int, coeff=1) -> dict:
    return {comp << ring.comp_shift: coeff}


FIELD_BITS = FIELD_BITS
