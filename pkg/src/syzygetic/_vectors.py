"""Vector-level algorithms over a graded quotient ring ``R = S/Q``.

A vector of ``R^r`` is a packed-term dict (component index above the
exponent bits).  Every submodule of ``R^r`` is handled through its lift
``N + Q·S^r``; engines therefore start with ``Q·e_c`` preloaded on each
component.  All routines here are exact and deterministic.
"""

from __future__ import annotations

from collections import defaultdict
from typing import Sequence

from . import _kernel
from ._kernel import GroebnerEngine, ModuleOrder
from .ring import Polynomial, QuotientRing


def shift_of(R: QuotientRing) -> int:
    return R.ambient.comp_shift


def from_polys(R: QuotientRing, polys: Sequence[Polynomial]) -> dict:
    S = shift_of(R)
    v = {}
    for c, f in enumerate(polys):
        base = c << S
        for E, a in f.terms.items():
            v[base | E] = a
    return v


def to_polys(R: QuotientRing, v: dict, rank: int) -> list[Polynomial]:
    S = shift_of(R)
    mask = R.ambient.exp_mask
    parts = [dict() for _ in range(rank)]
    for T, a in v.items():
        parts[T >> S][T & mask] = a
    return [Polynomial(R.ambient, p) for p in parts]


def component(R: QuotientRing, v: dict, c: int) -> dict:
    S = shift_of(R)
    mask = R.ambient.exp_mask
    return {T & mask: a for T, a in v.items() if T >> S == c}


def add(a: dict, b: dict, p: int, sign: int = 1) -> dict:
    out = dict(a)
    for T, c in b.items():
        v = out.get(T, 0) + sign * c
        if p:
            v %= p
        if v:
            out[T] = v
        else:
            out.pop(T, None)
    return out


def scale(v: dict, f: dict, p: int) -> dict:
    """Product of the vector ``v`` with the polynomial (terms) ``f``."""
    out: dict = defaultdict(int)
    for T, a in v.items():
        for E, b in f.items():
            out[T + E] += a * b
    if p:
        return {T: c % p for T, c in out.items() if c % p}
    return {T: c for T, c in out.items() if c}


def scalar(v: dict, c, p: int) -> dict:
    if p:
        return {T: (a * c) % p for T, a in v.items() if (a * c) % p}
    return {T: a * c for T, a in v.items() if a * c}


def shift_components(R: QuotientRing, v: dict, offset: int) -> dict:
    d = offset << shift_of(R)
    return {T + d: a for T, a in v.items()}


def reduce(R: QuotientRing, v: dict) -> dict:
    """Componentwise normal form modulo the defining ideal."""
    if not R.defining or not v:
        return v
    S = shift_of(R)
    mask = R.ambient.exp_mask
    parts: dict = defaultdict(dict)
    for T, a in v.items():
        parts[T >> S][T & mask] = a
    out = {}
    for c, f in parts.items():
        base = c << S
        for E, a in R.reduce_terms(f).items():
            out[base | E] = a
    return out


def degree(R: QuotientRing, degrees: Sequence[int], v: dict) -> int | None:
    """Common degree of a homogeneous vector; None if zero or inhomogeneous."""
    if not v:
        return None
    ring = R.ambient
    S = ring.comp_shift
    mask = ring.exp_mask
    ds = {ring.wdeg(T & mask) + degrees[T >> S] for T in v}
    return ds.pop() if len(ds) == 1 else None


def max_degree(R: QuotientRing, degrees: Sequence[int], v: dict) -> int:
    ring = R.ambient
    S = ring.comp_shift
    mask = ring.exp_mask
    return max(ring.wdeg(T & mask) + degrees[T >> S] for T in v)


def quotient_lift(R: QuotientRing, ncomp: int) -> list[dict]:
    S = shift_of(R)
    out = []
    for c in range(ncomp):
        base = c << S
        for g in R._defining_terms:
            out.append({base | E: a for E, a in g.items()})
    return out


def make_engine(R: QuotientRing, degrees: Sequence[int], blocks: Sequence[int] | None = None,
                ideal: bool = False, lift_components: int | None = None) -> GroebnerEngine:
    order = ModuleOrder(R.ambient, degrees, blocks, ideal=ideal)
    eng = GroebnerEngine(order)
    ncomp = len(degrees) if lift_components is None else lift_components
    if R.defining:
        eng.preload(quotient_lift(R, ncomp))
    return eng


def submodule_engine(R: QuotientRing, degrees: Sequence[int], vectors: Sequence[dict]) -> GroebnerEngine:
    ideal = len(degrees) == 1 and degrees[0] == 0
    eng = make_engine(R, degrees, ideal=ideal)
    eng.extend(v for v in vectors if v)
    return eng


def preimage(R: QuotientRing, target_degrees: Sequence[int], columns: Sequence[dict],
             source_degrees: Sequence[int], relations: Sequence[dict] = ()) -> list[dict]:
    """Generators of ``{a in R^s : sum a_j col_j in span(relations)}``.

    ``relations = ()`` gives the syzygies of the columns.
    """
    r = len(target_degrees)
    s = len(columns)
    if s == 0:
        return []
    S = shift_of(R)
    degrees = list(target_degrees) + list(source_degrees)
    blocks = [1] * r + [0] * s
    eng = make_engine(R, degrees, blocks)
    for j, col in enumerate(columns):
        v = dict(col)
        v[(r + j) << S] = 1
        eng.add(v)
    eng.extend(k for k in relations if k)
    out = []
    for g in eng.basis():
        lt = max(g, key=eng.order.key.__getitem__)
        if lt >> S < r:
            continue
        w = reduce(R, shift_components(R, g, -r))
        if w:
            out.append(w)
    return out


def intersect(R: QuotientRing, degrees: Sequence[int], A: Sequence[dict], B: Sequence[dict]) -> list[dict]:
    """Generators of ``span(A) ∩ span(B)`` inside ``R^r``."""
    A = [a for a in A if a]
    B = [b for b in B if b]
    if not A or not B:
        return []
    r = len(degrees)
    eng = make_engine(R, list(degrees) * 2, [1] * r + [0] * r)
    for a in A:
        v = dict(a)
        v.update(shift_components(R, a, r))
        eng.add(v)
    eng.extend(B)
    S = shift_of(R)
    out = []
    for g in eng.basis():
        lt = max(g, key=eng.order.key.__getitem__)
        if lt >> S < r:
            continue
        w = reduce(R, shift_components(R, g, -r))
        if w:
            out.append(w)
    return out


def colon(R: QuotientRing, degrees: Sequence[int], N: Sequence[dict], v: dict) -> list[dict]:
    """Polynomials ``f`` (as term dicts) generating ``(span(N) : v)``."""
    if not v:
        return [{0: 1}]
    d = degree(R, degrees, v)
    if d is None:
        d = max_degree(R, degrees, v)
    gens = preimage(R, degrees, [v], [d], N)
    mask = R.ambient.exp_mask
    return [{T & mask: a for T, a in g.items()} for g in gens]


def minimal_subset(R: QuotientRing, degrees: Sequence[int], vectors: Sequence[dict],
                   relations: Sequence[dict] = ()) -> list[dict]:
    """Greedy graded-Nakayama pruning of ``vectors`` modulo ``relations``.

    For homogeneous input the result is a minimal generating set of
    ``(span(vectors) + span(relations)) / span(relations)``.
    """
    eng = submodule_engine(R, degrees, relations)
    keyed = []
    for idx, v in enumerate(vectors):
        v = reduce(R, v)
        if not v:
            continue
        d = degree(R, degrees, v)
        keyed.append((d if d is not None else max_degree(R, degrees, v), idx, v))
    keyed.sort(key=lambda x: (x[0], x[1]))
    chosen = []
    for _, _, v in keyed:
        if eng.contains(v):
            continue
        chosen.append(v)
        eng.add(v)
    return chosen


def leading_exponents_by_component(R: QuotientRing, eng: GroebnerEngine, ncomp: int) -> list[list[tuple]]:
    ring = R.ambient
    S = ring.comp_shift
    mask = ring.exp_mask
    out = [[] for _ in range(ncomp)]
    for T in eng.leading_terms():
        out[T >> S].append(ring.unpack(T & mask))
    return out


def hilbert_numerator(R: QuotientRing, degrees: Sequence[int], vectors: Sequence[dict]) -> dict:
    """Numerator of the Hilbert series of ``R^r / span(vectors)`` over ``S``."""
    eng = submodule_engine(R, degrees, vectors)
    leads = leading_exponents_by_component(R, eng, len(degrees))
    weights = R.ambient.weights
    total: dict = {}
    for c, exps in enumerate(leads):
        num = _kernel.hilbert_numerator(exps, weights)
        for k, a in num.items():
            total[k + degrees[c]] = total.get(k + degrees[c], 0) + a
    return {k: a for k, a in total.items() if a}


def quotient_dimension(R: QuotientRing, degrees: Sequence[int], vectors: Sequence[dict]) -> int:
    """Krull dimension of ``R^r / span(vectors)``; -1 for the zero module."""
    eng = submodule_engine(R, degrees, vectors)
    ring = R.ambient
    S = ring.comp_shift
    mask = ring.exp_mask
    per = defaultdict(list)
    for T in eng.leading_terms():
        per[T >> S].append(T & mask)
    best = -1
    for c in range(len(degrees)):
        best = max(best, _kernel.monomial_dimension(ring, per.get(c, [])))
    return best
