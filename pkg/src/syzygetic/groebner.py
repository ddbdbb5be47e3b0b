"""Ideals of a graded quotient ring and their arithmetic."""

from __future__ import annotations

from typing import Iterable, Sequence

from . import _kernel
from . import _vectors as V
from .ring import HomogeneityError, PolyRing, Polynomial, QuotientRing, products


def as_quotient_ring(R) -> QuotientRing:
    if isinstance(R, QuotientRing):
        return R
    if isinstance(R, PolyRing):
        return QuotientRing(R, [])
    raise TypeError(f"expected a ring, got {type(R).__name__}")


class Ideal:
    """Ideal of ``R = S/Q`` given by generators in normal form.

    The Gröbner engine (of the lift ``I + Q`` in ``S``) is built lazily and
    cached; an Ideal is not mutated after that.
    """

    def __init__(self, ring, generators: Iterable = ()):
        self.ring = R = as_quotient_ring(ring)
        gens = []
        seen = set()
        for g in generators:
            f = R(g)
            if f.terms and f not in seen:
                seen.add(f)
                gens.append(f)
        self.generators: tuple[Polynomial, ...] = tuple(gens)
        self._engine = None
        self._gb = None

    @classmethod
    def unit(cls, ring) -> Ideal:
        R = as_quotient_ring(ring)
        return cls(R, [R.one()])

    @classmethod
    def parse(cls, ring, texts: Sequence[str]) -> Ideal:
        R = as_quotient_ring(ring)
        return cls(R, [R.ambient(t) for t in texts])

    def __repr__(self):
        return f"Ideal({', '.join(map(str, self.generators)) or '0'})"

    def describe(self) -> str:
        return "(" + ", ".join(map(str, self.generators)) + ")"

    # -- engine -------------------------------------------------------------
    def engine(self) -> _kernel.GroebnerEngine:
        if self._engine is None:
            eng = V.make_engine(self.ring, [0], ideal=True)
            eng.extend(g.terms for g in self.generators)
            self._engine = eng
        return self._engine

    def groebner_basis(self) -> list[Polynomial]:
        """Reduced Gröbner basis of the ideal (elements of ``Q`` omitted)."""
        if self._gb is None:
            R = self.ring
            basis = self.engine().basis()
            self._gb = [Polynomial(R.ambient, t) for t in basis if R.reduce_terms(t)]
        return list(self._gb)

    def leading_monomials(self) -> list[int]:
        return self.engine().leading_terms()

    # -- predicates ---------------------------------------------------------
    def _check(self, other: Ideal):
        if other.ring != self.ring:
            raise ValueError("ideals live in different rings")

    def contains(self, f) -> bool:
        f = self.ring(f)
        if not f.terms:
            return True
        if not self.generators:
            return False
        return self.engine().contains(f.terms)

    __contains__ = contains

    def contains_ideal(self, other: Ideal) -> bool:
        self._check(other)
        return all(self.contains(g) for g in other.generators)

    def equals(self, other: Ideal) -> bool:
        return self.contains_ideal(other) and other.contains_ideal(self)

    def is_zero(self) -> bool:
        return not self.generators

    def is_unit(self) -> bool:
        return self.contains(self.ring.one())

    def is_homogeneous(self) -> bool:
        return all(g.is_homogeneous() for g in self.generators)

    # -- constructions ------------------------------------------------------
    def __add__(self, other: Ideal) -> Ideal:
        self._check(other)
        return Ideal(self.ring, self.generators + other.generators)

    def __mul__(self, other: Ideal) -> Ideal:
        self._check(other)
        R = self.ring
        return Ideal(R, [R.reduce(f * g) for f in self.generators for g in other.generators])

    def __pow__(self, n: int) -> Ideal:
        return ideal_power(self, n)

    def extend(self, polys: Iterable) -> Ideal:
        return Ideal(self.ring, list(self.generators) + list(polys))

    def minimal_generators(self) -> Ideal:
        vecs = V.minimal_subset(self.ring, [0], [g.terms for g in self.generators])
        return Ideal(self.ring, [Polynomial(self.ring.ambient, v) for v in vecs])

    def dimension(self) -> int:
        return krull_dimension(self)

    def hilbert_numerator(self) -> dict:
        ring = self.ring.ambient
        leads = [ring.unpack(E) for E in self.leading_monomials()]
        return _kernel.hilbert_numerator(leads, ring.weights)


def _ideal_of(I) -> Ideal:
    if not isinstance(I, Ideal):
        raise TypeError("expected an Ideal")
    return I


def groebner_basis(I: Ideal) -> list[Polynomial]:
    return _ideal_of(I).groebner_basis()


def ideal_membership(f: Polynomial, I: Ideal) -> bool:
    if isinstance(f, Polynomial) and f.ring != I.ring.ambient:
        raise ValueError("polynomial and ideal live in different rings")
    return I.contains(f)


def ideal_intersection(I: Ideal, J: Ideal) -> Ideal:
    I._check(J)
    R = I.ring
    if I.is_zero() or J.is_zero():
        return Ideal(R)
    vecs = V.intersect(R, [0], [g.terms for g in I.generators], [g.terms for g in J.generators])
    return Ideal(R, [Polynomial(R.ambient, v) for v in vecs]).minimal_generators()


def ideal_quotient(I: Ideal, f) -> Ideal:
    """``(I : f) = {g : g f in I}``."""
    R = I.ring
    f = R(f)
    if not f.terms:
        raise ValueError("cannot take the colon by zero")
    gens = V.colon(R, [0], [g.terms for g in I.generators], f.terms)
    return Ideal(R, [Polynomial(R.ambient, t) for t in gens]).minimal_generators()


def saturation(I: Ideal, f) -> Ideal:
    """``(I : f^∞)``, iterating the colon until it stabilizes."""
    cur = I
    while True:
        nxt = ideal_quotient(cur, f)
        if cur.contains_ideal(nxt):
            return cur if cur is not I else nxt
        cur = nxt


def krull_dimension(I: Ideal) -> int:
    """Krull dimension of ``R/I``; -1 when ``I`` is the unit ideal."""
    return _kernel.monomial_dimension(I.ring.ambient, I.leading_monomials())


def ideal_power(I: Ideal, n: int) -> Ideal:
    if n < 0:
        raise ValueError("power must be nonnegative")
    if n == 0:
        return Ideal.unit(I.ring)
    R = I.ring
    return Ideal(R, [R.reduce(f) for f in products(list(I.generators), n)] if I.generators else [])


def ideal_sum(*ideals: Ideal) -> Ideal:
    out = ideals[0]
    for J in ideals[1:]:
        out = out + J
    return out


def ideal_product(*ideals: Ideal) -> Ideal:
    out = ideals[0]
    for J in ideals[1:]:
        out = out * J
    return out


def hilbert_function(I: Ideal, degrees: Iterable[int]) -> list[int]:
    """``dim_k (R/I)_e`` for each ``e`` in ``degrees``."""
    if not I.is_homogeneous():
        raise HomogeneityError("hilbert_function needs a homogeneous ideal")
    ring = I.ring.ambient
    return _kernel.hilbert_values(I.hilbert_numerator(), ring.nvars, ring.weights, degrees)


def hilbert_series_polynomial(I: Ideal) -> dict | None:
    """Hilbert series of ``R/I`` as a polynomial when ``R/I`` has finite length."""
    return _kernel.hilbert_polynomial_part(I.hilbert_numerator(), I.ring.ambient.weights)


def length(I: Ideal) -> int | None:
    """``dim_k R/I`` if finite, else None."""
    poly = hilbert_series_polynomial(I)
    return None if poly is None else sum(poly.values())
