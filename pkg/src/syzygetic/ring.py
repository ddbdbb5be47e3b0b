"""Coefficient fields, graded polynomial rings, polynomials and quotient rings.

Monomials are packed into a single integer: exponent ``e_i`` occupies a
16-bit field starting at bit ``16*i`` whose top bit is a guard bit.  Module
terms put the component index above the exponent fields, so multiplying a
term by a monomial is integer addition and divisibility is a guard-bit test.
"""

from __future__ import annotations

import ast
import random
from fractions import Fraction
from functools import lru_cache
from itertools import combinations_with_replacement
from typing import Iterable, Sequence

FIELD_BITS = 16
FIELD_MASK = (1 << FIELD_BITS) - 1
MAX_EXPONENT = (1 << (FIELD_BITS - 1)) - 1
DEFAULT_PRIME = 32003


class ParseError(ValueError):
    """A polynomial or matrix string could not be parsed."""

    def __init__(self, message: str, text: str = "", column: int | None = None):
        self.text = text
        self.column = column
        where = f" at column {column}" if column is not None else ""
        super().__init__(f"{message}{where}: {text!r}" if text else message)


class HomogeneityError(ValueError):
    pass


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


class Field:
    """Exact coefficient field: the rationals (characteristic 0) or F_p.

    Elements of F_p are plain ints in ``[0, p)``; rationals are ``Fraction``.
    """

    def __init__(self, characteristic: int = 0):
        if characteristic != 0 and not _is_prime(characteristic):
            raise ValueError(f"characteristic must be 0 or a prime, got {characteristic}")
        self.characteristic = characteristic
        self.kind = "prime-field" if characteristic else "exact-rational"

    def __repr__(self):
        return f"GF({self.characteristic})" if self.characteristic else "QQ"

    def __eq__(self, other):
        return isinstance(other, Field) and other.characteristic == self.characteristic

    def __hash__(self):
        return hash(("Field", self.characteristic))

    def __call__(self, value) -> int | Fraction:
        p = self.characteristic
        if isinstance(value, Fraction):
            if p:
                return value.numerator * pow(value.denominator, -1, p) % p
            return value
        if isinstance(value, int):
            return value % p if p else Fraction(value)
        if isinstance(value, str):
            return self(Fraction(value))
        raise TypeError(f"cannot coerce {value!r} into {self!r}")

    def inv(self, a):
        if self.characteristic:
            return pow(a, -1, self.characteristic)
        return 1 / a

    def random(self, rng: random.Random, nonzero: bool = False):
        p = self.characteristic
        if p:
            return rng.randrange(1, p) if nonzero else rng.randrange(p)
        while True:
            v = Fraction(rng.randint(-9, 9))
            if v or not nonzero:
                return v

    def to_str(self, a) -> str:
        p = self.characteristic
        if p:
            a = a - p if a > p // 2 else a
        return str(a)

    def to_json(self, a):
        p = self.characteristic
        if p:
            return a - p if a > p // 2 else a
        return str(a) if a.denominator != 1 else a.numerator


QQ = Field(0)


def GF(p: int = DEFAULT_PRIME) -> Field:
    return Field(p)


class PolyRing:
    """Multivariate polynomial ring k[x_1..x_n] with a monomial order and weights.

    ``order`` is ``"grevlex"``, ``"lex"`` or ``("elim", k)`` (block order
    eliminating the first ``k`` variables).  Every order is realized as an
    injective linear functional ``order_key`` on exponent vectors.
    """

    def __init__(
        self,
        variables: Sequence[str] | str,
        field: Field | None = None,
        order="grevlex",
        weights: Sequence[int] | None = None,
    ):
        if isinstance(variables, str):
            variables = [v for v in variables.replace(",", " ").split() if v]
        variables = list(variables)
        if len(set(variables)) != len(variables) or not variables:
            raise ValueError(f"variables must be distinct and nonempty: {variables}")
        for v in variables:
            if not v.isidentifier():
                raise ValueError(f"invalid variable name {v!r}")
        self.variables = tuple(variables)
        self.nvars = n = len(variables)
        self.field = field if field is not None else GF()
        self.weights = tuple(weights) if weights is not None else (1,) * n
        if len(self.weights) != n or any(w <= 0 for w in self.weights):
            raise ValueError("weights must be positive, one per variable")
        if isinstance(order, str) and order.startswith("elim"):
            order = ("elim", int(order.split(":")[1]) if ":" in order else 1)
        if isinstance(order, (list, tuple)):
            order = ("elim", int(order[1]))
            if not 0 < order[1] < n:
                raise ValueError("elimination block size must be in 1..n-1")
        elif order not in ("grevlex", "lex"):
            raise ValueError(f"unknown monomial order {order!r}")
        self.order = order
        self.comp_shift = FIELD_BITS * n
        self.exp_mask = (1 << self.comp_shift) - 1
        self.guard = sum(1 << (FIELD_BITS * i + FIELD_BITS - 1) for i in range(n))
        self._shifts = tuple(FIELD_BITS * i for i in range(n))
        self._var_index = {v: i for i, v in enumerate(variables)}
        self._build_order()
        self._unpack = lru_cache(maxsize=None)(self._unpack_raw)
        self._wdeg = lru_cache(maxsize=None)(self._wdeg_raw)
        self._okey = lru_cache(maxsize=None)(self._okey_raw)

    # -- order -----------------------------------------------------------
    def _build_order(self):
        n, B = self.nvars, 1 << FIELD_BITS
        w = self.weights

        def graded(idx):
            # weighted degree first, then reverse-lexicographic tie-break
            coeffs = {}
            top = B ** len(idx)
            for pos, i in enumerate(idx):
                coeffs[i] = w[i] * top - B**pos
            return coeffs, top * (1 << 24)

        if self.order == "grevlex":
            coeffs, span = graded(range(n))
            alpha = [coeffs[i] for i in range(n)]
        elif self.order == "lex":
            alpha = [B ** (n - 1 - i) for i in range(n)]
            span = B**n
        else:
            k = self.order[1]
            c1, _ = graded(range(k))
            c2, span2 = graded(range(k, n))
            alpha = [c1[i] * span2 if i < k else c2[i] for i in range(n)]
            span = span2 * B**k * (1 << 24)
        self._alpha = tuple(alpha)
        # bound on |order_key| used to size module keys
        self.key_span = span * (1 << 8)

    def _unpack_raw(self, E: int) -> tuple:
        return tuple((E >> s) & FIELD_MASK for s in self._shifts)

    def _wdeg_raw(self, E: int) -> int:
        return sum(a * b for a, b in zip(self._unpack(E), self.weights))

    def _okey_raw(self, E: int) -> int:
        return sum(a * b for a, b in zip(self._unpack(E), self._alpha))

    def unpack(self, E: int) -> tuple:
        return self._unpack(E & self.exp_mask)

    def pack(self, exps: Sequence[int]) -> int:
        if len(exps) != self.nvars:
            raise ValueError("exponent vector length does not match variable count")
        E = 0
        for e, s in zip(exps, self._shifts):
            if e < 0 or e > MAX_EXPONENT:
                raise ValueError(f"exponent {e} out of range")
            E |= e << s
        return E

    def wdeg(self, E: int) -> int:
        return self._wdeg(E & self.exp_mask)

    def order_key(self, E: int) -> int:
        return self._okey(E & self.exp_mask)

    def divides(self, a: int, b: int) -> bool:
        return not ((b - a) & self.guard)

    def lcm(self, a: int, b: int) -> int:
        ea, eb = self.unpack(a), self.unpack(b)
        return self.pack([max(x, y) for x, y in zip(ea, eb)])

    # -- construction ----------------------------------------------------
    def __repr__(self):
        return f"PolyRing({','.join(self.variables)}; {self.field!r}; {self.order})"

    def __eq__(self, other):
        return (
            isinstance(other, PolyRing)
            and self.variables == other.variables
            and self.field == other.field
            and self.order == other.order
            and self.weights == other.weights
        )

    def __hash__(self):
        return hash((self.variables, self.field, self.order, self.weights))

    def gens(self) -> list[Polynomial]:
        return [self.var(v) for v in self.variables]

    def var(self, name: str) -> Polynomial:
        i = self._var_index[name]
        return Polynomial(self, {1 << self._shifts[i]: self.field(1)})

    def zero(self) -> Polynomial:
        return Polynomial(self, {})

    def one(self) -> Polynomial:
        return Polynomial(self, {0: self.field(1)})

    def const(self, c) -> Polynomial:
        c = self.field(c)
        return Polynomial(self, {0: c} if c else {})

    def monomial(self, exps: Sequence[int], coeff=1) -> Polynomial:
        c = self.field(coeff)
        return Polynomial(self, {self.pack(exps): c} if c else {})

    def __call__(self, value) -> Polynomial:
        if isinstance(value, Polynomial):
            if value.ring != self:
                raise ValueError("polynomial belongs to a different ring")
            return value
        if isinstance(value, (int, Fraction)):
            return self.const(value)
        if isinstance(value, str):
            return parse_polynomial(self, value)
        raise TypeError(f"cannot convert {value!r} to a polynomial")

    def monomials_of_degree(self, degree: int) -> list[int]:
        """Packed monomials of the given weighted degree."""
        return list(_monomials_of_degree(self, degree))

    def random_homogeneous(self, degree: int, rng: random.Random, density: float = 1.0) -> Polynomial:
        terms = {}
        for E in self.monomials_of_degree(degree):
            if density < 1.0 and rng.random() > density:
                continue
            c = self.field.random(rng)
            if c:
                terms[E] = c
        return Polynomial(self, terms)


@lru_cache(maxsize=None)
def _monomials_cached(nvars: int, weights: tuple, degree: int) -> tuple:
    if degree < 0:
        return ()
    out = []

    def rec(i, remaining, acc):
        if i == nvars - 1:
            if remaining % weights[i] == 0:
                out.append(tuple(acc + [remaining // weights[i]]))
            return
        e = 0
        while e * weights[i] <= remaining:
            rec(i + 1, remaining - e * weights[i], acc + [e])
            e += 1

    rec(0, degree, [])
    return tuple(out)


def _monomials_of_degree(ring: PolyRing, degree: int):
    for exps in _monomials_cached(ring.nvars, ring.weights, degree):
        yield ring.pack(exps)


class Polynomial:
    """Immutable polynomial: a mapping packed monomial -> nonzero coefficient."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: PolyRing, terms: dict):
        self.ring = ring
        self.terms = terms
        self._hash = None

    # -- inspection --------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def sorted_terms(self) -> list[tuple[int, object]]:
        ok = self.ring.order_key
        return sorted(self.terms.items(), key=lambda t: ok(t[0]), reverse=True)

    def leading_monomial(self) -> int:
        if not self.terms:
            raise ValueError("zero polynomial has no leading monomial")
        return max(self.terms, key=self.ring.order_key)

    def leading_coefficient(self):
        return self.terms[self.leading_monomial()]

    def degree(self) -> int:
        """Maximal weighted degree of a term; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(self.ring.wdeg(E) for E in self.terms)

    def is_homogeneous(self) -> bool:
        degs = {self.ring.wdeg(E) for E in self.terms}
        return len(degs) <= 1

    def is_constant(self) -> bool:
        return all(E == 0 for E in self.terms)

    def exponents(self) -> list[tuple]:
        return [self.ring.unpack(E) for E, _ in self.sorted_terms()]

    # -- arithmetic ------------------------------------------------------
    def _coerce(self, other) -> Polynomial:
        if isinstance(other, Polynomial):
            if other.ring is not self.ring and other.ring != self.ring:
                raise ValueError("polynomials live in different rings")
            return other
        return self.ring(other)

    def __add__(self, other):
        other = self._coerce(other)
        return Polynomial(self.ring, _add(self.terms, other.terms, 1, self.ring.field.characteristic))

    __radd__ = __add__

    def __neg__(self):
        p = self.ring.field.characteristic
        return Polynomial(self.ring, {E: (-c) % p if p else -c for E, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        return Polynomial(self.ring, _add(self.terms, other.terms, -1, self.ring.field.characteristic))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        return Polynomial(self.ring, poly_mul(self.terms, other.terms, self.ring.field.characteristic))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def scale(self, c) -> Polynomial:
        p = self.ring.field.characteristic
        c = self.ring.field(c) if not isinstance(c, Fraction) or p else c
        if not c:
            return self.ring.zero()
        return Polynomial(self.ring, {E: (v * c) % p if p else v * c for E, v in self.terms.items()})

    def monic(self) -> Polynomial:
        if not self.terms:
            return self
        return self.scale(self.ring.field.inv(self.leading_coefficient()))

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, str)):
            other = self.ring(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __str__(self):
        return format_terms(self.ring, self.sorted_terms())

    def __repr__(self):
        return f"Polynomial({self})"


def _add(a: dict, b: dict, sign: int, p: int) -> dict:
    out = dict(a)
    for E, c in b.items():
        v = out.get(E, 0) + sign * c
        if p:
            v %= p
        if v:
            out[E] = v
        else:
            out.pop(E, None)
    return out


def poly_mul(a: dict, b: dict, p: int) -> dict:
    out: dict = {}
    get = out.get
    if p:
        for E1, c1 in a.items():
            for E2, c2 in b.items():
                E = E1 + E2
                out[E] = (get(E, 0) + c1 * c2) % p
    else:
        for E1, c1 in a.items():
            for E2, c2 in b.items():
                E = E1 + E2
                out[E] = get(E, 0) + c1 * c2
    return {E: c for E, c in out.items() if c}


def format_monomial(ring: PolyRing, E: int) -> str:
    parts = []
    for v, e in zip(ring.variables, ring.unpack(E)):
        if e == 1:
            parts.append(v)
        elif e > 1:
            parts.append(f"{v}^{e}")
    return "*".join(parts)


def format_terms(ring: PolyRing, terms: Iterable[tuple[int, object]]) -> str:
    out = []
    for E, c in terms:
        cs = ring.field.to_str(c)
        neg = cs.startswith("-")
        if neg:
            cs = cs[1:]
        mon = format_monomial(ring, E)
        if mon:
            body = mon if cs == "1" else f"{cs}*{mon}"
        else:
            body = cs
        if not out:
            out.append(f"-{body}" if neg else body)
        else:
            out.append(f" - {body}" if neg else f" + {body}")
    return "".join(out) if out else "0"


# -- parsing --------------------------------------------------------------

def parse_polynomial(ring: PolyRing, text: str) -> Polynomial:
    """Parse ``text`` such as ``"3*x^2*y - y^3/2 + (x+y)^2"`` into ``ring``."""
    if not isinstance(text, str):
        raise ParseError("polynomial must be given as a string", str(text))
    src = text.strip()
    if not src:
        raise ParseError("empty polynomial", text)
    try:
        tree = ast.parse(src.replace("^", "**"), mode="eval")
    except SyntaxError as exc:
        raise ParseError("syntax error", text, exc.offset) from None
    return _eval_node(ring, tree.body, text)


def _eval_node(ring: PolyRing, node, text: str) -> Polynomial:
    col = getattr(node, "col_offset", None)
    if isinstance(node, ast.Constant):
        if isinstance(node.value, bool) or not isinstance(node.value, int):
            raise ParseError("only integer constants are allowed", text, col)
        return ring.const(node.value)
    if isinstance(node, ast.Name):
        if node.id not in ring._var_index:
            raise ParseError(f"undefined variable {node.id!r}", text, col)
        return ring.var(node.id)
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
        val = _eval_node(ring, node.operand, text)
        return -val if isinstance(node.op, ast.USub) else val
    if isinstance(node, ast.BinOp):
        left = _eval_node(ring, node.left, text)
        if isinstance(node.op, ast.Pow):
            right = node.right
            if isinstance(right, ast.UnaryOp) or not (
                isinstance(right, ast.Constant) and type(right.value) is int
            ):
                raise ParseError("exponent must be a nonnegative integer literal", text, col)
            if right.value > MAX_EXPONENT:
                raise ParseError("exponent too large", text, col)
            return left**right.value
        right = _eval_node(ring, node.right, text)
        if isinstance(node.op, ast.Add):
            return left + right
        if isinstance(node.op, ast.Sub):
            return left - right
        if isinstance(node.op, ast.Mult):
            return left * right
        if isinstance(node.op, ast.Div):
            if not right.is_constant() or right.is_zero():
                raise ParseError("division only by nonzero constants", text, col)
            return left.scale(ring.field.inv(right.terms[0]))
    raise ParseError("unsupported expression", text, col)


def parse_matrix(ring: PolyRing, data) -> list[list[Polynomial]]:
    """Parse a row-major matrix.

    Accepts a list of rows (each a list of polynomial strings/ints) or a text
    block with rows separated by ``;`` or newlines and entries by ``,``.
    """
    if isinstance(data, str):
        rows = [r for r in data.replace(";", "\n").splitlines() if r.strip()]
        data = [[e for e in r.split(",")] for r in rows]
    if not isinstance(data, list) or not all(isinstance(r, list) for r in data):
        raise ParseError("matrix must be a list of rows", str(data))
    if data and len({len(r) for r in data}) != 1:
        raise ParseError("matrix rows have different lengths", str(data))
    out = []
    for i, row in enumerate(data):
        parsed = []
        for j, entry in enumerate(row):
            if isinstance(entry, bool) or not isinstance(entry, (str, int)):
                raise ParseError(f"matrix entry ({i},{j}) must be a string or integer", str(entry))
            try:
                parsed.append(ring(entry if isinstance(entry, str) else int(entry)))
            except ParseError as exc:
                raise ParseError(f"matrix entry ({i},{j}): {exc}") from None
        out.append(parsed)
    return out


class QuotientRing:
    """Graded quotient ``S/Q`` of a polynomial ring by a homogeneous ideal.

    ``defining`` is the reduced Gröbner basis of ``Q`` (empty for ``S``
    itself); ``dimension`` is the Krull dimension, read off the initial ideal.
    """

    def __init__(self, ambient: PolyRing, generators: Sequence = ()):
        from . import _kernel

        self.ambient = ambient
        gens = [ambient(g) for g in generators]
        for g in gens:
            if not g.is_homogeneous():
                raise HomogeneityError(f"defining generator is not homogeneous: {g}")
        basis = _kernel.ideal_groebner(ambient, [g.terms for g in gens if g])
        self.defining = [Polynomial(ambient, t) for t in basis]
        self._defining_terms = basis
        self._reducer = _kernel.IdealReducer(ambient, basis)
        self.dimension = _kernel.monomial_dimension(
            ambient, [max(t, key=ambient.order_key) for t in basis]
        )

    @property
    def field(self) -> Field:
        return self.ambient.field

    @property
    def variables(self):
        return self.ambient.variables

    @property
    def nvars(self) -> int:
        return self.ambient.nvars

    def __repr__(self):
        if not self.defining:
            return f"QuotientRing({','.join(self.variables)})"
        return f"QuotientRing({','.join(self.variables)} / ({', '.join(map(str, self.defining))}))"

    def __eq__(self, other):
        return (
            isinstance(other, QuotientRing)
            and self.ambient == other.ambient
            and self._defining_terms == other._defining_terms
        )

    def __hash__(self):
        return hash((self.ambient, tuple(frozenset(t.items()) for t in self._defining_terms)))

    def is_polynomial_ring(self) -> bool:
        return not self.defining

    def __call__(self, value) -> Polynomial:
        return self.reduce(self.ambient(value))

    def gens(self) -> list[Polynomial]:
        return [self.reduce(g) for g in self.ambient.gens()]

    def zero(self) -> Polynomial:
        return self.ambient.zero()

    def one(self) -> Polynomial:
        return self.reduce(self.ambient.one())

    def reduce(self, f: Polynomial) -> Polynomial:
        if f.ring != self.ambient:
            raise ValueError("polynomial has a different variable set than the ring")
        if not self.defining or not f.terms:
            return f
        return Polynomial(self.ambient, self._reducer.reduce(f.terms))

    def reduce_terms(self, terms: dict) -> dict:
        if not self.defining or not terms:
            return terms
        return self._reducer.reduce(terms)

    def is_zero(self, f: Polynomial) -> bool:
        return not self.reduce(f).terms

    def quotient(self, extra: Sequence) -> QuotientRing:
        """The ring ``R/(extra)``."""
        return QuotientRing(self.ambient, list(self.defining) + [self.ambient(e) for e in extra])

    def random_homogeneous(self, degree: int, rng: random.Random) -> Polynomial:
        return self.reduce(self.ambient.random_homogeneous(degree, rng))


def make_quotient_ring(ambient: PolyRing, generators: Sequence = ()) -> QuotientRing:
    return QuotientRing(ambient, generators)


def normal_form(f, R: QuotientRing) -> Polynomial:
    if isinstance(f, Polynomial) and f.ring.nvars != R.nvars:
        raise ValueError("variable-count mismatch between polynomial and ring")
    return R.reduce(R.ambient(f))


def is_homogeneous(f, R: QuotientRing) -> bool:
    return normal_form(f, R).is_homogeneous()


def products(polys: Sequence[Polynomial], n: int) -> list[Polynomial]:
    """All n-fold products of ``polys`` (with repetition, unordered)."""
    out = []
    for combo in combinations_with_replacement(range(len(polys)), n):
        f = polys[0].ring.one()
        for i in combo:
            f = f * polys[i]
        out.append(f)
    return out
