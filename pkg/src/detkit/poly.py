"""Sparse exact multivariate polynomials over Q or a prime field.

Monomials are packed into a single Python integer: variable ``i`` occupies
bits ``[16 i, 16 i + 15)`` with bit ``16 i + 15`` kept clear as a guard, and
the total degree sits above all variable fields.  Multiplying monomials is
integer addition, divisibility is a borrow test on the guard bits, and the
graded reverse-lex key of a monomial is a single XOR.

Rational coefficients are Python ints when integral and ``gmpy2.mpq``
otherwise; prime-field coefficients are ints in ``[0, p)``.
"""

from __future__ import annotations

import heapq
import re
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from gmpy2 import mpq

FIELD_BITS = 16
MAX_EXP = (1 << (FIELD_BITS - 1)) - 1
DEFAULT_PRIME = 2147483647

__all__ = [
    "VarTable", "Ring", "Polynomial", "MonomialOrder", "DEFAULT_PRIME",
    "poly_add", "poly_mul", "exact_div", "partial_derivative", "substitute",
    "evaluate", "compare",
]


@dataclass(frozen=True)
class VarTable:
    names: tuple[str, ...]
    index: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        names = tuple(self.names)
        object.__setattr__(self, "names", names)
        if len(set(names)) != len(names):
            raise ValueError("variable names must be unique")
        object.__setattr__(self, "index", {n: i for i, n in enumerate(names)})

    @property
    def count(self) -> int:
        return len(self.names)

    def __len__(self):
        return len(self.names)


class Ring:
    """Polynomial ring: a variable table plus a coefficient field.

    ``p=None`` means the rationals, otherwise the prime field of order p.
    """

    def __init__(self, names: Iterable[str] | VarTable, p: int | None = None):
        self.vars = names if isinstance(names, VarTable) else VarTable(tuple(names))
        if p is not None and (p < 3 or p % 2 == 0):
            raise ValueError("characteristic must be an odd prime")
        self.p = p
        n = self.vars.count
        self.nvars = n
        self.deg_shift = FIELD_BITS * n
        self.rest_mask = (1 << self.deg_shift) - 1
        guard = 0
        for i in range(n):
            guard |= 1 << (FIELD_BITS * i + FIELD_BITS - 1)
        self.guard = guard
        self._units = [(1 << (FIELD_BITS * i)) | (1 << self.deg_shift) for i in range(n)]

    # -- identity ---------------------------------------------------------
    def __eq__(self, other):
        return self is other or (
            isinstance(other, Ring) and self.p == other.p and self.vars.names == other.vars.names)

    def __hash__(self):
        return hash((self.vars.names, self.p))

    def __repr__(self):
        fld = "QQ" if self.p is None else f"GF({self.p})"
        return f"Ring({fld}, {list(self.vars.names)})"

    @property
    def names(self):
        return self.vars.names

    @property
    def field_label(self) -> str:
        return "qq" if self.p is None else f"fp:{self.p}"

    def with_field(self, p: int | None) -> "Ring":
        return Ring(self.vars, p)

    # -- monomials --------------------------------------------------------
    def pack(self, exps: Sequence[int]) -> int:
        if len(exps) != self.nvars:
            raise ValueError("exponent vector length does not match the variable table")
        m = 0
        d = 0
        for i, e in enumerate(exps):
            if e < 0 or e > MAX_EXP:
                raise OverflowError(f"exponent {e} out of range")
            m |= e << (FIELD_BITS * i)
            d += e
        return m | (d << self.deg_shift)

    def unpack(self, m: int) -> tuple[int, ...]:
        mask = (1 << FIELD_BITS) - 1
        return tuple((m >> (FIELD_BITS * i)) & mask for i in range(self.nvars))

    def mdeg(self, m: int) -> int:
        return m >> self.deg_shift

    def var_exp(self, m: int, i: int) -> int:
        return (m >> (FIELD_BITS * i)) & ((1 << FIELD_BITS) - 1)

    def divides(self, a: int, b: int) -> bool:
        """True iff monomial a divides monomial b."""
        d = b - a
        return d >= 0 and not (d & self.guard)

    def support(self, m: int) -> list[int]:
        return [i for i, e in enumerate(self.unpack(m)) if e]

    def lcm(self, a: int, b: int) -> int:
        ea, eb = self.unpack(a), self.unpack(b)
        return self.pack([x if x > y else y for x, y in zip(ea, eb)])

    def coprime(self, a: int, b: int) -> bool:
        mask = (1 << FIELD_BITS) - 1
        a &= self.rest_mask
        b &= self.rest_mask
        while a and b:
            if (a & mask) and (b & mask):
                return False
            a >>= FIELD_BITS
            b >>= FIELD_BITS
        return True

    # -- coefficients -----------------------------------------------------
    def coerce(self, c):
        if self.p is not None:
            if isinstance(c, int):
                return c % self.p
            c = mpq(c)
            return int(c.numerator) * pow(int(c.denominator), -1, self.p) % self.p
        if isinstance(c, int):
            return c
        if isinstance(c, str):
            c = mpq(c)
        else:
            c = mpq(c)
        return int(c) if c.denominator == 1 else c

    def div(self, a, b):
        if self.p is not None:
            return a * pow(b, -1, self.p) % self.p
        if type(a) is int and type(b) is int:
            q, r = divmod(a, b)
            if not r:
                return q
            return mpq(a, b)
        q = mpq(a) / b
        return int(q) if q.denominator == 1 else q

    def inv(self, a):
        return self.div(1, a)

    # -- constructors -----------------------------------------------------
    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return Polynomial(self, {0: 1})

    def const(self, c) -> "Polynomial":
        c = self.coerce(c)
        return Polynomial(self, {0: c} if c else {})

    def var(self, name) -> "Polynomial":
        i = name if isinstance(name, int) else self.vars.index[name]
        return Polynomial(self, {self._units[i]: 1})

    def gens(self) -> list["Polynomial"]:
        return [self.var(i) for i in range(self.nvars)]

    def monomial(self, exps: Sequence[int], c=1) -> "Polynomial":
        c = self.coerce(c)
        return Polynomial(self, {self.pack(exps): c} if c else {})

    def from_terms(self, terms: Mapping[tuple, object]) -> "Polynomial":
        out = {}
        for exps, c in terms.items():
            m = self.pack(exps)
            v = out.get(m, 0) + self.coerce(c)
            if self.p is not None:
                v %= self.p
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return Polynomial(self, out)

    def __call__(self, text) -> "Polynomial":
        if isinstance(text, Polynomial):
            return text
        if isinstance(text, str):
            return parse_poly(self, text)
        return self.const(text)


class MonomialOrder:
    """Graded reverse-lex order with an explicit variable priority list.

    Degrees are compared first; on a tie the last variable of the priority
    list whose exponents differ decides, and the smaller exponent wins.
    ``priority=None`` means the ring's own variable order.
    """

    kind = "reverse-lex"

    def __init__(self, priority: Sequence[str] | None = None):
        self.priority = tuple(priority) if priority is not None else None

    def __eq__(self, other):
        return isinstance(other, MonomialOrder) and self.priority == other.priority

    def __hash__(self):
        return hash(self.priority)

    def __repr__(self):
        return f"MonomialOrder(revlex, {self.priority})"

    def is_natural(self, ring: Ring) -> bool:
        return self.priority is None or self.priority == ring.names

    def key(self, ring: Ring):
        """Return a function mapping a packed monomial to an int sort key."""
        rest = ring.rest_mask
        if self.is_natural(ring):
            return lambda m: m ^ rest
        if sorted(self.priority) != sorted(ring.names):
            raise ValueError("priority list must be a permutation of the ring variables")
        perm = [ring.vars.index[n] for n in self.priority]
        shift = ring.deg_shift

        def key(m, perm=perm, unpack=ring.unpack):
            e = unpack(m)
            k = 0
            for pos, i in enumerate(perm):
                k |= e[i] << (FIELD_BITS * pos)
            return ((m >> shift) << shift | k) ^ rest
        return key

    def compare(self, ring: Ring, m1: int, m2: int) -> int:
        k = self.key(ring)
        a, b = k(m1), k(m2)
        return (a > b) - (a < b)


def compare(order: MonomialOrder, ring: Ring, m1, m2) -> int:
    """Compare two monomials (packed ints or exponent tuples): -1, 0 or 1."""
    if not isinstance(m1, int):
        m1 = ring.pack(m1)
    if not isinstance(m2, int):
        m2 = ring.pack(m2)
    return order.compare(ring, m1, m2)


class Polynomial:
    __slots__ = ("ring", "terms")

    def __init__(self, ring: Ring, terms: dict):
        self.ring = ring
        self.terms = terms

    # -- basics -----------------------------------------------------------
    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, int) or hasattr(other, "denominator"):
            return self.terms == (self.ring.const(other).terms)
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def _lift(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.ring is not self.ring and other.ring != self.ring:
                raise ValueError("polynomials live in different rings")
            return other
        return self.ring.const(other)

    def degree(self) -> int:
        if not self.terms:
            return -1
        s = self.ring.deg_shift
        return max(m >> s for m in self.terms)

    def min_degree(self) -> int:
        s = self.ring.deg_shift
        return min(m >> s for m in self.terms)

    def homogeneous_degree(self):
        """Common degree of all terms, or None if inhomogeneous or zero."""
        if not self.terms:
            return None
        s = self.ring.deg_shift
        it = iter(self.terms)
        d = next(it) >> s
        for m in it:
            if m >> s != d:
                return None
        return d

    def is_homogeneous(self) -> bool:
        return not self.terms or self.homogeneous_degree() is not None

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and 0 in self.terms)

    def constant_coeff(self):
        return self.terms.get(0, 0)

    def variables(self) -> list[int]:
        seen = 0
        for m in self.terms:
            seen |= m
        return [i for i in range(self.ring.nvars) if self.ring.var_exp(seen, i)]

    def variable_names(self) -> list[str]:
        return [self.ring.names[i] for i in self.variables()]

    def items(self):
        return self.terms.items()

    def exponent_items(self):
        unpack = self.ring.unpack
        return [(unpack(m), c) for m, c in self.terms.items()]

    # -- arithmetic -------------------------------------------------------
    def __neg__(self):
        p = self.ring.p
        if p is None:
            return Polynomial(self.ring, {m: -c for m, c in self.terms.items()})
        return Polynomial(self.ring, {m: (p - c) for m, c in self.terms.items()})

    def __add__(self, other):
        other = self._lift(other)
        if len(self.terms) < len(other.terms):
            a, b = other.terms, self.terms
        else:
            a, b = self.terms, other.terms
        out = dict(a)
        p = self.ring.p
        for m, c in b.items():
            v = out.get(m)
            if v is None:
                out[m] = c
            else:
                v += c
                if p is not None:
                    v %= p
                if v:
                    out[m] = v
                else:
                    del out[m]
        return Polynomial(self.ring, out)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def scale(self, c) -> "Polynomial":
        c = self.ring.coerce(c)
        if not c:
            return self.ring.zero()
        p = self.ring.p
        if p is None:
            return Polynomial(self.ring, {m: v * c for m, v in self.terms.items()})
        return Polynomial(self.ring, {m: v * c % p for m, v in self.terms.items()})

    def mul_term(self, mono: int, c) -> "Polynomial":
        p = self.ring.p
        if p is None:
            return Polynomial(self.ring, {m + mono: v * c for m, v in self.terms.items()})
        return Polynomial(self.ring, {m + mono: v * c % p for m, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            return self.scale(other)
        other = self._lift(other)
        a, b = self.terms, other.terms
        if not a or not b:
            return self.ring.zero()
        if len(a) < len(b):
            a, b = b, a
        if len(b) == 1:
            (mb, cb), = b.items()
            fp = self.ring.p
            if fp is None:
                return Polynomial(self.ring, {m + mb: v * cb for m, v in a.items()})
            return Polynomial(self.ring, {m + mb: v * cb % fp for m, v in a.items()})
        if self.degree() + other.degree() > MAX_EXP:
            raise OverflowError("product degree exceeds exponent capacity")
        out = {}
        get = out.get
        bi = list(b.items())
        for ma, ca in a.items():
            for mb, cb in bi:
                k = ma + mb
                out[k] = get(k, 0) + ca * cb
        p = self.ring.p
        if p is None:
            out = {m: c for m, c in out.items() if c}
        else:
            out = {m: c % p for m, c in out.items() if c % p}
        return Polynomial(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result = self.ring.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __truediv__(self, other):
        q = exact_div(self, self._lift(other))
        if q is None:
            raise ArithmeticError("not exactly divisible")
        return q

    # -- ordering helpers ---------------------------------------------------
    def leading(self, order: MonomialOrder | None = None):
        """(monomial, coefficient) of the leading term."""
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        key = (order or _NATURAL).key(self.ring)
        m = max(self.terms, key=key)
        return m, self.terms[m]

    def leading_monomial(self, order: MonomialOrder | None = None) -> int:
        return self.leading(order)[0]

    def leading_exponents(self, order: MonomialOrder | None = None) -> tuple[int, ...]:
        return self.ring.unpack(self.leading(order)[0])

    def monic(self, order: MonomialOrder | None = None) -> "Polynomial":
        if not self.terms:
            return self
        _, c = self.leading(order)
        return self.scale(self.ring.inv(c))

    def sorted_terms(self, order: MonomialOrder | None = None):
        key = (order or _NATURAL).key(self.ring)
        return sorted(self.terms.items(), key=lambda t: key(t[0]), reverse=True)

    # -- calculus / substitution ------------------------------------------
    def diff(self, v) -> "Polynomial":
        return partial_derivative(self, v)

    def subs(self, mapping) -> "Polynomial":
        return substitute(self, mapping)

    def __call__(self, *point):
        if len(point) == 1 and isinstance(point[0], (list, tuple)):
            point = point[0]
        return evaluate(self, point)

    def to_ring(self, ring: Ring) -> "Polynomial":
        """Move into a ring whose variables include ours (by name)."""
        if ring == self.ring:
            return self
        idx = [ring.vars.index[n] for n in self.ring.names]
        out = {}
        for exps, c in self.exponent_items():
            e = [0] * ring.nvars
            for i, x in zip(idx, exps):
                e[i] = x
            c = ring.coerce(c)
            if c:
                out[ring.pack(e)] = c
        return Polynomial(ring, out)

    def reduce_mod(self, p: int | None) -> "Polynomial":
        return _change_field(self, p)

    # -- text ---------------------------------------------------------------
    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"Polynomial({format_poly(self)!r})"


_NATURAL = MonomialOrder()


def _change_field(f: Polynomial, p: int | None) -> Polynomial:
    ring = f.ring.with_field(p)
    out = {}
    for m, c in f.terms.items():
        c = ring.coerce(c)
        if c:
            out[m] = c
    return Polynomial(ring, out)


def change_field(f: Polynomial, ring: Ring) -> Polynomial:
    """Reinterpret f in a ring with the same variables but another field."""
    if ring.names != f.ring.names:
        raise ValueError("variable tables differ")
    out = {}
    for m, c in f.terms.items():
        c = ring.coerce(c)
        if c:
            out[m] = c
    return Polynomial(ring, out)


# -- module-level operations ------------------------------------------------

def poly_add(p: Polynomial, q: Polynomial) -> Polynomial:
    if p.ring != q.ring:
        raise ValueError("domain mismatch")
    return p + q


def poly_mul(p: Polynomial, q: Polynomial) -> Polynomial:
    if p.ring != q.ring:
        raise ValueError("domain mismatch")
    return p * q


def exact_div(p: Polynomial, q: Polynomial):
    """Return h with p = q*h, or None when q does not divide p."""
    if not q.terms:
        raise ZeroDivisionError("division by the zero polynomial")
    if p.ring != q.ring:
        raise ValueError("domain mismatch")
    ring = p.ring
    if not p.terms:
        return ring.zero()
    rest = ring.rest_mask
    guard = ring.guard
    fp = ring.p
    ltq = max(q.terms, key=lambda m: m ^ rest)
    lcq = q.terms[ltq]
    tail = [(m, c) for m, c in q.terms.items() if m != ltq]
    if len(q.terms) == 1:
        out = {}
        for m, c in p.terms.items():
            d = m - ltq
            if d < 0 or d & guard:
                return None
            out[d] = ring.div(c, lcq)
        return Polynomial(ring, out)
    r = dict(p.terms)
    heap = [-(m ^ rest) for m in r]
    heapq.heapify(heap)
    quo = {}
    while heap:
        m = (-heapq.heappop(heap)) ^ rest
        c = r.pop(m, None)
        if c is None:
            continue
        d = m - ltq
        if d < 0 or d & guard:
            return None
        t = ring.div(c, lcq)
        quo[d] = t
        for mq, cq in tail:
            k = d + mq
            v = r.get(k)
            if v is None:
                v = -t * cq
                if fp is not None:
                    v %= fp
                if v:
                    r[k] = v
                    heapq.heappush(heap, -(k ^ rest))
            else:
                v -= t * cq
                if fp is not None:
                    v %= fp
                if v:
                    r[k] = v
                else:
                    del r[k]
    return Polynomial(ring, quo)


def divides(q: Polynomial, p: Polynomial) -> bool:
    return exact_div(p, q) is not None


def partial_derivative(p: Polynomial, v) -> Polynomial:
    ring = p.ring
    if isinstance(v, Polynomial):
        vs = v.variables()
        if len(vs) != 1 or len(v.terms) != 1:
            raise ValueError("not a variable")
        i = vs[0]
    elif isinstance(v, str):
        if v not in ring.vars.index:
            raise KeyError(f"unknown variable {v}")
        i = ring.vars.index[v]
    else:
        i = v
    unit = ring._units[i]
    sh = FIELD_BITS * i
    mask = (1 << FIELD_BITS) - 1
    fp = ring.p
    out = {}
    for m, c in p.terms.items():
        e = (m >> sh) & mask
        if e:
            v = c * e
            if fp is not None:
                v %= fp
                if not v:
                    continue
            out[m - unit] = v
    return Polynomial(ring, out)


def substitute(p: Polynomial, sigma, target: Ring | None = None) -> Polynomial:
    """Simultaneous substitution.

    ``sigma`` maps variable names (or indices) to Polynomials of one ring, or
    is a sequence giving an image for every variable.  Variables of ``p``
    absent from ``sigma`` raise KeyError.
    """
    ring = p.ring
    if isinstance(sigma, (list, tuple)):
        images = list(sigma)
        if len(images) != ring.nvars:
            raise ValueError("need one image per variable")
    else:
        images = [None] * ring.nvars
        for k, v in sigma.items():
            i = k if isinstance(k, int) else ring.vars.index[k]
            images[i] = v
    used = p.variables()
    for i in used:
        if images[i] is None:
            raise KeyError(f"no image for {ring.names[i]}")
    tgt = target
    for i in used:
        if isinstance(images[i], Polynomial):
            if tgt is None:
                tgt = images[i].ring
            elif images[i].ring != tgt:
                raise ValueError("images live in different rings")
    if tgt is None:
        tgt = target or ring
    imgs = {i: (images[i] if isinstance(images[i], Polynomial) else tgt.const(images[i])) for i in used}
    powers: dict = {}

    def power(i, e):
        key = (i, e)
        r = powers.get(key)
        if r is None:
            r = imgs[i] if e == 1 else power(i, e - 1) * imgs[i]
            powers[key] = r
        return r

    acc: dict = {}
    fp = tgt.p
    for exps, c in p.exponent_items():
        term = tgt.const(c)
        for i, e in enumerate(exps):
            if e:
                term = term * power(i, e)
                if not term.terms:
                    break
        for m, v in term.terms.items():
            acc[m] = acc.get(m, 0) + v
    if fp is None:
        out = {m: v for m, v in acc.items() if v}
    else:
        out = {m: v % fp for m, v in acc.items() if v % fp}
    return Polynomial(tgt, out)


def evaluate(p: Polynomial, point: Sequence):
    ring = p.ring
    if len(point) != ring.nvars:
        raise ValueError("point length does not match the variable table")
    pt = [ring.coerce(x) for x in point]
    fp = ring.p
    total = 0
    for exps, c in p.exponent_items():
        v = c
        for x, e in zip(pt, exps):
            if e:
                v = v * (pow(x, e, fp) if fp is not None else x ** e)
                if fp is not None:
                    v %= fp
        total += v
    if fp is not None:
        return total % fp
    return ring.coerce(total)


# -- text syntax ------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\S))")


def _tokens(text: str):
    pos = 0
    out = []
    while pos < len(text):
        mt = _TOKEN.match(text, pos)
        if mt is None:
            break
        num, name, op = mt.groups()
        if num is not None:
            out.append(("num", num, mt.start(1)))
        elif name is not None:
            out.append(("var", name, mt.start(2)))
        elif op is not None:
            if op not in "+-*/^()":
                raise ValueError(f"unexpected character {op!r} at position {mt.start(3)}")
            out.append((op, op, mt.start(3)))
        pos = mt.end()
    out.append(("end", "", len(text)))
    return out


class _Parser:
    """expr := term (('+'|'-') term)* ; term := unary ('*' unary)* ;
    unary := '-' unary | power ; power := atom ('^' int)? ; atom := num ('/' num)? | var | '(' expr ')'"""

    def __init__(self, ring: Ring, text: str):
        self.ring, self.text = ring, text
        self.toks = _tokens(text)
        self.k = 0

    def peek(self):
        return self.toks[self.k][0]

    def take(self, kind=None):
        tok = self.toks[self.k]
        if kind is not None and tok[0] != kind:
            want = "a number" if kind == "num" else repr(kind)
            raise ValueError(f"expected {want} at position {tok[2]} in {self.text!r}")
        self.k += 1
        return tok

    def expr(self):
        acc = self.term()
        while self.peek() in ("+", "-"):
            op = self.take()[0]
            rhs = self.term()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    def term(self):
        acc = self.unary()
        while self.peek() == "*":
            self.take()
            acc = acc * self.unary()
        return acc

    def unary(self):
        if self.peek() == "-":
            self.take()
            return -self.unary()
        if self.peek() == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek() == "^":
            self.take()
            base = base ** int(self.take("num")[1])
        return base

    def atom(self):
        kind, val, pos = self.take()
        if kind == "num":
            c = mpq(int(val))
            if self.peek() == "/":
                self.take()
                den = int(self.take("num")[1])
                if den == 0:
                    raise ValueError(f"zero denominator at position {pos}")
                c = mpq(int(val), den)
            return self.ring.const(c)
        if kind == "var":
            if val not in self.ring.vars.index:
                raise ValueError(f"unknown variable {val!r} at position {pos}")
            return self.ring.var(val)
        if kind == "(":
            inner = self.expr()
            self.take(")")
            return inner
        raise ValueError(f"unexpected {val or 'end of input'!r} at position {pos} in {self.text!r}")


def parse_poly(ring: Ring, text: str) -> Polynomial:
    """Parse text such as ``3*x_1_2^2*y_3 - 1/2*(z + x)^2`` in the given ring."""
    if not text.strip():
        raise ValueError("empty polynomial text")
    ps = _Parser(ring, text)
    out = ps.expr()
    if ps.peek() != "end":
        raise ValueError(f"trailing input at position {ps.toks[ps.k][2]} in {text!r}")
    return out


def _fmt_coeff(c) -> str:
    c = mpq(c)
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


def format_poly(p: Polynomial, order: MonomialOrder | None = None) -> str:
    if not p.terms:
        return "0"
    ring = p.ring
    parts = []
    for m, c in p.sorted_terms(order):
        if ring.p is not None and c > ring.p // 2:
            c = c - ring.p
        neg = c < 0
        a = -c if neg else c
        factors = []
        for i, e in enumerate(ring.unpack(m)):
            if e == 1:
                factors.append(ring.names[i])
            elif e:
                factors.append(f"{ring.names[i]}^{e}")
        if not factors:
            body = _fmt_coeff(a)
        elif a == 1:
            body = "*".join(factors)
        else:
            body = _fmt_coeff(a) + "*" + "*".join(factors)
        parts.append(("- " if neg else "+ ") + body)
    s = " ".join(parts)
    return s[2:] if s.startswith("+ ") else "-" + s[1:]


# -- JSON -------------------------------------------------------------------

def poly_to_json(p: Polynomial) -> dict:
    ring = p.ring
    terms = []
    for m, c in p.sorted_terms():
        q = mpq(c)
        terms.append({"exps": list(ring.unpack(m)), "num": str(q.numerator), "den": str(q.denominator)})
    return {"vars": list(ring.names), "terms": terms}


def poly_from_json(obj: dict, ring: Ring | None = None, p: int | None = None) -> Polynomial:
    if not isinstance(obj, dict) or "vars" not in obj or "terms" not in obj:
        raise ValueError("polynomial JSON needs 'vars' and 'terms'")
    if ring is None:
        ring = Ring(obj["vars"], p)
    elif list(ring.names) != list(obj["vars"]):
        return poly_from_json(obj, None, ring.p).to_ring(ring)
    acc = {}
    for k, t in enumerate(obj["terms"]):
        try:
            exps = tuple(int(e) for e in t["exps"])
            c = mpq(int(t["num"]), int(t.get("den", "1")))
        except (KeyError, ValueError, TypeError) as exc:
            raise ValueError(f"bad term at position {k}: {exc}") from None
        if len(exps) != ring.nvars:
            raise ValueError(f"term {k}: exponent length {len(exps)} != {ring.nvars}")
        acc[exps] = acc.get(exps, 0) + c
    return ring.from_terms(acc)


def merge_rings(*rings: Ring) -> Ring:
    """Ring on the union of the variable names (first-seen order)."""
    names: list[str] = []
    seen = set()
    p = rings[0].p
    for r in rings:
        if r.p != p:
            raise ValueError("coefficient fields differ")
        for n in r.names:
            if n not in seen:
                seen.add(n)
                names.append(n)
    return Ring(names, p)
