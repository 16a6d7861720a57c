"""Buchberger engine plus the ideal invariants read off an initial ideal.

Height is computed as the minimum vertex cover of the supports of the
minimal generators of the initial ideal; for ideals in a polynomial ring
the height of I and of in(I) agree, and for homogeneous ideals height and
grade coincide.
"""

from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass, field
from typing import Sequence

from .poly import MonomialOrder, Polynomial, Ring, change_field

DEFAULT_MAX_SIZE = 20000
UNIT_HEIGHT = float("inf")   # height of the unit ideal


class GroebnerSizeError(RuntimeError):
    pass


@dataclass
class Ideal:
    generators: list
    ring: Ring
    order: MonomialOrder = field(default_factory=MonomialOrder)

    def __post_init__(self):
        self.generators = [g for g in self.generators if g]
        for g in self.generators:
            if g.ring != self.ring:
                raise ValueError("generators live in different rings")

    @classmethod
    def of(cls, gens: Sequence[Polynomial], order: MonomialOrder | None = None, ring: Ring | None = None):
        gens = list(gens)
        if ring is None:
            if not gens:
                raise ValueError("cannot infer the ring of an empty generator list")
            ring = gens[0].ring
        return cls(gens, ring, order or MonomialOrder())


@dataclass
class GroebnerBasis:
    basis: list
    order: MonomialOrder
    ring: Ring
    source: Ideal | None = None
    stats: dict = field(default_factory=dict)

    def __len__(self):
        return len(self.basis)

    def __iter__(self):
        return iter(self.basis)

    def leading_monomials(self) -> list[int]:
        return [g.leading_monomial(self.order) for g in self.basis]

    def is_unit(self) -> bool:
        return any(g.is_constant() and g for g in self.basis)

    def contains(self, p: Polynomial) -> bool:
        return not normal_form(p, self)


@dataclass(frozen=True)
class MonomialIdeal:
    generators: tuple      # minimal exponent tuples
    nvars: int
    names: tuple = ()

    @classmethod
    def from_exponents(cls, exps, nvars: int, names=()):
        return cls(tuple(_minimalize([tuple(e) for e in exps])), nvars, tuple(names))

    def __len__(self):
        return len(self.generators)


def _minimalize(exps):
    exps = sorted(set(exps), key=lambda e: (sum(e), e))
    out = []
    for e in exps:
        if not any(all(a <= b for a, b in zip(f, e)) for f in out):
            out.append(e)
    return out


# -- reduction core -----------------------------------------------------------

class _Reducer:
    """Packed-monomial division against a list of monic polynomials."""

    def __init__(self, ring: Ring, order: MonomialOrder):
        self.ring = ring
        self.order = order
        self.key = order.key(ring)
        self.natural = order.is_natural(ring)
        self.rest = ring.rest_mask
        self.guard = ring.guard
        self.p = ring.p

    def leading(self, terms: dict):
        key = self.key
        return max(terms, key=key)

    def monic(self, terms: dict):
        lm = self.leading(terms)
        c = terms[lm]
        if c == 1:
            return terms
        ring = self.ring
        inv = ring.inv(c)
        if self.p is None:
            out = {}
            for m, v in terms.items():
                w = v * inv
                if type(w) is not int and w.denominator == 1:
                    w = int(w)
                out[m] = w
            return out
        return {m: v * inv % self.p for m, v in terms.items()}

    def reduce(self, terms: dict, reducers, full: bool = True, quotients=None):
        """Normal form of ``terms`` (dict) by ``reducers`` = [(lm, tail_items)].

        Reducers are monic.  With ``full=False`` only top-reduction happens.
        If ``quotients`` is a list of dicts, the multiples used are recorded
        there (one dict per reducer).
        """
        key = self.key
        guard = self.guard
        fp = self.p
        natural = self.natural
        rest = self.rest
        r = dict(terms)
        kmap = None if natural else {}
        heap = []
        for m in r:
            k = key(m)
            if kmap is not None:
                kmap[k] = m
            heap.append(-k)
        heapq.heapify(heap)
        out = {}
        while heap:
            k = -heapq.heappop(heap)
            m = (k ^ rest) if natural else kmap[k]
            c = r.pop(m, None)
            if c is None:
                continue
            red = None
            for idx, (lm, tail) in enumerate(reducers):
                d = m - lm
                if d >= 0 and not (d & guard):
                    red = idx
                    break
            if red is None:
                out[m] = c
                if not full:
                    out.update(r)
                    return out
                continue
            _, tail = reducers[red]
            if quotients is not None:
                q = quotients[red]
                q[d] = q.get(d, 0) + c
            for mt, ct in tail:
                mm = d + mt
                v = r.get(mm)
                if v is None:
                    v = -c * ct
                    if fp is not None:
                        v %= fp
                    if v:
                        r[mm] = v
                        kk = key(mm)
                        if kmap is not None:
                            kmap[kk] = mm
                        heapq.heappush(heap, -kk)
                else:
                    v -= c * ct
                    if fp is not None:
                        v %= fp
                    if v:
                        r[mm] = v
                    else:
                        del r[mm]
        if fp is None:
            out = {m: (int(v) if type(v) is not int and v.denominator == 1 else v) for m, v in out.items()}
        return out


def _as_reducer(terms: dict, lm: int):
    return lm, [(m, c) for m, c in terms.items() if m != lm]


# -- Buchberger -----------------------------------------------------------------

def buchberger(I, order: MonomialOrder | None = None, max_size: int = DEFAULT_MAX_SIZE,
               p: int | None = None) -> GroebnerBasis:
    """Reduced Groebner basis.

    Pairs are processed by smallest sugar degree, then smallest lcm, and
    pruned with the product and chain criteria (Gebauer-Moeller update).
    ``p`` recomputes the basis over F_p.
    """
    if not isinstance(I, Ideal):
        I = Ideal.of(list(I), order)
    order = order or I.order
    ring = I.ring
    gens = I.generators
    if p is not None and p != ring.p:
        ring = ring.with_field(p)
        gens = [change_field(g, ring) for g in gens]
        gens = [g for g in gens if g]
    R = _Reducer(ring, order)
    key = R.key
    deg = ring.mdeg

    polys: list[dict] = []
    lms: list[int] = []
    sugar: list[int] = []
    active: list[int] = []
    pairs: list = []          # heap of (sugar, lcm key, i, j, lcm)
    live: set = set()

    def lcm(a, b):
        return ring.lcm(a, b)

    def divides(a, b):
        d = b - a
        return d >= 0 and not (d & ring.guard)

    def reducers():
        return [_as_reducer(polys[i], lms[i]) for i in active]

    red_cache = {"stamp": None, "list": None}

    def current_reducers():
        stamp = (len(polys), tuple(active))
        if red_cache["stamp"] != stamp:
            red_cache["stamp"] = stamp
            red_cache["list"] = reducers()
        return red_cache["list"]

    def add(h: dict, s: int):
        idx = len(polys)
        lmh = R.leading(h)
        polys.append(h)
        lms.append(lmh)
        sugar.append(s)
        # Gebauer-Moeller update
        pending = [(g, lcm(lms[g], lmh)) for g in active]
        keep = []
        while pending:
            g, l = pending.pop(0)
            coprime = ring.coprime(lms[g], lmh)
            if coprime or not (any(divides(l2, l) for _, l2 in pending)
                               or any(divides(l2, l) for _, l2, _ in keep)):
                keep.append((g, l, coprime))
        # drop old pairs killed by the chain criterion
        survivors = set()
        for (i, j) in live:
            l_ij = lcm(lms[i], lms[j])
            if divides(lmh, l_ij) and lcm(lms[i], lmh) != l_ij and lcm(lms[j], lmh) != l_ij:
                continue
            survivors.add((i, j))
        live.clear()
        live.update(survivors)
        for g, l, coprime in keep:
            if coprime:
                continue
            s_pair = max(sugar[g] - deg(lms[g]), s - deg(lmh)) + deg(l)
            heapq.heappush(pairs, (s_pair, key(l), g, idx, l))
            live.add((g, idx))
        # retire basis elements whose leading monomial is now redundant
        active[:] = [g for g in active if not divides(lmh, lms[g])]
        active.append(idx)
        if len(active) > max_size:
            raise GroebnerSizeError(f"basis exceeded {max_size} elements")

    seen_unit = False
    for g in sorted(gens, key=lambda g: (g.degree(), len(g))):
        t = R.reduce(g.terms, current_reducers())
        if not t:
            continue
        t = R.monic(t)
        if 0 in t and len(t) == 1:
            seen_unit = True
            break
        add(t, max(deg(m) for m in t))

    npairs = 0
    nzero = 0
    while pairs and not seen_unit:
        s_pair, _, i, j, l = heapq.heappop(pairs)
        if (i, j) not in live:
            continue
        live.discard((i, j))
        npairs += 1
        fi, fj = polys[i], polys[j]
        di, dj = l - lms[i], l - lms[j]
        sp = {}
        fp = ring.p
        for m, c in fi.items():
            sp[m + di] = c
        for m, c in fj.items():
            k = m + dj
            v = sp.get(k, 0) - c
            if fp is not None:
                v %= fp
            if v:
                sp[k] = v
            else:
                sp.pop(k, None)
        if not sp:
            nzero += 1
            continue
        h = R.reduce(sp, current_reducers())
        if not h:
            nzero += 1
            continue
        h = R.monic(h)
        if 0 in h and len(h) == 1:
            seen_unit = True
            break
        add(h, s_pair)

    if seen_unit:
        basis = [ring.one()]
    else:
        # minimal basis, then tail-reduce
        act = sorted(active, key=lambda i: key(lms[i]))
        basis = []
        for i in act:
            others = [_as_reducer(polys[j], lms[j]) for j in act if j != i]
            lm = lms[i]
            tail = {m: c for m, c in polys[i].items() if m != lm}
            red = R.reduce(tail, others) if tail else {}
            red[lm] = 1
            basis.append(Polynomial(ring, red))
    return GroebnerBasis(basis, order, ring, I, {"pairs": npairs, "zero_reductions": nzero})


def groebner(gens, order: MonomialOrder | None = None, **kw) -> GroebnerBasis:
    return buchberger(Ideal.of(list(gens), order), order, **kw)


def normal_form(p: Polynomial, G: GroebnerBasis) -> Polynomial:
    ring = G.ring
    if p.ring != ring:
        p = change_field(p, ring)
    R = _Reducer(ring, G.order)
    reds = [_as_reducer(g.terms, g.leading_monomial(G.order)) for g in G.basis]
    return Polynomial(ring, R.reduce(p.terms, reds))


def reduce_by(p: Polynomial, gens: Sequence[Polynomial], order: MonomialOrder | None = None):
    """Remainder of p after division by gens (made monic), not necessarily a GB."""
    order = order or MonomialOrder()
    ring = p.ring
    R = _Reducer(ring, order)
    reds = []
    for g in gens:
        if not g:
            continue
        t = R.monic(g.terms)
        reds.append(_as_reducer(t, R.leading(t)))
    return Polynomial(ring, R.reduce(p.terms, reds))


def is_groebner(gens: Sequence[Polynomial], order: MonomialOrder | None = None) -> bool:
    """All S-polynomials reduce to zero against gens (coprime pairs skipped)."""
    gens = [g for g in gens if g]
    if not gens:
        return True
    order = order or MonomialOrder()
    ring = gens[0].ring
    R = _Reducer(ring, order)
    mon = [R.monic(g.terms) for g in gens]
    lms = [R.leading(t) for t in mon]
    reds = [_as_reducer(t, lm) for t, lm in zip(mon, lms)]
    fp = ring.p
    for i, j in itertools.combinations(range(len(mon)), 2):
        if ring.coprime(lms[i], lms[j]):
            continue
        l = ring.lcm(lms[i], lms[j])
        di, dj = l - lms[i], l - lms[j]
        sp = {}
        for m, c in mon[i].items():
            sp[m + di] = c
        for m, c in mon[j].items():
            k = m + dj
            v = sp.get(k, 0) - c
            if fp is not None:
                v %= fp
            if v:
                sp[k] = v
            else:
                sp.pop(k, None)
        if sp and R.reduce(sp, reds):
            return False
    return True


def initial_ideal(G: GroebnerBasis) -> MonomialIdeal:
    ring = G.ring
    exps = [ring.unpack(m) for m in G.leading_monomials()]
    return MonomialIdeal.from_exponents(exps, ring.nvars, ring.names)


def leading_term_ideal(gens: Sequence[Polynomial], order: MonomialOrder | None = None) -> MonomialIdeal:
    """Monomial ideal of the leading monomials of the given polynomials."""
    ring = gens[0].ring
    exps = [ring.unpack(g.leading_monomial(order)) for g in gens if g]
    return MonomialIdeal.from_exponents(exps, ring.nvars, ring.names)


# -- height --------------------------------------------------------------------------

def _min_cover(sets: list[frozenset]) -> int:
    """Minimum hitting set size (exact branch and bound)."""
    sets = sorted(set(sets), key=len)
    minimal = []
    for s in sets:
        if not any(t <= s for t in minimal):
            minimal.append(s)
    if any(not s for s in minimal):
        return float("inf")
    best = [len({min(s) for s in minimal})]
    best[0] = min(best[0], len(set().union(*minimal)) if minimal else 0)

    def lower_bound(rem):
        # disjoint sets need distinct cover vertices
        used = set()
        cnt = 0
        for s in rem:
            if not (s & used):
                used |= s
                cnt += 1
        return cnt

    def rec(rem, chosen):
        if not rem:
            best[0] = min(best[0], chosen)
            return
        if chosen + lower_bound(rem) >= best[0]:
            return
        pivot = min(rem, key=len)
        for v in sorted(pivot):
            rec([s for s in rem if v not in s], chosen + 1)

    rec(minimal, 0)
    return best[0]


def monomial_height(M: MonomialIdeal) -> int:
    """Minimum number of variables meeting the support of every generator."""
    if not M.generators:
        return 0
    supports = [frozenset(i for i, e in enumerate(g) if e) for g in M.generators]
    if any(not s for s in supports):
        return UNIT_HEIGHT
    return _min_cover(supports)


def ideal_height(I, order: MonomialOrder | None = None, p: int | None = None, **kw) -> int:
    G = I if isinstance(I, GroebnerBasis) else buchberger(
        I if isinstance(I, Ideal) else Ideal.of(list(I), order), order, p=p, **kw)
    return monomial_height(initial_ideal(G))


def height_at_least(gens: Sequence[Polynomial], k: int, order: MonomialOrder | None = None,
                    p: int | None = None) -> tuple[bool, int, int]:
    """Decide ht(gens) >= k through subideals.

    Generators are added cheapest first; since ht is monotone in the ideal,
    a subideal of height >= k settles the question.  Returns (answer,
    height found, number of generators used).
    """
    gens = sorted([g for g in gens if g], key=lambda g: (len(g), g.degree()))
    if not gens:
        return k <= 0, 0, 0
    n = min(max(k, 1), len(gens))
    while True:
        h = ideal_height(gens[:n], order, p=p)
        if h >= k:
            return True, h, n
        if n == len(gens):
            return False, h, n
        n = min(len(gens), 2 * n)


# -- Hilbert series ------------------------------------------------------------------

def _poly_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_add(a, b):
    n = max(len(a), len(b))
    out = [(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)]
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out


def _hilbert_num(gens: list) -> list[int]:
    gens = _minimalize(gens)
    if not gens:
        return [1]
    # pairwise coprime generators: product formula
    supports = [frozenset(i for i, e in enumerate(g) if e) for g in gens]
    union = set()
    disjoint = True
    for s in supports:
        if union & s:
            disjoint = False
            break
        union |= s
    if disjoint:
        out = [1]
        for g in gens:
            d = sum(g)
            f = [0] * (d + 1)
            f[0] = 1
            f[d] = -1
            out = _poly_mul(out, f)
        return out
    # pivot on the most frequent variable among non-linear generators
    counts: dict = {}
    for g in gens:
        for i, e in enumerate(g):
            if e:
                counts[i] = counts.get(i, 0) + 1
    v = max(counts, key=lambda i: (counts[i], -i))
    n = len(gens[0])
    # pivot monomial x_v
    pv = tuple(1 if i == v else 0 for i in range(n))
    plus = [g for g in gens if not g[v]] + [pv]
    colon = [tuple(e - 1 if i == v and e else e for i, e in enumerate(g)) for g in gens]
    a = _hilbert_num(plus)
    b = _hilbert_num(colon)
    return _poly_add(a, [0] + b)


def hilbert_series_monomial(M: MonomialIdeal, nvars: int | None = None) -> list[int]:
    """Numerator N(u) (coefficient list) with HS_{R/M} = N(u)/(1-u)^nvars."""
    if not M.generators:
        return [1]
    return _hilbert_num(list(M.generators))


def hilbert_data(numerator: list[int], nvars: int):
    """(codimension, dimension, multiplicity) from the Hilbert numerator."""
    q = list(numerator)
    c = 0
    while sum(q) == 0 and any(q):
        # divide by (1 - u)
        out = []
        acc = 0
        for a in q[:-1]:
            acc += a
            out.append(acc)
        q = out
        c += 1
    return c, nvars - c, sum(q)


def multiplicity(G, order: MonomialOrder | None = None) -> int:
    if not isinstance(G, GroebnerBasis):
        G = buchberger(Ideal.of(list(G), order), order)
    M = initial_ideal(G)
    return hilbert_data(hilbert_series_monomial(M), M.nvars)[2]


# -- ideal comparisons ---------------------------------------------------------------

def ideal_contains(G: GroebnerBasis, gens: Sequence[Polynomial]) -> bool:
    return all(not normal_form(g, G) for g in gens if g)


def ideal_equal(I, J, order: MonomialOrder | None = None, p: int | None = None) -> bool:
    I = I if isinstance(I, Ideal) else Ideal.of(list(I), order)
    J = J if isinstance(J, Ideal) else Ideal.of(list(J), order)
    GI = buchberger(I, order, p=p)
    GJ = buchberger(J, order, p=p)
    return ideal_contains(GI, J.generators) and ideal_contains(GJ, I.generators)


def member(p: Polynomial, gens, order: MonomialOrder | None = None) -> bool:
    G = gens if isinstance(gens, GroebnerBasis) else buchberger(Ideal.of(list(gens), order), order)
    return not normal_form(p, G)


# -- lifting -------------------------------------------------------------------------

def lift(p: Polynomial, gens: Sequence[Polynomial], order: MonomialOrder | None = None):
    """Quotients (q_1..q_k) with p = sum q_i gens_i, or None if p is not in the ideal.

    A Groebner basis is built with every element tracked as a combination of
    the inputs; division then assigns each term to the first basis element
    (inputs first, in the given order) whose leading monomial divides it.
    """
    order = order or MonomialOrder()
    ring = p.ring
    R = _Reducer(ring, order)
    k = len(gens)
    basis: list[dict] = []
    reps: list[list[Polynomial]] = []
    for idx, g in enumerate(gens):
        if not g:
            continue
        lm = R.leading(g.terms)
        c = g.terms[lm]
        inv = ring.inv(c)
        basis.append(R.monic(g.terms))
        rep = [ring.zero()] * k
        rep[idx] = ring.const(inv)
        reps.append(rep)
    lms = [R.leading(t) for t in basis]
    queue = list(itertools.combinations(range(len(basis)), 2))
    while queue:
        i, j = queue.pop(0)
        if ring.coprime(lms[i], lms[j]):
            continue
        l = ring.lcm(lms[i], lms[j])
        di, dj = l - lms[i], l - lms[j]
        sp = Polynomial(ring, basis[i]).mul_term(di, 1) - Polynomial(ring, basis[j]).mul_term(dj, 1)
        rep = [a.mul_term(di, 1) - b.mul_term(dj, 1) for a, b in zip(reps[i], reps[j])]
        quots = [dict() for _ in basis]
        reds = [_as_reducer(t, lm) for t, lm in zip(basis, lms)]
        h = R.reduce(sp.terms, reds, quotients=quots)
        if not h:
            continue
        for qi, q in enumerate(quots):
            if q:
                qp = Polynomial(ring, q)
                rep = [a - qp * b for a, b in zip(rep, reps[qi])]
        lm = R.leading(h)
        inv = ring.inv(h[lm])
        basis.append(R.monic(h))
        lms.append(lm)
        reps.append([a.scale(inv) for a in rep])
        n = len(basis) - 1
        queue.extend((a, n) for a in range(n))
    quots = [dict() for _ in basis]
    reds = [_as_reducer(t, lm) for t, lm in zip(basis, lms)]
    r = R.reduce(p.terms, reds, quotients=quots)
    if r:
        return None
    out = [ring.zero()] * k
    for qi, q in enumerate(quots):
        if q:
            qp = Polynomial(ring, q)
            out = [a + qp * b for a, b in zip(out, reps[qi])]
    return out
