"""Symmetric and Rees algebra presentations, and Sylvester forms.

Forms live in a ring ``R[T]`` whose first variables are those of ``R``;
the remaining ones are the presentation variables.  Membership in the
Rees kernel is tested by the substitution ``T_i -> f_i``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .groebner import Ideal, lift
from .matrix import PolyMatrix, determinant
from .poly import MonomialOrder, Polynomial, Ring, merge_rings, parse_poly, substitute


class LiftError(ArithmeticError):
    """A form is not in the ideal generated by the chosen pivots."""


def rees_ring(R: Ring, tnames: Sequence[str]) -> Ring:
    clash = set(tnames) & set(R.names)
    if clash:
        raise ValueError(f"presentation variables clash with ring variables: {sorted(clash)}")
    return merge_rings(R, Ring(list(tnames), R.p))


@dataclass(frozen=True)
class BigradedForm:
    poly: Polynomial
    xvars: tuple
    tvars: tuple

    def __post_init__(self):
        names = set(self.poly.ring.names)
        if not set(self.xvars) | set(self.tvars) <= names:
            raise ValueError("variables missing from the ambient ring")
        if self.poly and self.bidegree is None:
            raise ValueError(f"{self.poly} is not bihomogeneous")

    @classmethod
    def of(cls, poly: Polynomial, tvars: Sequence[str]) -> "BigradedForm":
        tv = tuple(tvars)
        xv = tuple(n for n in poly.ring.names if n not in tv)
        return cls(poly, xv, tv)

    def _split(self, m: int):
        ring = self.poly.ring
        e = ring.unpack(m)
        tset = set(self.tvars)
        dx = sum(x for x, n in zip(e, ring.names) if n not in tset)
        return dx, ring.mdeg(m) - dx

    @property
    def bidegree(self):
        degs = {self._split(m) for m in self.poly.terms}
        if not degs:
            return (0, 0)
        return degs.pop() if len(degs) == 1 else None

    @property
    def ring(self) -> Ring:
        return self.poly.ring

    def t_coefficients(self, R: Ring) -> dict:
        """T-exponent tuple -> x-coefficient, moved into R."""
        ring = self.poly.ring
        tidx = [ring.vars.index[n] for n in self.tvars]
        xidx = [ring.vars.index[n] for n in R.names]
        out: dict = {}
        for exps, c in self.poly.exponent_items():
            key = tuple(exps[i] for i in tidx)
            xe = tuple(exps[i] for i in xidx)
            out.setdefault(key, {})[xe] = c
        return {k: R.from_terms(v) for k, v in out.items()}

    def __str__(self):
        return str(self.poly)

    def to_json(self) -> dict:
        dx, dt = self.bidegree
        return {"xdeg": dx, "tdeg": dt, "poly": str(self.poly), "tvars": list(self.tvars),
                "vars": list(self.ring.names)}

    @classmethod
    def from_json(cls, obj: dict, p: int | None = None) -> "BigradedForm":
        ring = Ring(obj["vars"], p)
        form = cls.of(parse_poly(ring, obj["poly"]), obj["tvars"])
        if form.bidegree != (obj["xdeg"], obj["tdeg"]) and form.poly:
            raise ValueError(f"declared bidegree {(obj['xdeg'], obj['tdeg'])} "
                             f"differs from {form.bidegree}")
        return form


def sym_presentation(phi: PolyMatrix, gens: Sequence[Polynomial],
                     tnames: Sequence[str]) -> list[BigradedForm]:
    """Entries of (T_1 .. T_n)·phi; the columns of phi must be syzygies of gens."""
    R = phi.ring
    if len(gens) != phi.rows or len(tnames) != phi.rows:
        raise ValueError("need one generator and one presentation variable per row")
    if not (PolyMatrix(R, [list(gens)]) @ phi).is_zero():
        raise ValueError("columns of phi are not syzygies of the generators")
    S = rees_ring(R, tnames)
    T = [S.var(t) for t in tnames]
    out = []
    for j in range(phi.cols):
        f = sum((T[i] * phi[i, j].to_ring(S) for i in range(phi.rows)), S.zero())
        out.append(BigradedForm.of(f, tnames))
    return out


def rees_member(form: BigradedForm, gens: Sequence[Polynomial]) -> bool:
    """True iff the substitution T_i -> gens[i] kills the form."""
    if len(gens) != len(form.tvars):
        raise ValueError("one generator per presentation variable")
    R = gens[0].ring
    sigma = {t: g for t, g in zip(form.tvars, gens)}
    for n in form.xvars:
        sigma[n] = R.var(n)
    return not substitute(form.poly, sigma, R)


def coefficient_ideal(forms: Sequence[BigradedForm], R: Ring | None = None) -> Ideal:
    """Ideal of R generated by the x-coefficients of the given forms."""
    forms = list(forms)
    if not forms:
        if R is None:
            raise ValueError("an empty family needs the base ring")
        return Ideal.of([R.zero()], ring=R)
    if R is None:
        R = Ring(list(forms[0].xvars), forms[0].ring.p)
    gens = []
    for f in forms:
        gens.extend(c for c in f.t_coefficients(R).values() if c)
    return Ideal.of(gens or [R.zero()], ring=R)


# -- Sylvester forms ------------------------------------------------------------------

def divide_by_pivots(c: Polynomial, pivots: Sequence[Polynomial],
                     order: MonomialOrder | None = None):
    """Quotients of c by the pivots, earlier pivots taking precedence.

    Plain multivariate division; when it leaves a remainder, a Groebner lift
    is attempted instead.  Returns None if c is not in the ideal.
    """
    R = c.ring
    quots = [R.zero() for _ in pivots]
    leads = [g.leading(order) for g in pivots]
    rest = c
    rem = R.zero()
    while rest:
        m, a = rest.leading(order)
        for k, (lm, lc) in enumerate(leads):
            if R.divides(lm, m):
                q = Polynomial(R, {m - lm: R.div(a, lc)})
                quots[k] = quots[k] + q
                rest = rest - q * pivots[k]
                break
        else:
            t = Polynomial(R, {m: a})
            rem = rem + t
            rest = rest - t
    if not rem:
        return quots
    return lift(c, list(pivots), order)


@dataclass
class SylvesterDatum:
    inputs: tuple            # (p, q) as BigradedForms
    pivots: tuple            # (a, b) in R
    priority: tuple          # pivot indices in the order used for division
    psi: PolyMatrix          # over R[T]; [p; q] = psi·[a; b]
    det: BigradedForm
    identity_holds: bool

    def to_json(self) -> dict:
        return {
            "inputs": [f.to_json() for f in self.inputs],
            "pivots": [str(a) for a in self.pivots],
            "priority": list(self.priority),
            "psi": [[str(e) for e in row] for row in self.psi.entries],
            "det": self.det.to_json(),
            "identity_holds": self.identity_holds,
        }


def sylvester_form(p: BigradedForm, q: BigradedForm, a: Polynomial, b: Polynomial,
                   priority: Sequence[int] = (0, 1),
                   order: MonomialOrder | None = None) -> SylvesterDatum:
    """Lift matrix of (p, q) over the pivots (a, b) and its determinant.

    Each T-coefficient of p and q is divided by the pivots, the pivot listed
    first in ``priority`` taking every term it can.
    """
    if p.tvars != q.tvars or p.ring != q.ring:
        raise ValueError("forms must share the presentation ring")
    R = a.ring
    S = p.ring
    pivots = (a, b)
    ordered = [pivots[i] for i in priority]
    T = [S.var(t) for t in p.tvars]
    rows = []
    for form in (p, q):
        row = [S.zero(), S.zero()]
        for texp, c in form.t_coefficients(R).items():
            qs = divide_by_pivots(c, ordered, order)
            if qs is None:
                raise LiftError(f"coefficient {c} of {form} is not in ({a}, {b})")
            tm = S.one()
            for t, e in zip(T, texp):
                if e:
                    tm = tm * t ** e
            for k, i in enumerate(priority):
                if qs[k]:
                    row[i] = row[i] + qs[k].to_ring(S) * tm
        rows.append(row)
    psi = PolyMatrix(S, rows)
    A, B = a.to_ring(S), b.to_ring(S)
    holds = all(r[0] * A + r[1] * B == f.poly for r, f in zip(rows, (p, q)))
    if not holds:
        raise ArithmeticError("lift identity failed")
    d = determinant(psi)
    return SylvesterDatum((p, q), pivots, tuple(priority), psi, BigradedForm.of(d, p.tvars), holds)


# -- the two degree-four examples -------------------------------------------------------

def _example_ring() -> Ring:
    return Ring(["x", "y", "z"])


def example_deg4() -> PolyMatrix:
    R = _example_ring()
    return PolyMatrix(R, [[R("x^2"), R("y^2")], [R("y^2"), R("x*y")], [R("x*z"), R("x^2")]])


def example_deg4_bis() -> PolyMatrix:
    R = _example_ring()
    return PolyMatrix(R, [[R("x^2"), R("y*z")], [R("x*y"), R("y^2")], [R("y^2"), R("x*z")]])


@dataclass
class ReesExampleReport:
    name: str
    forms: list
    datum: SylvesterDatum
    members: dict
    checks: dict

    @property
    def ok(self) -> bool:
        return all(self.members.values()) and all(self.checks.values())


TVARS = ("t", "u", "v")


def deg4_report() -> ReesExampleReport:
    from .groebner import ideal_equal
    from .matrix import minor_ideal_gens, signed_maximal_minors
    phi = example_deg4()
    R = phi.ring
    gens = signed_maximal_minors(phi)
    f, g = sym_presentation(phi, gens, TVARS)
    S = f.ring
    x, y = R("x"), R("y")
    dat = sylvester_form(f, g, x, y ** 2)
    expect_psi = PolyMatrix(S, [[S("x*t+z*v"), S("u")], [S("y*u+x*v"), S("t")]])
    M = PolyMatrix(S, [[S("-t"), S("y*u+x*v")], [S("u"), S("-x*t-z*v")], [S("x"), S("y^2")]])
    pres = ideal_equal([f.poly, g.poly, dat.det.poly], minor_ideal_gens(M, 2))
    checks = {
        "f": f.poly == S("x^2*t+y^2*u+x*z*v"),
        "g": g.poly == S("y^2*t+x*y*u+x^2*v"),
        "psi": dat.psi == expect_psi,
        "minor_presentation": pres,
    }
    members = {name: rees_member(h, gens) for name, h in (("f", f), ("g", g), ("det", dat.det))}
    return ReesExampleReport("deg4", [f, g, dat.det], dat, members, checks)


def deg4_bis_report() -> ReesExampleReport:
    from .matrix import signed_maximal_minors
    phi = example_deg4_bis()
    R = phi.ring
    gens = signed_maximal_minors(phi)
    f, g = sym_presentation(phi, gens, TVARS)
    S = f.ring
    x, y, z = R("x"), R("y"), R("z")
    # terms divisible by both x and y go to y
    dat = sylvester_form(f, g, x, y, priority=(1, 0))
    det_expected = S("x*z*t^2+x*y*t*u-x*z*u*v-y*z*v^2")
    h_expected = S("z*t^3+y*t^2*u-x*t*u*v-z*t*u*v-y*u^2*v+z*v^3")
    it = sylvester_form(dat.det, g, x * z, y)
    h = BigradedForm.of(h_expected, TVARS)
    checks = {
        "det": dat.det.poly == det_expected,
        "iterated_is_h": it.det.poly == h_expected,
        "h_bidegree": h.bidegree == (1, 3),
    }
    members = {"f": rees_member(f, gens), "g": rees_member(g, gens),
               "det": rees_member(dat.det, gens), "h": rees_member(h, gens)}
    return ReesExampleReport("deg4_bis", [f, g, dat.det, h], dat, members, checks)
