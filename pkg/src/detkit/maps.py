"""Rational maps defined by cofactors, partial derivatives and minors.

A map is stored as a ``SubstitutionMap``: a source ring of "dual" variables
and one image polynomial per source variable.  Kernel questions reduce to
substituting and testing for zero (or for divisibility by a modulus).
"""

from __future__ import annotations

import enum
import itertools
import random
from dataclasses import dataclass, field
from typing import Sequence

from . import linalg
from .catalog import generic_matrix, slot_name
from .matrix import (PolyMatrix, adjugate, complement, determinant, index_seq,
                     minor, minors, rank as matrix_rank, rank_mod, signed_maximal_minors)
from .poly import DEFAULT_PRIME, Polynomial, Ring, exact_div, merge_rings, substitute


def dual_name(name: str, prefix: str = "y") -> str:
    if name.startswith("x_"):
        return prefix + name[1:]
    return f"{prefix}_{name}"


@dataclass
class SubstitutionMap:
    source: Ring
    images: list
    target: Ring
    modulus: Polynomial | None = None
    label: str = ""

    def __post_init__(self):
        if len(self.images) != self.source.nvars:
            raise ValueError("a substitution map needs one image per source variable")
        for g in self.images:
            if g.ring != self.target:
                raise ValueError("images must live in the target ring")

    def apply(self, p: Polynomial) -> Polynomial:
        if p.ring != self.source:
            p = p.to_ring(self.source)
        return substitute(p, self.images, self.target)

    __call__ = apply

    def image_of(self, name: str) -> Polynomial:
        return self.images[self.source.vars.index[name]]

    def common_degree(self):
        degs = {g.homogeneous_degree() for g in self.images if g}
        return degs.pop() if len(degs) == 1 else None


def polar_map(f: Polynomial, prefix: str = "y") -> SubstitutionMap:
    """y_v -> df/dv for every variable v, reduced modulo f."""
    if f.is_constant():
        raise ValueError("the polar map of a constant is undefined")
    if not f.is_homogeneous():
        raise ValueError("the polar map needs a form")
    R = f.ring
    S = Ring([dual_name(n, prefix) for n in R.names], R.p)
    return SubstitutionMap(S, [f.diff(i) for i in range(R.nvars)], R, f, "polar")


def cofactor_map(L: PolyMatrix, prefix: str = "y") -> SubstitutionMap:
    """y_i_j -> adj(L)_{i,j}, i.e. the signed cofactor of slot (j, i)."""
    if not L.is_square():
        raise ValueError("the cofactor map needs a square matrix")
    m = L.rows
    S = generic_matrix(m, name=prefix, p=L.ring.p).ring
    adj = adjugate(L)
    return SubstitutionMap(S, [adj[i, j] for i in range(m) for j in range(m)], L.ring, None, "cofactor")


class KernelStatus(enum.Enum):
    ZERO = "Zero"
    ZERO_MOD_F = "ZeroModF"
    NONZERO = "Nonzero"


@dataclass
class KernelResult:
    status: KernelStatus
    image: Polynomial

    @property
    def in_kernel(self) -> bool:
        return self.status is not KernelStatus.NONZERO


def kernel_member(p: Polynomial, sigma: SubstitutionMap) -> KernelResult:
    img = sigma.apply(p)
    if not img:
        return KernelResult(KernelStatus.ZERO, img)
    if sigma.modulus is not None and exact_div(img, sigma.modulus) is not None:
        return KernelResult(KernelStatus.ZERO_MOD_F, img)
    return KernelResult(KernelStatus.NONZERO, img)


def image_minor_relations(L: PolyMatrix, rows: Sequence[int], cols: Sequence[int], prefix: str = "y"):
    """Minors of Y_{rows,cols} forced into the kernel of the cofactor map.

    Needs L restricted to (complement of cols) × (complement of rows) to be
    zero.  With rho the rank of L_{cols, complement(rows)}, every minor of
    Y_{rows,cols} of size |cols| - rho + 1 is returned.
    """
    if not L.is_square():
        raise ValueError("square matrix expected")
    m = L.rows
    rows, cols = index_seq(rows, m), index_seq(cols, m)
    crow, ccol = complement(rows, m), complement(cols, m)
    for a in ccol:
        for b in crow:
            if L[a - 1, b - 1]:
                raise ValueError(f"block ({ccol}, {crow}) is not zero: slot {(a, b)}")
    if crow:
        block = L.submatrix([j - 1 for j in cols], [i - 1 for i in crow])
        rho = matrix_rank(block).rank
    else:
        rho = 0
    size = len(cols) - rho + 1
    Y = generic_matrix(m, name=prefix, p=L.ring.p)
    sub = Y.submatrix([i - 1 for i in rows], [j - 1 for j in cols])
    if size > min(sub.rows, sub.cols):
        return []
    return [g for _, _, g in minors(sub, size)]


@dataclass
class ClaimRecord:
    claim: str
    status: str
    witness: object = None

    def to_json(self) -> dict:
        out = {"claim": self.claim, "status": self.status}
        if self.witness is not None:
            out["witness"] = str(self.witness)
        return out


def dual_two_minor_check(L: PolyMatrix, first_block: Sequence[str], symmetric: bool = False):
    """Two-minors of L read in dual variables versus the polar map of det L.

    ``first_block`` names the variables allowed to sit alone in a slot.  For
    each 2×2 submatrix whose four slots carry such variables, the minor of
    the dual variables is pushed through the polar map of f = det L and f
    must divide the image.  Returns a list of ClaimRecords.
    """
    first = set(first_block)
    f = determinant(L)
    out = []
    if not f:
        return [ClaimRecord("det L != 0", "fail")]
    out.append(ClaimRecord("det L != 0", "pass"))
    # slot -> variable name for single-variable entries in the first block
    slot_var = {}
    for i in range(L.rows):
        for j in range(L.cols):
            e = L[i, j]
            if not e:
                continue
            vs = e.variable_names()
            if len(e) == 1 and e.degree() == 1 and vs[0] in first and e.leading()[1] == 1:
                slot_var[(i, j)] = vs[0]
            elif any(v in first for v in vs):
                out.append(ClaimRecord(f"slot {(i + 1, j + 1)} mixes first-block variables", "fail", e))
                return out
    seen: dict = {}
    violation = False
    for slot, v in slot_var.items():
        other = seen.get(v)
        if other is not None and not (symmetric and other == (slot[1], slot[0])):
            out.append(ClaimRecord(f"slots {other} and {slot} repeat {v}", "fail"))
            violation = True
        seen.setdefault(v, slot)
    if violation:
        return out
    out.append(ClaimRecord("first-block entries pairwise distinct", "pass"))
    polar = polar_map(f)
    S = polar.source
    for r1, r2 in itertools.combinations(range(L.rows), 2):
        for c1, c2 in itertools.combinations(range(L.cols), 2):
            slots = [(r1, c1), (r1, c2), (r2, c1), (r2, c2)]
            if not all(s in slot_var for s in slots):
                continue
            a, b, c, d = (S.var(dual_name(slot_var[s])) for s in slots)
            res = kernel_member(a * d - b * c, polar)
            label = f"minor rows {(r1 + 1, r2 + 1)} cols {(c1 + 1, c2 + 1)}"
            out.append(ClaimRecord(label, "pass" if res.in_kernel else "fail",
                                   None if res.in_kernel else res.image))
    out.append(ClaimRecord("some (m-1)-minor regular modulo f", "unverified"))
    return out


# -- linear syzygies and Jacobian duals --------------------------------------

@dataclass
class LinearSyzygies:
    matrix: PolyMatrix      # columns are syzygies
    rank: int


def linear_syzygies(forms: Sequence[Polynomial]) -> LinearSyzygies:
    """Basis of the relations sum l_i f_i = 0 with every l_i a linear form."""
    forms = list(forms)
    if not forms:
        raise ValueError("no forms given")
    R = forms[0].ring
    degs = {f.homogeneous_degree() for f in forms if f}
    if len(degs) != 1 or None in degs:
        raise ValueError("forms must be homogeneous of one common degree")
    n, k = len(forms), R.nvars
    units = [R._units[v] for v in range(k)]
    # unknown (i, v) -> column i*k + v; equation per monomial of degree d+1
    rows: dict = {}
    for i, f in enumerate(forms):
        for v in range(k):
            col = i * k + v
            for m, c in f.terms.items():
                rows.setdefault(m + units[v], {})[col] = c
    basis = linalg.nullspace(list(rows.values()), n * k, R.p)
    cols = []
    for vec in basis:
        col = [R.zero()] * n
        for idx, c in vec.items():
            i, v = divmod(idx, k)
            col[i] = col[i] + R.monomial([1 if t == v else 0 for t in range(k)], c)
        cols.append(col)
    if not cols:
        return LinearSyzygies(PolyMatrix(R, [[] for _ in range(n)], cols=0), 0)
    M = PolyMatrix(R, [[cols[j][i] for j in range(len(cols))] for i in range(n)])
    return LinearSyzygies(M, matrix_rank(M).rank)


@dataclass
class JacobianDual:
    B: PolyMatrix           # rows indexed by the x variables
    L: PolyMatrix
    xvars: tuple
    dual: Ring
    verified: bool


def jacobian_dual(L: PolyMatrix, xvars: Sequence[str] | None = None, prefix: str = "y",
                  dual_names: Sequence[str] | None = None) -> JacobianDual:
    """B with (y_1..y_r)·L = (x_1..x_d)·B, for L linear in the chosen x variables.

    Variables of L outside ``xvars`` are kept as coefficients and move
    into the dual ring.
    """
    R = L.ring
    xvars = tuple(xvars) if xvars is not None else R.names
    xidx = [R.vars.index[v] for v in xvars]
    extras = [n for n in R.names if n not in set(xvars)]
    ynames = list(dual_names) if dual_names is not None else [f"{prefix}_{i + 1}" for i in range(L.rows)]
    if len(ynames) != L.rows:
        raise ValueError("one dual variable per row of L is needed")
    S = Ring(ynames + extras, R.p)
    B = [[S.zero()] * L.cols for _ in xvars]
    for i in range(L.rows):
        yi = S.var(ynames[i])
        for j in range(L.cols):
            e = L[i, j]
            for exps, c in e.exponent_items():
                xdeg = sum(exps[t] for t in xidx)
                if xdeg != 1:
                    raise ValueError(f"entry ({i + 1},{j + 1}) is not linear in the chosen variables")
                a = next(a for a, t in enumerate(xidx) if exps[t])
                rest = {R.names[t]: exps[t] for t in range(R.nvars) if exps[t] and t not in xidx}
                term = S.monomial([rest.get(nm, 0) for nm in S.names], c)
                B[a][j] = B[a][j] + yi * term
    Bm = PolyMatrix(S, B, cols=L.cols)
    # identity check in a ring holding both sides
    T = merge_rings(R, S)
    ok = True
    for j in range(L.cols):
        lhs = sum((S.var(ynames[i]).to_ring(T) * L[i, j].to_ring(T) for i in range(L.rows)), T.zero())
        rhs = sum((T.var(x) * B[a][j].to_ring(T) for a, x in enumerate(xvars)), T.zero())
        if lhs != rhs:
            ok = False
    if not ok:
        raise ArithmeticError("Jacobian dual identity failed")
    return JacobianDual(Bm, L, tuple(xvars), S, ok)


def evaluate_at(M: PolyMatrix, values: Sequence[Polynomial], target: Ring) -> PolyMatrix:
    """Substitute the ring variables of M by ``values`` entrywise."""
    return PolyMatrix(target, [[substitute(e, list(values), target) for e in row] for row in M.entries],
                      cols=M.cols)


# -- homaloidal certificates --------------------------------------------------

@dataclass
class HomaloidalCertificate:
    certified: bool
    witness: Polynomial | None
    reason: str
    linear_rank: int | None = None
    rows_kept: tuple = ()
    cols_kept: tuple = ()


def hollow_relations(m: int):
    """Linear relations among the hollow Δ-set from the adjugate identity.

    Returns (H, deltas, Z): the hollow matrix, the cofactor list ordered like
    its variables, and the syzygy block with one column per relation.
    """
    from .catalog import hollow_slots, hollow_symmetric
    H = hollow_symmetric(m)
    R = H.ring
    slots = hollow_slots(m)
    adj = adjugate(H)
    deltas = [adj[i - 1, j - 1] for i, j in slots]
    pos = {s: k for k, s in enumerate(slots)}
    t = m // 2 + 1
    cols = []
    for j in range(2, m + 1):
        col = [R.zero()] * len(slots)
        col[pos[(1, 1)]] = H[0, j - 1]
        col[pos[(1, m + 2 - j)]] = col[pos[(1, m + 2 - j)]] + H[m + 1 - j, j - 1]
        cols.append(col)
    for i in range(2, t + 1):
        col = [R.zero()] * len(slots)
        for j in range(1, m + 1):
            if j != i:
                col[pos[(1, j)]] = H[0, j - 1]
        col[pos[(i, m + 2 - i)]] = -H[i - 1, m + 1 - i]
        cols.append(col)
    Z = PolyMatrix(R, [[c[k] for c in cols] for k in range(len(slots))])
    return H, deltas, Z


def _check_syzygies(gens: Sequence[Polynomial], Z: PolyMatrix) -> bool:
    row = PolyMatrix(Z.ring, [list(gens)])
    return (row @ Z).is_zero()


def _nonzero_at_points(M: PolyMatrix, images, seed: int, tries: int = 4):
    """Exact rational evaluation of det M(images) at random integer points."""
    rng = random.Random(seed)
    R = images[0].ring
    for _ in range(tries):
        pt = [rng.randint(-20, 20) for _ in range(R.nvars)]
        vals = [g(pt) for g in images]
        grid = [[e(vals) for e in row] for row in M.entries]
        if linalg.dense_det(grid, None):
            return True, pt
    return False, None


def homaloidal_certificate_hollow(m: int, symbolic: bool = True, seed: int = 0) -> HomaloidalCertificate:
    """det B1 at the cofactors of the hollow matrix, B1 dropping the x_1_1 row."""
    H, deltas, Z = hollow_relations(m)
    if not _check_syzygies(deltas, Z):
        raise ArithmeticError("hollow relations are not syzygies")
    from .catalog import hollow_slots
    ynames = [slot_name("y", i, j) for i, j in hollow_slots(m)]
    jd = jacobian_dual(Z, H.ring.names, dual_names=ynames)
    B1 = jd.B.submatrix(range(1, jd.B.rows), range(jd.B.cols))
    return _certify_square(B1, deltas, H.ring, symbolic, seed, "hollow")


def _certify_square(B1: PolyMatrix, images, target: Ring, symbolic: bool, seed: int, label: str):
    d = determinant(B1)
    if not d:
        return HomaloidalCertificate(False, None, f"{label}: det B1 vanishes before substitution")
    ok, pt = _nonzero_at_points(B1, images, seed)
    witness = substitute(d, list(images), target) if symbolic else None
    if symbolic:
        if not witness:
            return HomaloidalCertificate(False, None, f"{label}: det B1 vanishes at the map")
        return HomaloidalCertificate(True, witness, f"{label}: det B1 at the map is a nonzero polynomial")
    if ok:
        return HomaloidalCertificate(True, None, f"{label}: det B1 at the map is nonzero at {pt}")
    return HomaloidalCertificate(False, None, f"{label}: no nonzero evaluation found")


def homaloidal_certificate(f: Polynomial, seed: int = 0, symbolic: bool = False) -> HomaloidalCertificate:
    """Jacobian-dual certificate for the polar map of f.

    Builds the linear syzygies of the partials, the Jacobian dual B, and
    looks for a square submatrix B1 of size n-1 whose determinant does not
    vanish at the partials.  Certified means: linear rank n-1 and such a B1
    exists, the hypotheses of the cited birationality criterion.
    """
    R = f.ring
    n = R.nvars
    partials = [f.diff(i) for i in range(n)]
    syz = linear_syzygies(partials)
    if syz.rank < n - 1:
        return HomaloidalCertificate(False, None, f"linear rank {syz.rank} < {n - 1}", syz.rank)
    ynames = [dual_name(v) for v in R.names]
    jd = jacobian_dual(syz.matrix, R.names, dual_names=ynames)
    # locate rows/columns at a random point of the image, then certify exactly
    rng = random.Random(seed)
    pt = [rng.randint(-20, 20) for _ in range(n)]
    vals = [g(pt) for g in partials]
    grid = [[e(vals) for e in row] for row in jd.B.entries]
    rws, cls = linalg.max_rank_submatrix(grid, None)
    if len(rws) < n - 1:
        return HomaloidalCertificate(False, None, f"rank of B at the partials is {len(rws)} < {n - 1}",
                                     syz.rank)
    rws, cls = rws[: n - 1], cls[: n - 1]
    B1 = jd.B.submatrix(rws, cls)
    cert = _certify_square(B1, partials, R, symbolic, seed, "polar")
    cert.linear_rank = syz.rank
    cert.rows_kept = tuple(r + 1 for r in rws)
    cert.cols_kept = tuple(c + 1 for c in cls)
    return cert


# -- Hessians -----------------------------------------------------------------

def hessian(f: Polynomial) -> PolyMatrix:
    R = f.ring
    grad = [f.diff(i) for i in range(R.nvars)]
    return PolyMatrix(R, [[g.diff(j) for j in range(R.nvars)] for g in grad])


@dataclass
class HessianVerdict:
    zero: bool
    method: str
    witness: object = None


def hessian_determinant_verdict(f: Polynomial, relation: Polynomial | None = None, seed: int = 0,
                                symbolic_limit: int = 6) -> HessianVerdict:
    """Exact decision of det H(f) == 0.

    Nonzero is certified by an exact rational evaluation.  Zero is certified
    either by expanding the determinant (small cases) or by a polynomial
    relation P among the partials: differentiating P(grad f) = 0 shows that
    the nonzero vector grad P(grad f) lies in the left kernel of H(f).
    """
    H = hessian(f)
    R = f.ring
    n = R.nvars
    rng = random.Random(seed)
    for _ in range(3):
        pt = [rng.randint(-30, 30) for _ in range(n)]
        grid = H.evaluate(pt) if R.p is None else H.evaluate(pt, R.p)
        v = linalg.dense_det(grid, R.p)
        if v:
            return HessianVerdict(False, "exact-evaluation", pt)
    if relation is not None:
        grad = [f.diff(i) for i in range(n)]
        S = relation.ring
        if S.nvars != n:
            raise ValueError("relation ring must have one variable per partial")
        if substitute(relation, grad, R):
            raise ArithmeticError("the given relation does not vanish on the partials")
        vec = [substitute(relation.diff(i), grad, R) for i in range(n)]
        if not any(vec):
            raise ArithmeticError("gradient of the relation vanishes on the partials")
        row = PolyMatrix(R, [vec])
        if not (row @ H).is_zero():
            raise ArithmeticError("left kernel identity failed")
        return HessianVerdict(True, "kernel-vector", vec)
    if n <= symbolic_limit:
        d = determinant(H)
        return HessianVerdict(not d, "expansion", d)
    raise ArithmeticError("determinant vanished at random points; supply a relation to certify zero")


def hessian_det_is_zero(f: Polynomial, relation: Polynomial | None = None, seed: int = 0) -> bool:
    return hessian_determinant_verdict(f, relation, seed).zero


def banded_hessian_relation(m: int, r: int, s: int) -> Polynomial:
    """A lower-ladder minor that kills the partials of det of the banded section (r < s).

    The minor sits on rows 1..m-s and columns s..m-1 of the dual matrix and
    is expressed in the dual ring of the section's variables.
    """
    from .catalog import banded_section
    if not r < s:
        raise ValueError("a relation of this kind needs r < s")
    G = banded_section(m, r, s)
    S = Ring([dual_name(v) for v in G.ring.names], G.ring.p)
    Y = PolyMatrix(S, [[S.var(slot_name("y", i, j)) for j in range(s, m)] for i in range(1, m - s + 1)])
    return determinant(Y)


def _point_on_hypersurface(f: Polynomial, var: int, rng, p: int):
    """Random point mod p with f = 0, solving for a variable f is linear in."""
    R = f.ring
    for _ in range(50):
        pt = [rng.randrange(1, p) for _ in range(R.nvars)]
        pt[var] = 0
        b = f.reduce_mod(p)(pt)
        a = f.diff(var).reduce_mod(p)(pt)
        if a:
            pt[var] = (-b * pow(a, -1, p)) % p
            return pt
    raise ArithmeticError("no regular point found")


def rank_mod_hessian(f: Polynomial, seed: int = 0, p: int = DEFAULT_PRIME,
                     exact: bool = True) -> tuple[int, tuple]:
    """rank of H(f) modulo f, with the certifying witness minor.

    A witness is located at a random point of V(f) mod p; its minor is then
    checked exactly to be nonzero modulo f, and the bordered minors one size
    up are checked exactly to be divisible by f (f must be irreducible).
    With ``exact=False`` the sampled rank is returned as is, a lower bound.
    """
    H = hessian(f)
    R = f.ring
    lin = [i for i in range(R.nvars) if max(e[i] for e, _ in f.exponent_items()) == 1]
    if not lin:
        return rank_mod(H, f, full=True), ()
    rng = random.Random(seed)
    best = None
    for _ in range(3):
        pt = _point_on_hypersurface(f, lin[-1], rng, p)
        rws, cls = linalg.max_rank_submatrix(H.evaluate(pt, p), p)
        if best is None or len(rws) > len(best[0]):
            best = (rws, cls)
    rws, cls = best
    witness = (tuple(i + 1 for i in rws), tuple(j + 1 for j in cls))
    if not exact:
        return len(rws), witness
    return rank_mod(H, f, witness=witness), witness


def dual_dimension(f: Polynomial, seed: int = 0) -> int:
    return rank_mod_hessian(f, seed)[0] - 2


# -- inversion factors -------------------------------------------------------

@dataclass
class InversionData:
    L: PolyMatrix
    minors: list
    jacobian: JacobianDual
    psi: PolyMatrix
    adj_psi: PolyMatrix
    representatives: list      # representatives[j][i] = g^{(j)}_i over the dual ring
    factors: list              # D_1..D_d


class GenericityError(ArithmeticError):
    pass


def inversion_factors(L: PolyMatrix) -> InversionData:
    """Inversion factors of the map given by the signed maximal minors of L.

    L is (d+1)×d with linear entries in the d variables of its ring.
    """
    R = L.ring
    d = R.nvars
    if L.rows != d + 1 or L.cols != d:
        raise ValueError("expected a (d+1)×d matrix over d variables")
    deltas = signed_maximal_minors(L)
    if not any(deltas):
        raise GenericityError("all maximal minors vanish")
    jd = jacobian_dual(L, R.names, prefix="y")
    BT = jd.B.T()
    psi = evaluate_at(BT, deltas, R)
    adjB = adjugate(BT)
    adj_psi = adjugate(psi)
    reps = [[adjB[i, j] for i in range(d)] for j in range(d)]
    factors = []
    xs = R.gens()
    for j in range(d):
        D = None
        for i in range(d):
            q = exact_div(adj_psi[i, j], xs[i])
            if q is None:
                raise GenericityError(f"representative {j + 1}: coordinate {i + 1} not divisible by x_{i + 1}")
            if D is None:
                D = q
            elif q != D:
                raise GenericityError(f"representative {j + 1}: inconsistent factors")
        if not D:
            raise GenericityError(f"representative {j + 1} gives a zero factor")
        factors.append(D)
    grid = PolyMatrix(R, [[xs[i] * factors[j] for j in range(d)] for i in range(d)])
    if grid != adj_psi:
        raise ArithmeticError("adj(Psi) differs from the x_i D_j grid")
    return InversionData(L, deltas, jd, psi, adj_psi, reps, factors)


def random_linear_matrix(rows: int, cols: int, nvars: int, seed: int, bound: int = 50,
                         p: int | None = None) -> PolyMatrix:
    rng = random.Random(seed)
    R = Ring([f"x_{k}" for k in range(1, nvars + 1)], p)
    xs = R.gens()
    grid = [[sum((x.scale(rng.randint(-bound, bound)) for x in xs), R.zero()) for _ in range(cols)]
            for _ in range(rows)]
    return PolyMatrix(R, grid)


# -- Grassmann Jacobian -------------------------------------------------------

def grassmann_jacobian(n: int, m: int, p: int | None = None) -> PolyMatrix:
    """Jacobian of the m-minors of a generic m×n matrix (minors in lex order)."""
    if not 1 <= m <= n:
        raise ValueError("need 1 <= m <= n")
    X = generic_matrix(m, n, p=p)
    R = X.ring
    rows = []
    for cols in itertools.combinations(range(1, n + 1), m):
        D = minor(X, tuple(range(1, m + 1)), cols)
        rows.append([D.diff(v) for v in range(R.nvars)])
    return PolyMatrix(R, rows)


def grassmann_kernel(n: int, m: int, p: int | None = None) -> PolyMatrix:
    """The m²-1 kernel columns built from the rows of X.

    For i < m: the row vector of X number i placed in block r (r != i), and
    row i in block i minus row m in block m.  For i = m: row m in block r,
    r < m.  Blocks follow the row-major variable order.
    """
    X = generic_matrix(m, n, p=p)
    R = X.ring
    z = R.zero()
    cols = []

    def column(parts):
        vec = [z] * (m * n)
        for block, row, sign in parts:
            for j in range(n):
                e = X[row - 1, j]
                vec[(block - 1) * n + j] = -e if sign < 0 else e
        return vec

    for i in range(1, m):
        for r in range(1, m + 1):
            if r != i:
                cols.append(column([(r, i, 1)]))
            else:
                cols.append(column([(i, i, 1), (m, m, -1)]))
    for r in range(1, m):
        cols.append(column([(r, m, 1)]))
    return PolyMatrix(R, [[c[k] for c in cols] for k in range(m * n)])


@dataclass
class GrassmannReport:
    n: int
    m: int
    expected: int
    rank: int
    kernel_zero: bool
    kernel_rank: int
    lower_witness: tuple
    ok: bool


def verify_rank(n: int, m: int, seed: int = 0, symbolic_limit: int = 7) -> GrassmannReport:
    """rank Θ(n, m) = m(n - m) + 1 with exact certificates on both sides.

    Lower bound: a nonzero minor of Θ of the expected size.  Upper bound:
    Θ·K = 0 exactly and K has rank m² - 1 (a nonzero minor of that size),
    so the kernel has rank at least m² - 1.
    """
    theta = grassmann_jacobian(n, m)
    K = grassmann_kernel(n, m)
    expected = m * (n - m) + 1
    kernel_zero = (theta @ K).is_zero()
    cert = matrix_rank(theta, seed=seed, symbolic_limit=symbolic_limit)
    kcert = matrix_rank(K, seed=seed, symbolic_limit=symbolic_limit)
    upper = m * n - kcert.rank if kernel_zero else m * n
    ok = kernel_zero and kcert.rank == m * m - 1 and cert.rank == expected and upper == expected
    return GrassmannReport(n, m, expected, cert.rank, kernel_zero, kcert.rank, (cert.rows, cert.cols), ok)


# -- cofactor image of banded sections ---------------------------------------

@dataclass
class ImageIdealReport:
    m: int
    r: int
    s: int
    checked: int
    failures: list = field(default_factory=list)
    height: int | None = None
    expected_height: int | None = None

    @property
    def ok(self) -> bool:
        if self.failures:
            return False
        return self.height is None or self.height == self.expected_height


def cofactor_image_ideal_check(m: int, r: int, s: int, with_height: bool = True,
                               p: int | None = None) -> ImageIdealReport:
    """Ladder minors of both ladders vanish under the cofactor map of the banded section."""
    from .catalog import banded_section, lower_ladder, upper_ladder
    from .groebner import ideal_height
    from math import comb
    G = banded_section(m, r, s, p=p)
    sigma = cofactor_map(G)
    up, low = upper_ladder(m, r, p=p), lower_ladder(m, s, p=p)
    rep = ImageIdealReport(m, r, s, 0)
    for lad in (up, low):
        for rows, cols, g in lad.generators:
            rep.checked += 1
            res = kernel_member(g, sigma)
            if res.status is not KernelStatus.ZERO:
                rep.failures.append((lad.spec.label, rows, cols))
    if with_height and r == s and r > 0:
        gens = up.polys() + low.polys()
        rep.height = ideal_height(gens, p=p)
        rep.expected_height = 2 * comb(r + 1, 2)
    return rep
