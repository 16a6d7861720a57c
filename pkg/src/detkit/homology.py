"""Graded free complexes and the exactness checks run on them.

A complex ``0 -> F_n -> ... -> F_1 -> F_0`` is stored with ``modules[k] = F_k``
and ``maps[k] : F_{k+1} -> F_k``; matrices act on column vectors, so
``maps[k]`` has ``rank F_k`` rows.  A twist ``t`` stands for the summand
``R(t)``, whose generator sits in degree ``-t``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import comb
from typing import Iterator, Sequence

from . import linalg
from .catalog import (BlockHB, generic_matrix, gorenstein_ladder_generators,
                      gorenstein_ladder_phi, koszul_matrix, one_corner_ladder, sub_hankel)
from .groebner import (UNIT_HEIGHT, Ideal, buchberger, ideal_equal, ideal_height,
                       normal_form)
from .matrix import (PolyMatrix, cofactor, determinant, minor_ideal_gens,
                     rank as matrix_rank, signed_maximal_minors)
from .poly import DEFAULT_PRIME, Polynomial, Ring, exact_div, merge_rings


# -- modules and complexes -----------------------------------------------------

@dataclass(frozen=True)
class GradedFreeModule:
    twists: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "twists", tuple(int(t) for t in self.twists))

    @classmethod
    def uniform(cls, rank: int, twist: int) -> "GradedFreeModule":
        return cls((twist,) * rank)

    @property
    def rank(self) -> int:
        return len(self.twists)

    @property
    def degrees(self) -> tuple[int, ...]:
        return tuple(-t for t in self.twists)

    def shifted(self, k: int) -> "GradedFreeModule":
        return GradedFreeModule(tuple(t + k for t in self.twists))

    def __add__(self, other: "GradedFreeModule") -> "GradedFreeModule":
        return GradedFreeModule(self.twists + other.twists)

    def __str__(self):
        if not self.twists:
            return "0"
        parts = []
        for t, grp in itertools.groupby(self.twists):
            e = len(list(grp))
            base = "R" if t == 0 else f"R({t})"
            parts.append(base if e == 1 else f"{base}^{e}")
        return " + ".join(parts)


@dataclass
class FreeComplex:
    modules: list
    maps: list
    labels: list = field(default_factory=list)

    def __post_init__(self):
        if len(self.maps) != len(self.modules) - 1:
            raise ValueError("a complex of k+1 modules needs k maps")
        for k, M in enumerate(self.maps):
            tgt, src = self.modules[k], self.modules[k + 1]
            if M.shape != (tgt.rank, src.rank):
                raise ValueError(f"map {k} has shape {M.shape}, expected {(tgt.rank, src.rank)}")
        if not self.labels:
            self.labels = [f"d{k + 1}" for k in range(len(self.maps))]

    @property
    def ring(self) -> Ring:
        return self.maps[0].ring

    @property
    def length(self) -> int:
        return len(self.maps)

    def ranks(self) -> list[int]:
        return [F.rank for F in self.modules]

    def graded_map(self, k: int) -> PolyMatrix:
        """maps[k] carrying row/column degrees, ready for homogeneity checks."""
        return self.maps[k].with_twists(self.modules[k].degrees, self.modules[k + 1].degrees)

    def shifted(self, s: int) -> "FreeComplex":
        return FreeComplex([F.shifted(s) for F in self.modules], list(self.maps), list(self.labels))

    def __str__(self):
        arrows = [str(self.modules[-1])]
        for k in range(self.length - 1, -1, -1):
            arrows.append(f"--{self.labels[k]}--> {self.modules[k]}")
        return "0 -> " + " ".join(arrows)


def complex_defects(C: FreeComplex) -> list[str]:
    out = []
    for k in range(C.length):
        if not C.graded_map(k).is_homogeneous_wrt_twists():
            out.append(f"{C.labels[k]} is not homogeneous for the given twists")
    for k in range(C.length - 1):
        if not (C.maps[k] @ C.maps[k + 1]).is_zero():
            out.append(f"{C.labels[k]}·{C.labels[k + 1]} != 0")
    return out


def is_complex(C: FreeComplex) -> bool:
    return not complex_defects(C)


def is_minimal(C: FreeComplex) -> bool:
    """No differential has a nonzero constant entry."""
    return all(not (e and e.is_constant()) for M in C.maps for r in M.entries for e in r)


# -- Buchsbaum-Eisenbud ---------------------------------------------------------

def minor_stream(M: PolyMatrix, t: int) -> Iterator[Polynomial]:
    for rows in itertools.combinations(range(M.rows), t):
        for cols in itertools.combinations(range(M.cols), t):
            d = determinant(M.submatrix(rows, cols))
            if d:
                yield d


def grade_at_least(M: PolyMatrix, t: int, k: int, p: int | None = DEFAULT_PRIME) -> tuple[bool, float]:
    """Decide grade I_t(M) >= k, pulling minors lazily.

    Heights only grow with the ideal, so a batch of minors already of height
    >= k settles the question.  Over F_p the height of the reduction never
    exceeds the height over Q for integral homogeneous ideals, so a positive
    answer mod p is a positive answer over Q.
    """
    if t <= 0 or k <= 0:
        return True, UNIT_HEIGHT
    stream = minor_stream(M, t)
    gens: list = []
    want = max(k, 2)
    while True:
        exhausted = False
        while len(gens) < want:
            nxt = next(stream, None)
            if nxt is None:
                exhausted = True
                break
            gens.append(nxt)
        h = ideal_height(gens, p=p) if gens else 0
        if h >= k:
            return True, h
        if exhausted:
            return False, h
        want *= 2


@dataclass
class BEReport:
    expected_ranks: list
    ranks: list
    grades: list            # (k, required, found-at-least)
    ok: bool
    complex_ok: bool
    notes: list = field(default_factory=list)


def be_acyclicity(C: FreeComplex, seed: int = 0, p: int | None = DEFAULT_PRIME) -> BEReport:
    """Buchsbaum-Eisenbud test for exactness of C above F_0.

    Ranks: the evaluated rank is a lower bound (its witness minor is nonzero);
    once C is a complex, rank d_k + rank d_{k+1} <= rank F_k turns the lower
    bounds into equalities, so matching the expected ranks is a proof.
    """
    n = C.length
    expected = [0] * (n + 2)
    for k in range(n, 0, -1):
        expected[k] = C.modules[k].rank - expected[k + 1]
    expected = expected[1:n + 1]
    complex_ok = is_complex(C)
    ranks = [matrix_rank(M, seed=seed + k).rank for k, M in enumerate(C.maps)]
    notes = []
    ok = complex_ok
    if any(e < 0 for e in expected):
        notes.append("alternating rank sum is negative")
        ok = False
    if ranks != expected:
        notes.append(f"ranks {ranks} differ from expected {expected}")
        ok = False
    grades = []
    for k in range(1, n + 1):
        good, h = grade_at_least(C.maps[k - 1], expected[k - 1], k, p)
        grades.append((k, k, h))
        if not good:
            notes.append(f"grade of I_{expected[k - 1]}({C.labels[k - 1]}) is {h} < {k}")
            ok = False
    return BEReport(expected, ranks, grades, ok, complex_ok, notes)


# -- homogeneous kernels -------------------------------------------------------

def monomials_of_degree(R: Ring, e: int) -> list[int]:
    if e < 0:
        return []
    out = []
    for combo in itertools.combinations_with_replacement(range(R.nvars), e):
        exps = [0] * R.nvars
        for v in combo:
            exps[v] += 1
        out.append(R.pack(exps))
    return out


def homogeneous_kernel(M: PolyMatrix, degrees: Sequence[int]) -> list[list[Polynomial]]:
    """Basis of {u : M u = 0, u_j a form of degree degrees[j]} over the field."""
    R = M.ring
    unknowns = []     # (j, monomial)
    for j, e in enumerate(degrees):
        unknowns.extend((j, mono) for mono in monomials_of_degree(R, e))
    eqs: dict = {}
    for col, (j, mono) in enumerate(unknowns):
        for i in range(M.rows):
            for m, c in M[i, j].terms.items():
                eqs.setdefault((i, m + mono), {})[col] = c
    basis = linalg.nullspace(list(eqs.values()), len(unknowns), R.p)
    out = []
    for vec in basis:
        u = [dict() for _ in degrees]
        for col, c in vec.items():
            j, mono = unknowns[col]
            u[j][mono] = c
        out.append([Polynomial(R, t) for t in u])
    return out


def syzygies_in_degree(forms: Sequence[Polynomial], total: int) -> list[list[Polynomial]]:
    """Relations sum q_i f_i = 0 with every q_i f_i of degree ``total``."""
    R = forms[0].ring
    row = PolyMatrix(R, [list(forms)])
    return homogeneous_kernel(row, [total - f.homogeneous_degree() for f in forms])


# -- Buchsbaum-Rim ---------------------------------------------------------------

def _multisets(r: int, i: int) -> list[tuple[int, ...]]:
    out = []
    for combo in itertools.combinations_with_replacement(range(r), i):
        alpha = [0] * r
        for k in combo:
            alpha[k] += 1
        out.append(tuple(alpha))
    return out


def _common_degree(M: PolyMatrix) -> int:
    degs = {e.homogeneous_degree() for r in M.entries for e in r if e}
    if len(degs) != 1 or None in degs:
        raise ValueError("entries must be forms of one common degree")
    return degs.pop()


def br_betti(s: int, r: int) -> list[int]:
    return [comb(r - 1 + i, i) * comb(s, i + r + 1) for i in range(s - r)]


def buchsbaum_rim(psi: PolyMatrix, delta: int | None = None) -> FreeComplex:
    """Buchsbaum-Rim complex of psi : R(-delta)^s -> R^r."""
    r, s = psi.shape
    if s < r:
        raise ValueError(f"Buchsbaum-Rim needs s >= r, got s={s}, r={r}")
    delta = _common_degree(psi) if delta is None else delta
    R = psi.ring
    zero = R.zero()
    modules = [GradedFreeModule.uniform(r, 0), GradedFreeModule.uniform(s, -delta)]
    maps = [psi]
    labels = ["psi"]
    if s == r:
        return FreeComplex(modules, maps, labels)

    minors = {S: determinant(psi.submatrix(range(r), S))
              for S in itertools.combinations(range(s), r)}
    top = list(itertools.combinations(range(s), r + 1))
    eta = [[zero] * len(top) for _ in range(s)]
    for c, I in enumerate(top):
        for j, ij in enumerate(I):
            d = minors[I[:j] + I[j + 1:]]
            eta[ij][c] = d if (r - j) % 2 == 0 else -d
    maps.append(PolyMatrix(R, eta))
    modules.append(GradedFreeModule.uniform(len(top), -(r + 1) * delta))
    labels.append("eta")

    prev = [((0,) * r, I) for I in top]
    for i in range(1, s - r):
        basis = [(alpha, I) for alpha in _multisets(r, i)
                 for I in itertools.combinations(range(s), r + 1 + i)]
        where = {b: k for k, b in enumerate(prev)}
        grid = [[zero] * len(basis) for _ in prev]
        for c, (alpha, I) in enumerate(basis):
            for k in range(r):
                if not alpha[k]:
                    continue
                beta = alpha[:k] + (alpha[k] - 1,) + alpha[k + 1:]
                for t, j in enumerate(I):
                    e = psi[k, j]
                    if not e:
                        continue
                    row = where[(beta, I[:t] + I[t + 1:])]
                    grid[row][c] = grid[row][c] + (e if t % 2 == 0 else -e)
        maps.append(PolyMatrix(R, grid))
        modules.append(GradedFreeModule.uniform(len(basis), -(r + 1 + i) * delta))
        labels.append(f"d{i + 2}")
        prev = basis
    return FreeComplex(modules, maps, labels)


@dataclass
class SkewForm:
    eta: PolyMatrix          # s×s alternating
    last: PolyMatrix         # psiᵀ
    basis_sign: int          # the computed last map equals basis_sign·psiᵀ


def skew_form(psi: PolyMatrix) -> SkewForm:
    """The r = s-2 complex rewritten in the basis (-1)^(s-i) e_1∧..ê_i..∧e_s.

    The last map comes out as ±psiᵀ; rescaling the basis of the final module
    by that sign makes it psiᵀ on the nose.
    """
    r, s = psi.shape
    if r != s - 2:
        raise ValueError("skew form needs r = s - 2")
    C = buchsbaum_rim(psi)
    eta, last = C.maps[1], C.maps[2]
    # lexicographic (s-1)-subsets: position c omits index s-1-c
    pos = {s - 1 - c: c for c in range(s)}
    sign = [1 if (s - (i + 1)) % 2 == 0 else -1 for i in range(s)]
    E = PolyMatrix(psi.ring, [[eta[row, pos[i]] * sign[i] for i in range(s)] for row in range(s)])
    Lm = PolyMatrix(psi.ring, [[last[pos[i], k] * sign[i] for k in range(last.cols)]
                               for i in range(s)])
    pt = psi.T()
    if Lm == pt:
        tag = 1
    elif Lm == -pt:
        tag = -1
    else:
        raise ArithmeticError("last Buchsbaum-Rim map is not ±psiᵀ")
    return SkewForm(E, pt, tag)


def skew_complex(psi: PolyMatrix) -> FreeComplex:
    r, s = psi.shape
    delta = _common_degree(psi)
    sk = skew_form(psi)
    mods = [GradedFreeModule.uniform(s - 2, 0), GradedFreeModule.uniform(s, -delta),
            GradedFreeModule.uniform(s, -(s - 1) * delta), GradedFreeModule.uniform(s - 2, -s * delta)]
    return FreeComplex(mods, [psi, sk.eta, sk.last], ["psi", "eta", "psi^t"])


def alternating_minors(M: PolyMatrix) -> list[Polynomial]:
    """(-1)^i · det(M without row i), i = 1..n+1, for an (n+1)×n matrix."""
    return [-d for d in signed_maximal_minors(M)]


def t_eta_identity(psi: PolyMatrix, tname: str = "T") -> bool:
    """T·eta equals the alternating maximal minors of [Tᵀ | psiᵀ]."""
    r, s = psi.shape
    sk = skew_form(psi)
    S = merge_rings(psi.ring, Ring([f"{tname}{i}" for i in range(1, s + 1)], psi.ring.p))
    T = [S.var(f"{tname}{i}") for i in range(1, s + 1)]
    eta = sk.eta.map(lambda e: e.to_ring(S))
    lhs = [sum((T[i] * eta[i, j] for i in range(s)), S.zero()) for j in range(s)]
    pt = psi.T().map(lambda e: e.to_ring(S))
    big = PolyMatrix(S, [[T[i]] + pt.row(i) for i in range(s)])
    return lhs == alternating_minors(big)


# -- Hilbert-Burch -----------------------------------------------------------------

@dataclass
class HilbertBurch:
    complex: FreeComplex
    generators: list
    height: float


def _column_degrees(phi: PolyMatrix, gen_degrees: Sequence[int]) -> list[int]:
    out = []
    for j in range(phi.cols):
        ds = {gen_degrees[i] + phi[i, j].homogeneous_degree()
              for i in range(phi.rows) if phi[i, j]}
        if len(ds) != 1 or None in ds:
            raise ValueError(f"column {j + 1} is not homogeneous")
        out.append(ds.pop())
    return out


def hilbert_burch(phi: PolyMatrix, p: int | None = None) -> HilbertBurch:
    """0 -> R^(n-1) -> R^n -> I for an n×(n-1) matrix with ht I_(n-1) = 2."""
    n = phi.rows
    if phi.cols != n - 1:
        raise ValueError("expected an n×(n-1) matrix")
    gens = signed_maximal_minors(phi)
    if any(not g for g in gens):
        raise ValueError("a maximal minor vanishes; the ideal has height < 2")
    degs = [g.homogeneous_degree() for g in gens]
    if None in degs:
        raise ValueError("maximal minors are not forms")
    h = ideal_height(gens, p=p)
    if h != 2:
        raise ValueError(f"ideal of maximal minors has height {h}, not 2")
    cdeg = _column_degrees(phi, degs)
    R = phi.ring
    C = FreeComplex([GradedFreeModule((0,)), GradedFreeModule(tuple(-d for d in degs)),
                     GradedFreeModule(tuple(-d for d in cdeg))],
                    [PolyMatrix(R, [gens]), phi], ["gens", "phi"])
    return HilbertBurch(C, gens, h)


@dataclass
class FixedMinorResolution:
    J: list
    I: list
    quotient: FreeComplex     # resolution of I/J
    ring_quotient: FreeComplex  # resolution of R/J
    height: float
    betti: list


def fixed_minor_ideal(hb: BlockHB, p: int | None = None) -> FixedMinorResolution:
    a, n = hb.a, hb.n
    h = ideal_height(minor_ideal_gens(hb.bottom, n - a), p=p)
    if h != a:
        raise ValueError(f"ht I_{n - a}(Phi2) = {h}, the resolution needs {a}")
    I = hb.minors()
    J = I[:a]
    D, e1, e2 = hb.generator_degree, hb.e1, hb.e2
    br = buchsbaum_rim(hb.bottom, e2).shifted(-(D - e2))
    R = hb.phi.ring
    tail = br.maps[2:]
    quotient_mods = [GradedFreeModule((0,)), GradedFreeModule.uniform(a, -(D - e1))] + br.modules[2:]
    maps = [PolyMatrix(R, [J]), hb.top @ br.maps[1]] + tail
    rq = FreeComplex(quotient_mods, maps, ["f", "Phi1*eta"] + br.labels[2:])
    betti = [F.rank for F in br.modules[2:]]
    return FixedMinorResolution(J, I, br, rq, h, betti)


def fixed_minor_betti(n: int, a: int) -> list[int]:
    return [comb(n - a - 1 + i, i) * comb(n - 1, i + n - a + 1) for i in range(a - 1)]


# -- Gorenstein ladder ---------------------------------------------------------------

@dataclass
class GorensteinLadderReport:
    m: int
    complex: FreeComplex
    compositions_zero: bool
    pfaffians_equal_ladder: bool | None
    grade_delta: float
    grade_phi: float
    be: BEReport

    @property
    def ok(self) -> bool:
        return (self.compositions_zero and self.pfaffians_equal_ladder is not False
                and self.grade_delta == 3 and self.grade_phi >= 2 and self.be.ok)


def gorenstein_ladder_resolution(m: int, p: int | None = None) -> FreeComplex:
    if m < 3:
        raise ValueError("needs m >= 3")
    X = generic_matrix(m, p=p)
    phi = gorenstein_ladder_phi(m, p)
    delta = PolyMatrix(X.ring, [gorenstein_ladder_generators(X)])
    k = 2 * m - 1
    mods = [GradedFreeModule((0,)), GradedFreeModule.uniform(k, -(m - 1)),
            GradedFreeModule.uniform(k, -m), GradedFreeModule((-(2 * m - 1),))]
    return FreeComplex(mods, [delta, phi, delta.T()], ["Delta", "Phi", "Delta^t"])


def gorenstein_ladder_suite(m: int, pfaffians: bool = True, p: int | None = None,
                            seed: int = 0) -> GorensteinLadderReport:
    from .matrix import maximal_pfaffians
    C = gorenstein_ladder_resolution(m, p)
    same = None
    if pfaffians:
        lad = one_corner_ladder(m, p=p)
        same = ideal_equal(maximal_pfaffians(C.maps[1]), lad.polys(), p=p)
    gdelta = ideal_height(C.maps[0].row(0), p=p)
    _, gphi = grade_at_least(C.maps[1], 2 * m - 2, 2, p if p is not None else DEFAULT_PRIME)
    be = be_acyclicity(C, seed=seed)
    return GorensteinLadderReport(m, C, is_complex(C), same, gdelta, gphi, be)


# -- sub-Hankel ------------------------------------------------------------------------

def sub_hankel_phi(m: int, p: int | None = None) -> tuple[PolyMatrix, list[Polynomial], Polynomial]:
    """(phi, gradient, f) for the sub-Hankel matrix of order m."""
    H = sub_hankel(m, p)
    R = H.ring
    f = determinant(H)
    x = [R.var(f"x_{i}") for i in range(m + 1)]
    grad = [f.diff(f"x_{i}") for i in range(m + 1)]
    zero = R.zero()
    cols = []
    # weighted Euler-type relation
    col = [(m - l - 1) * x[l] for l in range(m - 1)] + [zero, -x[m]]
    cols.append(col)
    for i in range(m - 1, 0, -1):
        col = [zero] * (m + 1)
        for l in range(i + 1):
            col[l] = (2 * i - l) * x[m - i + l]
        cols.append(col)
    kos = [zero] * (m + 1)
    kos[m - 1], kos[m] = -grad[m], grad[m - 1]
    cols.append(kos)
    phi = PolyMatrix(R, [[c[i] for c in cols] for i in range(m + 1)])
    return phi, grad, f


@dataclass
class SubHankelReport:
    m: int
    support: bool
    divisibility: bool
    quotient_heights: list
    relations: bool
    syzygy_matrix: bool
    linear_rank: int
    delta11: Polynomial
    delta11_sign: int
    delta11_in_J: bool
    height_J: float
    psi: list
    psi_agrees_with_minors: bool
    minors_rows: tuple
    complex_ok: bool
    be: BEReport | None
    minimal: bool
    complex: FreeComplex | None = None

    @property
    def ok(self) -> bool:
        return (self.support and self.divisibility and self.relations and self.syzygy_matrix
                and self.linear_rank == self.m and self.delta11_sign == 1 and self.delta11_in_J
                and self.height_J == 2 and self.psi_agrees_with_minors and self.complex_ok
                and (self.be is None or self.be.ok) and self.minimal)


def _sub_hankel_psi(phi: PolyMatrix, m: int):
    """Kernel vector of phi in the forced degrees, cross-checked against minors."""
    degs = [m - 1] * m + [1]
    ker = homogeneous_kernel(phi, degs)
    if len(ker) != 1:
        raise ArithmeticError(f"expected a one-dimensional kernel, got {len(ker)}")
    psi = ker[0]
    # first m rows (in order) of full rank
    cert = None
    rows = None
    for rs in itertools.combinations(range(phi.rows), m):
        sub = phi.submatrix(rs, range(phi.cols))
        cert = matrix_rank(sub)
        if cert.rank == m:
            rows = rs
            break
    sub = phi.submatrix(rows, range(phi.cols)).T()
    # minors of the m×(m+1) row block, as a kernel vector
    deltas = signed_maximal_minors(sub)
    k = next(i for i, v in enumerate(psi) if v)
    D = exact_div(deltas[k], psi[k])
    agree = D is not None and all(d == D * v for d, v in zip(deltas, psi))
    return psi, agree, tuple(r + 1 for r in rows)


def sub_hankel_suite(m: int, p: int | None = None, acyclicity: bool = True,
                     seed: int = 0) -> SubHankelReport:
    if m < 3:
        raise ValueError("needs m >= 3")
    phi, grad, f = sub_hankel_phi(m, p)
    R = phi.ring
    xm = R.var(f"x_{m}")

    support = True
    divis = True
    qheights = []
    for i in range(m):
        allowed = {f"x_{k}" for k in range(m - i, m + 1)}
        if any(not set(g.variable_names()) <= allowed for g in grad[: i + 1]):
            support = False
        factor = xm ** (m - i - 1)
        quots = [exact_div(g, factor) for g in grad[: i + 1]]
        if any(q is None for q in quots):
            divis = False
            qheights.append(0)
            continue
        h = ideal_height(quots, p=p)
        qheights.append(h)
        if h < 2:
            divis = False

    linear = phi.submatrix(range(m + 1), range(m))
    relations = (PolyMatrix(R, [grad]) @ linear).is_zero()
    syz = (PolyMatrix(R, [grad]) @ phi).is_zero()
    lin_rank = matrix_rank(linear, seed=seed).rank

    H = sub_hankel(m, p)
    d11 = cofactor(H, 1, 1)
    target = xm ** (m - 1)
    sign = 1 if d11 == target else (-1 if d11 == -target else 0)
    G = buchberger(Ideal.of(grad), p=p)
    d11_in = not normal_form(d11, G)
    hJ = ideal_height(G)

    psi, agree, rows = _sub_hankel_psi(phi, m)
    mods = [GradedFreeModule((0,)), GradedFreeModule.uniform(m + 1, -(m - 1)),
            GradedFreeModule((-m,) * m + (-2 * (m - 1),)), GradedFreeModule((-(2 * m - 1),))]
    C = FreeComplex(mods, [PolyMatrix(R, [grad]), phi, PolyMatrix(R, [[v] for v in psi])],
                    ["grad", "phi", "psi^t"])
    be = be_acyclicity(C, seed=seed) if acyclicity else None
    return SubHankelReport(m, support, divis, qheights, relations, syz, lin_rank, d11, sign,
                           d11_in, hJ, psi, agree, rows, is_complex(C), be, is_minimal(C), C)


# -- saturation and reduction ----------------------------------------------------------

@dataclass
class SaturationReport:
    branch: str                  # "height=d" or "height<d"
    height: float
    power_equal: bool | None
    containment: bool | None
    monomial_count: int
    determinants_zero: list
    L_matrices: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return (self.branch == "height=d" and bool(self.power_equal) and bool(self.containment)
                and bool(self.determinants_zero) and all(self.determinants_zero))


def _power_of_maximal(R: Ring, e: int) -> list[Polynomial]:
    return [Polynomial(R, {m: 1}) for m in monomials_of_degree(R, e)]


def dependence_matrix(fi: Polynomial, J: Sequence[Polynomial], monos: Sequence[Polynomial]):
    """L with monos[j]·fi = sum_l L[j][l]·monos[l] and L[j][l] in span_k(J)."""
    R = fi.ring
    N, a = len(monos), len(J)
    prods = [(l, k, monos[l] * J[k]) for l in range(N) for k in range(a)]
    rows: dict = {}
    for col, (_, _, g) in enumerate(prods):
        for m, c in g.terms.items():
            rows.setdefault(m, {})[col] = c
    keys = list(rows)
    A = [rows[m] for m in keys]
    L = []
    for j in range(N):
        target = monos[j] * fi
        rhs = [target.terms.get(m, 0) for m in keys]
        extra = set(target.terms) - set(rows)
        if extra:
            return None
        sol = linalg.solve(A, rhs, len(prods), R.p)
        if sol is None:
            return None
        row = [R.zero() for _ in range(N)]
        for col, c in sol.items():
            l, k, _ = prods[col]
            row[l] = row[l] + J[k].scale(c)
        L.append(row)
    return PolyMatrix(R, L)


def saturation_reduction_suite(hb: BlockHB, p: int | None = None,
                               determinants: bool = True) -> SaturationReport:
    R = hb.phi.ring
    d, n, a = R.nvars, hb.n, hb.a
    if a != d:
        raise ValueError(f"needs a = d, got a={a}, d={d}")
    if hb.e2 != 1:
        raise ValueError("needs a linear bottom block")
    e = n - d
    fitting = minor_ideal_gens(hb.bottom, e)
    h = ideal_height(fitting, p=p) if any(fitting) else 0
    monos = _power_of_maximal(R, e)
    if h < d:
        return SaturationReport("height<d", h, None, None, len(monos), [])
    power_equal = ideal_equal(fitting, monos, p=p)
    I = hb.minors()
    J, rest = I[:d], I[d:]
    mJ = buchberger(Ideal.of([mo * g for mo in monos for g in J]), p=p)
    containment = all(not normal_form(g * fi, mJ) for g in fitting if g for fi in rest)
    dets, Ls = [], []
    if determinants:
        for fi in rest:
            L = dependence_matrix(fi, J, monos)
            if L is None:
                dets.append(False)
                continue
            Ls.append(L)
            N = len(monos)
            A = PolyMatrix(R, [[(fi if j == l else R.zero()) - L[j, l] for l in range(N)]
                               for j in range(N)])
            dets.append(not determinant(A))
    return SaturationReport("height=d", h, power_equal, containment, len(monos), dets, Ls)


def random_block_hb(d: int, n: int, a: int, seed: int, p: int | None = None) -> BlockHB:
    """Seeded BlockHB with both blocks linear in d variables."""
    from .catalog import hb_block
    from .maps import random_linear_matrix
    phi = random_linear_matrix(n, n - 1, d, seed, p=p)
    top = phi.submatrix(range(a), range(n - 1))
    bottom = phi.submatrix(range(a, n), range(n - 1))
    return hb_block(top, bottom)[0]


# -- reverse criterion -------------------------------------------------------------

@dataclass
class ReverseCriterionInstance:
    seed: int
    height_B: float
    height_AK: float | None

    @property
    def applicable(self) -> bool:
        return self.height_B == 2

    @property
    def ok(self) -> bool:
        return not self.applicable or self.height_AK == 2


def reverse_criterion_instance(seed: int, p: int | None = None) -> ReverseCriterionInstance:
    from .maps import random_linear_matrix
    A = random_linear_matrix(3, 3, 3, seed, bound=5, p=p)
    R = A.ring
    g = R.gens()
    B = A.vstack(PolyMatrix(R, [g]))
    hB = ideal_height(minor_ideal_gens(B, 3), p=p)
    if hB != 2:
        return ReverseCriterionInstance(seed, hB, None)
    AK = A @ koszul_matrix(*g)
    return ReverseCriterionInstance(seed, hB, ideal_height(minor_ideal_gens(AK, 2), p=p))
