"""Constructors for the structured matrices and ladders used throughout.

Every constructor builds its own ring with canonical variable names
(``x_i_j`` for matrix slots, ``x_k`` for Hankel-type entries), so two calls
with the same parameters produce identical objects.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import comb

from .matrix import PolyMatrix, minor, signed_maximal_minors
from .poly import Polynomial, Ring


def slot_name(prefix: str, i: int, j: int) -> str:
    return f"{prefix}_{i}_{j}"


def generic_ring(m: int, n: int | None = None, name: str = "x", p: int | None = None) -> Ring:
    n = m if n is None else n
    return Ring([slot_name(name, i, j) for i in range(1, m + 1) for j in range(1, n + 1)], p)


def generic_matrix(m: int, n: int | None = None, name: str = "x", p: int | None = None) -> PolyMatrix:
    n = m if n is None else n
    if m < 1 or n < 1:
        raise ValueError("generic matrix needs positive dimensions")
    R = generic_ring(m, n, name, p)
    return PolyMatrix(R, [[R.var(slot_name(name, i, j)) for j in range(1, n + 1)]
                          for i in range(1, m + 1)])


def sparse_section(m: int, n: int, support, name: str = "x", p: int | None = None) -> PolyMatrix:
    """Coordinate sparse section: slot (i, j) carries x_i_j when in ``support``.

    Variables are ordered row by row, left to right.
    """
    slots = [(i, j) for i in range(1, m + 1) for j in range(1, n + 1) if (i, j) in support]
    R = Ring([slot_name(name, i, j) for i, j in slots], p)
    z = R.zero()
    rows = [[R.var(slot_name(name, i, j)) if (i, j) in support else z
             for j in range(1, n + 1)] for i in range(1, m + 1)]
    return PolyMatrix(R, rows, cols=n)


def sub_hankel(m: int, p: int | None = None) -> PolyMatrix:
    """m×m Hankel matrix in x_0..x_m, zero below the anti-diagonal band."""
    if m < 2:
        raise ValueError("sub-Hankel matrix needs m >= 2")
    R = Ring([f"x_{k}" for k in range(m + 1)], p)
    z = R.zero()
    rows = [[R.var(f"x_{i + j}") if i + j <= m else z for j in range(m)] for i in range(m)]
    return PolyMatrix(R, rows)


def hollow_slots(m: int) -> list[tuple[int, int]]:
    """Variable slots (upper representatives) of the hollow symmetric matrix."""
    t = m // 2 + 1
    return [(1, j) for j in range(1, m + 1)] + [(i, m + 2 - i) for i in range(2, t + 1)]


def hollow_symmetric(m: int, p: int | None = None) -> PolyMatrix:
    """Symmetric matrix with a full first row and a mirrored anti-diagonal."""
    if m < 3:
        raise ValueError("hollow symmetric matrix needs m >= 3")
    slots = hollow_slots(m)
    R = Ring([slot_name("x", i, j) for i, j in slots], p)
    grid = [[R.zero()] * m for _ in range(m)]
    for i, j in slots:
        v = R.var(slot_name("x", i, j))
        grid[i - 1][j - 1] = v
        grid[j - 1][i - 1] = v
    return PolyMatrix(R, grid)


def band_size(u: int) -> int:
    return comb(u + 1, 2)


def banded_support(m: int, r: int, s: int) -> set[tuple[int, int]]:
    return {(i, j) for i in range(1, m + 1) for j in range(1, m + 1) if r + 2 <= i + j <= 2 * m - s}


def banded_section(m: int, r: int, s: int, p: int | None = None) -> PolyMatrix:
    """Keep x_i_j exactly when r + 2 <= i + j <= 2m - s."""
    if m < 3 or not (0 <= r <= s <= m - 2):
        raise ValueError(f"banded section needs 0 <= r <= s <= m-2 and m >= 3, got {(m, r, s)}")
    return sparse_section(m, m, banded_support(m, r, s), p=p)


def recurrence_corner(m: int, t: int) -> PolyMatrix:
    """Top-right t×t corner of the balanced banded section of size m."""
    G = banded_section(m, m - 2, m - 2)
    return G.submatrix(range(t), range(m - t, m))


def sparse_cofactor_example(p: int | None = None) -> PolyMatrix:
    """The 4×4 coordinate sparse section with four zero slots in rows 2-4."""
    support = {(1, 1), (1, 2), (1, 3), (1, 4), (2, 1), (2, 4), (3, 1), (3, 3), (4, 1), (4, 2)}
    return sparse_section(4, 4, support, p=p)


# row and column index sequences whose complementary block of the example is zero
SPARSE_EXAMPLE_PAIRS = (
    ((1, 2), (1, 2, 3)),
    ((1, 2, 3), (1, 2)),
    ((1, 3), (1, 2, 4)),
    ((1, 3, 4), (1, 4)),
    ((1, 2, 4), (1, 3)),
    ((1, 4), (1, 3, 4)),
)


# -- ladders ------------------------------------------------------------------

def _contiguous(vals) -> bool:
    vals = sorted(vals)
    return all(b == a + 1 for a, b in zip(vals, vals[1:]))


@dataclass(frozen=True)
class LadderSpec:
    """A ladder-shaped region of an m×m generic matrix and a minor size."""
    size: int
    region: frozenset
    t: int
    host: str = "y"
    blocks: tuple = ()
    label: str = ""

    def __post_init__(self):
        m = self.size
        for i, j in self.region:
            if not (1 <= i <= m and 1 <= j <= m):
                raise ValueError(f"slot {(i, j)} outside the {m}x{m} host")
        rows: dict = {}
        cols: dict = {}
        for i, j in self.region:
            rows.setdefault(i, []).append(j)
            cols.setdefault(j, []).append(i)
        if not all(_contiguous(v) for v in rows.values()) or not all(_contiguous(v) for v in cols.values()):
            raise ValueError("region is not row and column convex")
        if self.t < 0:
            raise ValueError("minor size must be nonnegative")

    def contains(self, i: int, j: int) -> bool:
        return (i, j) in self.region


@dataclass
class Ladder:
    spec: LadderSpec
    matrix: PolyMatrix
    generators: list          # (rows, cols, minor) with 1-based labels
    blocks: list = field(default_factory=list)

    @property
    def ring(self) -> Ring:
        return self.matrix.ring

    @property
    def positions(self) -> list[tuple[int, int]]:
        return sorted(self.spec.region)

    def polys(self) -> list[Polynomial]:
        return [g for _, _, g in self.generators]

    def block_generators(self) -> list:
        """t-minors of every block, the ideal being the sum over blocks."""
        out = []
        t = self.spec.t
        for rows, cols in self.blocks:
            for rr in itertools.combinations(rows, t):
                for cc in itertools.combinations(cols, t):
                    out.append((rr, cc, minor(self.matrix, rr, cc)))
        return out


@dataclass(frozen=True)
class EmptyLadder:
    spec: LadderSpec

    generators: tuple = ()
    blocks: tuple = ()

    def polys(self) -> list:
        return []


def ladder(spec: LadderSpec, p: int | None = None):
    """All t-minors of the host matrix whose entries lie in the region."""
    if not spec.region:
        return EmptyLadder(spec)
    X = generic_matrix(spec.size, name=spec.host, p=p)
    t = spec.t
    rng = range(1, spec.size + 1)
    gens = []
    for rows in itertools.combinations(rng, t):
        for cols in itertools.combinations(rng, t):
            if all((i, j) in spec.region for i in rows for j in cols):
                gens.append((rows, cols, minor(X, rows, cols)))
    blocks = [(tuple(r), tuple(c)) for r, c in spec.blocks]
    return Ladder(spec, X, gens, blocks)


def upper_ladder_spec(m: int, r: int, host: str = "y") -> LadderSpec:
    """Staircase in rows and columns 2..m cut by i + j >= r + 3; minors of size m - r."""
    if not (0 <= r <= m - 2):
        raise ValueError("need 0 <= r <= m-2")
    if r == 0:
        return LadderSpec(m, frozenset(), m, host, (), f"upper({m},{r})")
    region = frozenset((i, j) for i in range(2, m + 1) for j in range(2, m + 1) if i + j >= r + 3)
    blocks = tuple((tuple(range(r - u + 3, m + 1)), tuple(range(u, m + 1))) for u in range(2, r + 2))
    return LadderSpec(m, region, m - r, host, blocks, f"upper({m},{r})")


def lower_ladder_spec(m: int, s: int, host: str = "y") -> LadderSpec:
    """Staircase in rows and columns 1..m-1 cut by i + j <= 2m - s - 1; minors of size m - s."""
    if not (0 <= s <= m - 2):
        raise ValueError("need 0 <= s <= m-2")
    if s == 0:
        return LadderSpec(m, frozenset(), m, host, (), f"lower({m},{s})")
    region = frozenset((i, j) for i in range(1, m) for j in range(1, m) if i + j <= 2 * m - s - 1)
    blocks = tuple((tuple(range(1, 2 * m - s - v)), tuple(range(1, v + 1))) for v in range(m - s, m))
    return LadderSpec(m, region, m - s, host, blocks, f"lower({m},{s})")


def upper_ladder(m: int, r: int, host: str = "y", p: int | None = None):
    return ladder(upper_ladder_spec(m, r, host), p)


def lower_ladder(m: int, s: int, host: str = "y", p: int | None = None):
    return ladder(lower_ladder_spec(m, s, host), p)


def one_corner_ladder_spec(m: int, host: str = "x") -> LadderSpec:
    """The generic m×m matrix with the (m, m) slot removed; (m-1)-minors."""
    region = frozenset((i, j) for i in range(1, m + 1) for j in range(1, m + 1) if (i, j) != (m, m))
    return LadderSpec(m, region, m - 1, host, (), f"one-corner({m})")


def one_corner_ladder(m: int, host: str = "x", p: int | None = None):
    return ladder(one_corner_ladder_spec(m, host), p)


# -- alternating and Koszul matrices ----------------------------------------

def gorenstein_ladder_phi(m: int, p: int | None = None) -> PolyMatrix:
    """(2m-1)×(2m-1) alternating syzygy matrix of the one-corner ladder ideal."""
    if m < 2:
        raise ValueError("need m >= 2")
    R = generic_ring(m, m, "x", p)
    x = lambda i, j: R.var(slot_name("x", i, j))
    n = 2 * m - 1
    A = [[R.zero()] * n for _ in range(n)]
    # rows 1..m-1 against columns m..2m-1; column m + k carries row index m - k of X
    for j in range(1, m):
        for k in range(m):
            A[j - 1][m - 1 + k] = x(m - k, j)
            A[m - 1 + k][j - 1] = -x(m - k, j)
    for k in range(1, m):
        A[m - 1][m - 1 + k] = -x(m - k, m)
        A[m - 1 + k][m - 1] = x(m - k, m)
    return PolyMatrix(R, A)


def gorenstein_ladder_generators(X: PolyMatrix) -> list[Polynomial]:
    """Cofactor row vector adj(X)_{1..m-1,m}, then -adj(X)_{m,m..1}."""
    from .matrix import cofactor
    m = X.rows
    adj = lambda i, j: cofactor(X, j, i)
    return [adj(i, m) for i in range(1, m)] + [-adj(m, j) for j in range(m, 0, -1)]


def koszul_matrix(g1: Polynomial, g2: Polynomial, g3: Polynomial) -> PolyMatrix:
    """Alternating 3×3 matrix of Koszul relations; K·(g1, g2, g3)^T = 0."""
    R = g1.ring
    if g2.ring != R or g3.ring != R:
        raise ValueError("Koszul entries must share a ring")
    z = R.zero()
    return PolyMatrix(R, [[z, -g3, g2], [g3, z, -g1], [-g2, g1, z]])


# -- Hilbert-Burch blocks ---------------------------------------------------

@dataclass
class BlockHB:
    """Stacked n×(n-1) matrix whose top a rows have degree e1, the rest e2."""
    top: PolyMatrix
    bottom: PolyMatrix
    e1: int
    e2: int

    @property
    def a(self) -> int:
        return self.top.rows

    @property
    def n(self) -> int:
        return self.top.rows + self.bottom.rows

    @property
    def generator_degree(self) -> int:
        return self.a * self.e1 + (self.n - self.a) * self.e2

    @property
    def phi(self) -> PolyMatrix:
        return self.top.vstack(self.bottom)

    def minors(self) -> list[Polynomial]:
        return signed_maximal_minors(self.phi)

    def fixed_minors(self) -> list[Polynomial]:
        """The a minors obtained by deleting a row of the top block."""
        return self.minors()[: self.a]


def _row_degree(rows: PolyMatrix) -> int | None:
    degs = set()
    for e in itertools.chain.from_iterable(rows.entries):
        if e:
            if not e.is_homogeneous():
                raise ValueError("block entries must be forms")
            degs.add(e.degree())
    if len(degs) > 1:
        raise ValueError(f"block entries have mixed degrees {sorted(degs)}")
    return degs.pop() if degs else None


def hb_block(top: PolyMatrix, bottom: PolyMatrix):
    """Validate a two-block Hilbert-Burch shape; return (block, I, J)."""
    if top.cols != bottom.cols:
        raise ValueError("blocks must have the same width")
    if top.rows + bottom.rows != top.cols + 1:
        raise ValueError("stacked matrix must be n×(n-1)")
    if top.ring != bottom.ring:
        raise ValueError("blocks live in different rings")
    e1, e2 = _row_degree(top), _row_degree(bottom)
    if e1 is None or e2 is None:
        raise ValueError("a block is identically zero")
    hb = BlockHB(top, bottom, e1, e2)
    I = hb.minors()
    return hb, I, I[: hb.a]


def split_rows(phi: PolyMatrix, a: int):
    return phi.submatrix(range(a), range(phi.cols)), phi.submatrix(range(a, phi.rows), range(phi.cols))

