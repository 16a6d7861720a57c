"""Matrices of polynomials and their determinantal invariants.

Indices in the public functions (``minor``, ``cofactor``, ``IndexSeq``) are
1-based; the ``PolyMatrix`` container itself is indexed from 0 like any
Python sequence.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Sequence

from . import linalg
from .poly import DEFAULT_PRIME, Polynomial, Ring, exact_div, change_field


class PolyMatrix:
    __slots__ = ("ring", "rows", "cols", "entries", "row_twists", "col_twists")

    def __init__(self, ring: Ring, entries, row_twists=None, col_twists=None, cols: int | None = None):
        grid = []
        for row in entries:
            grid.append(tuple(e if isinstance(e, Polynomial) else ring(e) for e in row))
        self.ring = ring
        self.entries = tuple(grid)
        self.rows = len(grid)
        self.cols = len(grid[0]) if grid else (cols or 0)
        for r in grid:
            if len(r) != self.cols:
                raise ValueError("ragged matrix")
            for e in r:
                if e.ring != ring:
                    raise ValueError("entries live in different rings")
        self.row_twists = tuple(row_twists) if row_twists is not None else None
        self.col_twists = tuple(col_twists) if col_twists is not None else None
        if self.row_twists is not None and len(self.row_twists) != self.rows:
            raise ValueError("row twist count mismatch")
        if self.col_twists is not None and len(self.col_twists) != self.cols:
            raise ValueError("column twist count mismatch")

    # -- container protocol --------------------------------------------
    @property
    def shape(self):
        return self.rows, self.cols

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def row(self, i):
        return list(self.entries[i])

    def col(self, j):
        return [r[j] for r in self.entries]

    def __eq__(self, other):
        return (isinstance(other, PolyMatrix) and self.shape == other.shape
                and self.entries == other.entries)

    def __hash__(self):
        return hash(self.entries)

    def __repr__(self):
        body = "; ".join(", ".join(str(e) for e in r) for r in self.entries)
        return f"PolyMatrix({self.rows}x{self.cols}: [{body}])"

    def tolist(self):
        return [list(r) for r in self.entries]

    def with_twists(self, row_twists, col_twists) -> "PolyMatrix":
        return PolyMatrix(self.ring, self.entries, row_twists, col_twists, cols=self.cols)

    # -- algebra ---------------------------------------------------------
    def T(self) -> "PolyMatrix":
        return PolyMatrix(self.ring, [self.col(j) for j in range(self.cols)],
                          self.col_twists, self.row_twists, cols=self.rows)

    transpose = T

    def __add__(self, other: "PolyMatrix") -> "PolyMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return PolyMatrix(self.ring, [[a + b for a, b in zip(r, s)]
                                      for r, s in zip(self.entries, other.entries)], cols=self.cols)

    def __neg__(self):
        return PolyMatrix(self.ring, [[-a for a in r] for r in self.entries], cols=self.cols)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "PolyMatrix":
        return PolyMatrix(self.ring, [[a * c for a in r] for r in self.entries], cols=self.cols)

    def __matmul__(self, other: "PolyMatrix") -> "PolyMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch in product")
        zero = self.ring.zero()
        out = []
        ocols = [other.col(j) for j in range(other.cols)]
        for r in self.entries:
            nz = [(k, a) for k, a in enumerate(r) if a]
            row = []
            for c in ocols:
                acc = zero
                for k, a in nz:
                    if c[k]:
                        acc = acc + a * c[k]
                row.append(acc)
            out.append(row)
        return PolyMatrix(self.ring, out, cols=other.cols)

    __mul__ = __matmul__

    def is_zero(self) -> bool:
        return all(not e for r in self.entries for e in r)

    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_symmetric(self) -> bool:
        return self.is_square() and all(
            self.entries[i][j] == self.entries[j][i] for i in range(self.rows) for j in range(i))

    def is_alternating(self) -> bool:
        if not self.is_square():
            return False
        for i in range(self.rows):
            if self.entries[i][i]:
                return False
            for j in range(i):
                if self.entries[i][j] != -self.entries[j][i]:
                    return False
        return True

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "PolyMatrix":
        """0-based row/column selection."""
        return PolyMatrix(self.ring, [[self.entries[i][j] for j in cols] for i in rows], cols=len(cols))

    def delete(self, row: int | None = None, col: int | None = None) -> "PolyMatrix":
        rows = [i for i in range(self.rows) if i != row]
        cols = [j for j in range(self.cols) if j != col]
        return self.submatrix(rows, cols)

    def hstack(self, other: "PolyMatrix") -> "PolyMatrix":
        return PolyMatrix(self.ring, [list(a) + list(b) for a, b in zip(self.entries, other.entries)])

    def vstack(self, other: "PolyMatrix") -> "PolyMatrix":
        return PolyMatrix(self.ring, list(self.entries) + list(other.entries), cols=self.cols)

    def map(self, fn) -> "PolyMatrix":
        out = [[fn(e) for e in r] for r in self.entries]
        ring = next((e.ring for r in out for e in r), self.ring)
        return PolyMatrix(ring, out, self.row_twists, self.col_twists, cols=self.cols)

    def entry_degree_bound(self) -> int:
        return max((e.degree() for r in self.entries for e in r), default=-1)

    def zero_count(self) -> int:
        return sum(1 for r in self.entries for e in r if not e)

    def is_homogeneous_wrt_twists(self) -> bool:
        if self.row_twists is None or self.col_twists is None:
            return True
        for i, r in enumerate(self.entries):
            for j, e in enumerate(r):
                if e and e.homogeneous_degree() != self.col_twists[j] - self.row_twists[i]:
                    return False
        return True

    def evaluate(self, point, p=None):
        """Entries evaluated at a point, as a list of lists of field elements."""
        ring = self.ring if p is None or self.ring.p == p else self.ring.with_field(p)
        pt = [ring.coerce(x) for x in point]
        out = []
        for r in self.entries:
            row = []
            for e in r:
                if not e:
                    row.append(0)
                    continue
                if ring is not self.ring:
                    e = change_field(e, ring)
                row.append(e(pt))
            out.append(row)
        return out


def identity(ring: Ring, n: int, scalar: Polynomial | None = None) -> PolyMatrix:
    s = scalar if scalar is not None else ring.one()
    z = ring.zero()
    return PolyMatrix(ring, [[s if i == j else z for j in range(n)] for i in range(n)], cols=n)


def zeros(ring: Ring, m: int, n: int) -> PolyMatrix:
    z = ring.zero()
    return PolyMatrix(ring, [[z] * n for _ in range(m)], cols=n)


def matrix(ring: Ring, rows) -> PolyMatrix:
    return PolyMatrix(ring, rows)


# -- index sequences --------------------------------------------------------

def index_seq(seq: Sequence[int], bound: int) -> tuple[int, ...]:
    """Validate a strictly increasing 1-based index list."""
    t = tuple(seq)
    for a, b in zip(t, t[1:]):
        if b <= a:
            raise ValueError("index sequence must be strictly increasing")
    if t and (t[0] < 1 or t[-1] > bound):
        raise IndexError("index out of bounds")
    return t


def complement(seq: Sequence[int], n: int) -> tuple[int, ...]:
    s = set(seq)
    return tuple(i for i in range(1, n + 1) if i not in s)


# -- determinants -----------------------------------------------------------

def _det_constant(grid, ring):
    vals = [[e.constant_coeff() for e in r] for r in grid]
    return ring.const(linalg.dense_det(vals, ring.p))


def _det_laplace(grid, ring):
    n = len(grid)
    memo: dict = {}
    one = ring.one()

    def rec(rows, cols):
        k = len(rows)
        if k == 1:
            return grid[rows[0]][cols[0]]
        if k == 2:
            a, b = grid[rows[0]][cols[0]], grid[rows[0]][cols[1]]
            c, d = grid[rows[1]][cols[0]], grid[rows[1]][cols[1]]
            return (a * d if a and d else ring.zero()) - (b * c if b and c else ring.zero())
        key = (rows, cols)
        hit = memo.get(key)
        if hit is not None:
            return hit
        best, best_nz, along_row = 0, None, True
        for pos, i in enumerate(rows):
            nz = sum(1 for j in cols if grid[i][j])
            if best_nz is None or nz < best_nz:
                best, best_nz, along_row = pos, nz, True
        for pos, j in enumerate(cols):
            nz = sum(1 for i in rows if grid[i][j])
            if nz < best_nz:
                best, best_nz, along_row = pos, nz, False
        acc = ring.zero()
        if along_row:
            i = rows[best]
            sub_rows = rows[:best] + rows[best + 1:]
            for pos, j in enumerate(cols):
                e = grid[i][j]
                if not e:
                    continue
                m = rec(sub_rows, cols[:pos] + cols[pos + 1:])
                if m:
                    t = e * m
                    acc = acc - t if (best + pos) & 1 else acc + t
        else:
            j = cols[best]
            sub_cols = cols[:best] + cols[best + 1:]
            for pos, i in enumerate(rows):
                e = grid[i][j]
                if not e:
                    continue
                m = rec(rows[:pos] + rows[pos + 1:], sub_cols)
                if m:
                    t = e * m
                    acc = acc - t if (best + pos) & 1 else acc + t
        memo[key] = acc
        return acc

    if n == 0:
        return one
    return rec(tuple(range(n)), tuple(range(n)))


def _det_bareiss(grid, ring):
    n = len(grid)
    if n == 0:
        return ring.one()
    a = [list(r) for r in grid]
    sign = 1
    prev = ring.one()
    for k in range(n - 1):
        cands = [i for i in range(k, n) if a[i][k]]
        if not cands:
            return ring.zero()
        piv = min(cands, key=lambda i: len(a[i][k]))
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            sign = -sign
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            for j in range(k + 1, n):
                num = a[i][j] * akk
                if aik and a[k][j]:
                    num = num - aik * a[k][j]
                if k == 0:
                    a[i][j] = num
                else:
                    q = exact_div(num, prev)
                    if q is None:
                        raise ArithmeticError("Bareiss division failed")
                    a[i][j] = q
        prev = akk
    d = a[n - 1][n - 1]
    return d if sign > 0 else -d


def determinant(M: PolyMatrix, method: str = "auto") -> Polynomial:
    """Exact determinant.

    ``auto`` uses field elimination for constant matrices, sparse Laplace
    expansion when at least a third of the entries vanish (or n <= 4), and
    fraction-free Bareiss elimination otherwise.
    """
    if not M.is_square():
        raise ValueError("determinant of a non-square matrix")
    grid = M.entries
    ring = M.ring
    n = M.rows
    if n == 0:
        return ring.one()
    if method == "auto":
        if all(e.is_constant() for r in grid for e in r):
            return _det_constant(grid, ring)
        if n <= 4 or 3 * M.zero_count() >= n * n:
            method = "laplace"
        else:
            method = "bareiss"
    if method == "laplace":
        return _det_laplace(grid, ring)
    if method == "bareiss":
        return _det_bareiss(grid, ring)
    raise ValueError(f"unknown method {method}")


def det(M: PolyMatrix, method: str = "auto") -> Polynomial:
    return determinant(M, method)


def minor(M: PolyMatrix, rows: Sequence[int], cols: Sequence[int]) -> Polynomial:
    """Unsigned minor on 1-based index sequences."""
    rows = index_seq(rows, M.rows)
    cols = index_seq(cols, M.cols)
    if len(rows) != len(cols):
        raise ValueError("minor needs as many rows as columns")
    return determinant(M.submatrix([i - 1 for i in rows], [j - 1 for j in cols]))


def minors(M: PolyMatrix, t: int):
    """All t-minors in lexicographic (rows, cols) order, with 1-based labels."""
    if t == 0:
        return [((), (), M.ring.one())]
    out = []
    for rows in itertools.combinations(range(1, M.rows + 1), t):
        for cols in itertools.combinations(range(1, M.cols + 1), t):
            out.append((rows, cols, minor(M, rows, cols)))
    return out


def minor_ideal_gens(M: PolyMatrix, t: int) -> list[Polynomial]:
    """Nonzero t-minors (generators of I_t(M))."""
    return [v for _, _, v in minors(M, t) if v]


def cofactor(M: PolyMatrix, i: int, j: int) -> Polynomial:
    if not M.is_square():
        raise ValueError("cofactor of a non-square matrix")
    if not (1 <= i <= M.rows and 1 <= j <= M.cols):
        raise IndexError("cofactor index out of bounds")
    d = determinant(M.delete(i - 1, j - 1))
    return -d if (i + j) & 1 else d


def adjugate(M: PolyMatrix) -> PolyMatrix:
    """Transpose of the signed cofactor matrix."""
    if not M.is_square():
        raise ValueError("adjugate of a non-square matrix")
    n = M.rows
    if n == 1:
        return PolyMatrix(M.ring, [[M.ring.one()]])
    out = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            out[j][i] = cofactor(M, i + 1, j + 1)
    return PolyMatrix(M.ring, out)


def signed_maximal_minors(M: PolyMatrix) -> list[Polynomial]:
    """For an (n+1)×n matrix: the minor deleting row i, signed (-1)^(i+1).

    With this sign the vector of minors annihilates every column of M.
    """
    if M.rows != M.cols + 1:
        raise ValueError("expected an (n+1)×n matrix")
    out = []
    for i in range(M.rows):
        d = determinant(M.delete(row=i))
        out.append(-d if i & 1 else d)
    return out


# -- Pfaffians --------------------------------------------------------------

def pfaffian(A: PolyMatrix) -> Polynomial:
    """Pfaffian by recursive expansion along the first row."""
    if not A.is_alternating():
        raise ValueError("matrix is not alternating")
    n = A.rows
    ring = A.ring
    if n % 2:
        return ring.zero()
    grid = A.entries
    memo: dict = {}

    def rec(idx):
        if not idx:
            return ring.one()
        hit = memo.get(idx)
        if hit is not None:
            return hit
        i = idx[0]
        acc = ring.zero()
        for pos in range(1, len(idx)):
            j = idx[pos]
            e = grid[i][j]
            if not e:
                continue
            sub = rec(idx[1:pos] + idx[pos + 1:])
            if sub:
                t = e * sub
                acc = acc + t if pos & 1 else acc - t
        memo[idx] = acc
        return acc

    return rec(tuple(range(n)))


def maximal_pfaffians(A: PolyMatrix, signed: bool = False) -> list[Polynomial]:
    """Pfaffians of the principal submatrices deleting one row and column.

    With ``signed=True`` the i-th Pfaffian carries (-1)^(i+1), which makes the
    vector a syzygy-compatible row for the alternating matrix.
    """
    if not A.is_alternating():
        raise ValueError("matrix is not alternating")
    if A.rows % 2 == 0:
        raise ValueError("maximal Pfaffians need odd size")
    out = []
    for i in range(A.rows):
        keep = [k for k in range(A.rows) if k != i]
        p = pfaffian(A.submatrix(keep, keep))
        out.append(-p if signed and i & 1 else p)
    return out


# -- rank ---------------------------------------------------------------------

@dataclass
class RankCertificate:
    rank: int
    rows: tuple = ()          # 1-based rows of the certifying minor
    cols: tuple = ()
    witness: Polynomial | None = None
    lower: str = "symbolic-minor"
    upper: str = "random-evaluation"
    evaluations: list = field(default_factory=list)

    def __int__(self):
        return self.rank


def _random_point(ring: Ring, rng: random.Random, p: int):
    return [rng.randrange(1, p) for _ in range(ring.nvars)]


def evaluated_rank(M: PolyMatrix, point, p: int) -> int:
    return linalg.dense_rank(M.evaluate(point, p), p)


def rank(M: PolyMatrix, seed: int = 0, trials: int = 3, full: bool = False,
         symbolic_limit: int = 7, p: int = DEFAULT_PRIME) -> RankCertificate:
    """Rank over the fraction field, with a certificate.

    The lower bound is an explicit nonzero minor: located by elimination at a
    random point mod p, then checked exactly (symbolic determinant when its
    size is at most ``symbolic_limit``, exact evaluation over the ring's own
    field otherwise; a nonzero value proves a nonzero polynomial).  The
    upper bound is the maximum rank at ``trials`` independent random points
    mod p, or an exact fraction-free elimination when ``full`` is set.
    """
    if M.rows == 0 or M.cols == 0 or M.is_zero():
        return RankCertificate(0, upper="trivial")
    rng = random.Random(seed)
    fp = M.ring.p or p
    best = None
    evals = []
    for _ in range(trials):
        pt = _random_point(M.ring, rng, fp)
        vals = M.evaluate(pt, fp)
        rws, cls = linalg.max_rank_submatrix(vals, fp)
        evals.append(len(rws))
        if best is None or len(rws) > len(best[0]):
            best = (rws, cls)
    rws, cls = best
    r = len(rws)
    sub = M.submatrix(rws, cls)
    if r <= symbolic_limit:
        w = determinant(sub)
        if not w:
            raise ArithmeticError("certificate minor vanished symbolically")
        lower = "symbolic-minor"
    else:
        w = None
        lower = "exact-evaluation"
        for _ in range(5):
            pt = [rng.randrange(-50, 51) for _ in range(M.ring.nvars)]
            if M.ring.p is None:
                v = linalg.dense_det(sub.evaluate(pt), None)
            else:
                v = linalg.dense_det(sub.evaluate(pt, M.ring.p), M.ring.p)
            if v:
                break
        else:
            w = determinant(sub)
            if not w:
                raise ArithmeticError("certificate minor vanished")
            lower = "symbolic-minor"
    upper = "random-evaluation"
    if full:
        exact = exact_rank(M)
        if exact != r:
            raise ArithmeticError(f"exact rank {exact} disagrees with evaluated rank {r}")
        upper = "fraction-free-elimination"
    return RankCertificate(r, tuple(i + 1 for i in rws), tuple(j + 1 for j in cls), w,
                           lower, upper, evals)


def exact_rank(M: PolyMatrix) -> int:
    """Rank over the fraction field by fraction-free elimination with pivoting."""
    a = [list(r) for r in M.entries]
    m, n = M.rows, M.cols
    ring = M.ring
    prev = ring.one()
    r = 0
    rows_left = list(range(m))
    cols_left = list(range(n))
    while rows_left and cols_left:
        cands = [(len(a[i][j]), i, j) for i in rows_left for j in cols_left if a[i][j]]
        if not cands:
            break
        _, pi, pj = min(cands)
        rows_left.remove(pi)
        cols_left.remove(pj)
        piv = a[pi][pj]
        for i in rows_left:
            aij = a[i][pj]
            for j in cols_left:
                num = a[i][j] * piv
                if aij and a[pi][j]:
                    num = num - aij * a[pi][j]
                q = exact_div(num, prev)
                if q is None:
                    raise ArithmeticError("fraction-free elimination failed")
                a[i][j] = q
        prev = piv
        r += 1
    return r


def rank_mod(M: PolyMatrix, f: Polynomial, witness=None, full: bool = False,
             seed: int = 0) -> int:
    """Largest t such that some t-minor of M is not divisible by f.

    The caller is responsible for f being irreducible.  With ``witness``
    (1-based rows, cols) the lower bound costs one exact division, and the
    search starts there; otherwise minors are enumerated from the largest
    size down.  The upper bound is certified by checking that every minor
    one size larger is divisible by f; ``full=False`` restricts that check
    to the larger minors containing the witness.
    """
    if not f:
        raise ValueError("modulus must be nonzero")
    if f.is_constant():
        raise ValueError("modulus must be a nonunit form")
    if witness is not None:
        rows, cols = witness
        w = minor(M, rows, cols)
        if not w or exact_div(w, f) is not None:
            raise ArithmeticError("witness minor is divisible by the modulus")
        t = len(rows)
        if t == min(M.rows, M.cols):
            return t
        if full:
            bigger = minors(M, t + 1)
        else:
            bigger = []
            for i in range(1, M.rows + 1):
                if i in rows:
                    continue
                for j in range(1, M.cols + 1):
                    if j in cols:
                        continue
                    rr = tuple(sorted(rows + (i,)))
                    cc = tuple(sorted(cols + (j,)))
                    bigger.append((rr, cc, minor(M, rr, cc)))
        for rr, cc, v in bigger:
            if v and exact_div(v, f) is None:
                raise ArithmeticError(f"minor {rr},{cc} of size {t + 1} is not divisible")
        return t
    for t in range(min(M.rows, M.cols), 0, -1):
        for rows in itertools.combinations(range(1, M.rows + 1), t):
            for cols in itertools.combinations(range(1, M.cols + 1), t):
                v = minor(M, rows, cols)
                if v and exact_div(v, f) is None:
                    return t
    return 0


# -- JSON ---------------------------------------------------------------------

def matrix_to_json(M: PolyMatrix) -> dict:
    from .poly import poly_to_json
    obj = {"rows": M.rows, "cols": M.cols,
           "entries": [[poly_to_json(e) for e in r] for r in M.entries]}
    if M.row_twists is not None:
        obj["row_twists"] = list(M.row_twists)
    if M.col_twists is not None:
        obj["col_twists"] = list(M.col_twists)
    return obj


def matrix_from_json(obj: dict, ring: Ring | None = None, p: int | None = None) -> PolyMatrix:
    from .poly import poly_from_json
    for k in ("rows", "cols", "entries"):
        if k not in obj:
            raise ValueError(f"matrix JSON missing '{k}'")
    rows, cols = int(obj["rows"]), int(obj["cols"])
    ents = obj["entries"]
    if len(ents) != rows or any(len(r) != cols for r in ents):
        raise ValueError("entries do not match rows/cols")
    if ring is None:
        names = None
        for r in ents:
            for e in r:
                names = e["vars"]
                break
            if names is not None:
                break
        ring = Ring(names or [], p)
    grid = [[poly_from_json(e, ring) for e in r] for r in ents]
    return PolyMatrix(ring, grid, obj.get("row_twists"), obj.get("col_twists"), cols=cols)
