"""Sparse Gaussian elimination over Q or F_p.

Rows are dicts ``column -> value``.  Used for coefficient-matching systems
(syzygies in a fixed degree, Jacobian duals, lifting) and for ranks of
matrices evaluated at points.
"""

from __future__ import annotations

from gmpy2 import mpq


def _normalize(v, p):
    if p is not None:
        return v % p
    if type(v) is int:
        return v
    v = mpq(v)
    return int(v) if v.denominator == 1 else v


def _div(a, b, p):
    if p is not None:
        return a * pow(b, -1, p) % p
    q = mpq(a) / b
    return int(q) if q.denominator == 1 else q


def echelon(rows, p=None):
    """Reduced row echelon form.

    Returns ``(pivots, basis)`` where ``basis[k]`` is a reduced row whose
    pivot column is ``pivots[k]`` with pivot entry 1.
    """
    basis: dict = {}
    for row in rows:
        r = {c: _normalize(v, p) for c, v in row.items()}
        r = {c: v for c, v in r.items() if v}
        # basis rows are fully reduced, so one pass clears every pivot column
        for c in sorted(set(r) & set(basis)):
            v = r.get(c)
            if not v:
                continue
            for cc, bv in basis[c].items():
                nv = r.get(cc, 0) - v * bv
                if p is not None:
                    nv %= p
                if nv:
                    r[cc] = nv
                else:
                    r.pop(cc, None)
        if not r:
            continue
        piv = min(r)
        inv = r[piv]
        r = {c: _div(v, inv, p) for c, v in r.items()}
        # back-substitute into existing rows
        for c, brow in basis.items():
            v = brow.get(piv)
            if v:
                for cc, rv in r.items():
                    nv = brow.get(cc, 0) - v * rv
                    if p is not None:
                        nv %= p
                    if nv:
                        brow[cc] = nv
                    else:
                        brow.pop(cc, None)
        basis[piv] = r
    pivots = sorted(basis)
    return pivots, [basis[c] for c in pivots]


def rank(rows, p=None) -> int:
    return len(echelon(rows, p)[0])


def nullspace(rows, ncols: int, p=None):
    """Basis of {v : row . v = 0 for every row}, as dicts."""
    pivots, basis = echelon(rows, p)
    pivset = set(pivots)
    free = [c for c in range(ncols) if c not in pivset]
    out = []
    for fc in free:
        v = {fc: 1}
        for pc, row in zip(pivots, basis):
            x = row.get(fc)
            if x:
                v[pc] = _normalize(-x, p)
        out.append(v)
    return out


def solve(rows, rhs, ncols: int, p=None):
    """One solution of rows . v = rhs, or None if inconsistent."""
    aug = []
    for row, b in zip(rows, rhs):
        r = dict(row)
        if b:
            r[ncols] = b
        aug.append(r)
    pivots, basis = echelon(aug, p)
    if pivots and pivots[-1] == ncols:
        return None
    v = {}
    for pc, row in zip(pivots, basis):
        b = row.get(ncols, 0)
        if b:
            v[pc] = b
    return v


def dense_rank(matrix, p=None) -> int:
    rows = [{j: x for j, x in enumerate(r) if x} for r in matrix]
    return rank(rows, p)


def dense_det(matrix, p=None):
    """Determinant of a square matrix of field elements."""
    n = len(matrix)
    a = [[_normalize(x, p) for x in row] for row in matrix]
    det = 1
    for k in range(n):
        piv = next((i for i in range(k, n) if a[i][k]), None)
        if piv is None:
            return 0
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            det = -det
        pv = a[k][k]
        det = det * pv
        if p is not None:
            det %= p
        for i in range(k + 1, n):
            if a[i][k]:
                f = _div(a[i][k], pv, p)
                row_i, row_k = a[i], a[k]
                for j in range(k, n):
                    v = row_i[j] - f * row_k[j]
                    row_i[j] = v % p if p is not None else v
    return _normalize(det, p)


def max_rank_submatrix(matrix, p=None):
    """Row and column indices (0-based) of a maximal nonsingular submatrix."""
    m = len(matrix)
    n = len(matrix[0]) if m else 0
    a = [[_normalize(x, p) for x in row] for row in matrix]
    rows_used = []
    cols_used = []
    # track original row indices through elimination
    order = list(range(m))
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, m) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        order[r], order[piv] = order[piv], order[r]
        pv = a[r][c]
        for i in range(r + 1, m):
            if a[i][c]:
                f = _div(a[i][c], pv, p)
                for j in range(c, n):
                    v = a[i][j] - f * a[r][j]
                    a[i][j] = v % p if p is not None else v
        rows_used.append(order[r])
        cols_used.append(c)
        r += 1
        if r == m:
            break
    return sorted(rows_used), cols_used
