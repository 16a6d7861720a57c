import sympy
from gmpy2 import mpq
from hypothesis import given, settings, strategies as st

from detkit import linalg

entries = st.integers(-5, 5)
dense = st.integers(1, 4).flatmap(
    lambda n: st.lists(st.lists(entries, min_size=n, max_size=n), min_size=1, max_size=4))


def sparse(rows):
    return [{j: mpq(v) for j, v in enumerate(r) if v} for r in rows]


@given(dense)
def test_rank_matches_sympy(rows):
    assert linalg.dense_rank([[mpq(v) for v in r] for r in rows]) == sympy.Matrix(rows).rank()


@given(st.integers(1, 4).flatmap(lambda n: st.lists(st.lists(entries, min_size=n, max_size=n),
                                                    min_size=n, max_size=n)))
def test_det_matches_sympy(rows):
    assert linalg.dense_det([[mpq(v) for v in r] for r in rows]) == sympy.Matrix(rows).det()


@given(dense)
def test_nullspace_vectors_are_kernel_vectors(rows):
    n = len(rows[0])
    basis = linalg.nullspace(sparse(rows), n)
    assert len(basis) == n - sympy.Matrix(rows).rank()
    for vec in basis:
        for r in rows:
            assert sum(r[j] * c for j, c in vec.items()) == 0


@settings(max_examples=50)
@given(dense, st.lists(entries, min_size=4, max_size=4))
def test_solve_consistent_systems(rows, x):
    n = len(rows[0])
    x = x[:n]
    rhs = [sum(a * b for a, b in zip(r, x)) for r in rows]
    sol = linalg.solve(sparse(rows), rhs, n)
    assert sol is not None
    for r, b in zip(rows, rhs):
        assert sum(r[j] * c for j, c in sol.items()) == b


def test_solve_inconsistent():
    assert linalg.solve([{0: mpq(1)}, {0: mpq(1)}], [1, 2], 1) is None


def test_rank_mod_p_can_drop():
    rows = [[1, 2], [3, 1]]
    assert linalg.dense_rank(rows) == 2
    assert linalg.dense_rank(rows, 5) == 1


def test_max_rank_submatrix():
    rows = [[1, 2, 3], [2, 4, 6], [0, 1, 1]]
    r, c = linalg.max_rank_submatrix([[mpq(v) for v in row] for row in rows])
    assert len(r) == len(c) == 2
    assert linalg.dense_det([[mpq(rows[i][j]) for j in c] for i in r]) != 0
