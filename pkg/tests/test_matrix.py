import itertools

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from conftest import matrix_to_sympy, to_sympy
from detkit.catalog import generic_matrix
from detkit.matrix import (PolyMatrix, adjugate, cofactor, determinant, exact_rank, identity,
                           matrix_from_json, matrix_to_json, maximal_pfaffians, minor, minors,
                           pfaffian, rank, rank_mod, signed_maximal_minors)
from detkit.poly import Ring
from strategies import R3, polys


def square(n, max_terms=3):
    return st.lists(st.lists(polys(max_terms=max_terms), min_size=n, max_size=n),
                    min_size=n, max_size=n).map(lambda g: PolyMatrix(R3, g))


sizes = st.integers(1, 4)


@settings(max_examples=40, deadline=None)
@given(sizes.flatmap(lambda n: square(n, 2)))
def test_determinant_matches_sympy(M):
    assert sympy.expand(to_sympy(determinant(M)) - matrix_to_sympy(M).det(method="berkowitz")) == 0


@settings(max_examples=40, deadline=None)
@given(sizes.flatmap(lambda n: square(n, 2)))
def test_determinant_methods_agree(M):
    assert determinant(M, "laplace") == determinant(M, "bareiss")


@settings(max_examples=30, deadline=None)
@given(st.integers(2, 4).flatmap(lambda n: square(n, 2)))
def test_adjugate_identity(M):
    d = determinant(M)
    A = adjugate(M)
    n = M.rows
    assert M @ A == identity(R3, n, d)
    assert A @ M == identity(R3, n, d)


@settings(max_examples=20, deadline=None)
@given(st.integers(2, 3).flatmap(lambda n: square(n, 2)))
def test_adjugate_matches_sympy(M):
    assert sympy.expand(matrix_to_sympy(adjugate(M)) - matrix_to_sympy(M).adjugate()) == sympy.zeros(M.rows)


def test_empty_matrix_conventions():
    E = PolyMatrix(R3, [], cols=0)
    assert determinant(E) == R3.one()
    assert exact_rank(E) == 0


def test_cofactor_sign_and_minor():
    X = generic_matrix(3)
    R = X.ring
    assert minor(X, (2, 3), (2, 3)) == R("x_2_2*x_3_3 - x_2_3*x_3_2")
    assert cofactor(X, 1, 2) == -minor(X, (2, 3), (1, 3))
    A = adjugate(X)
    assert A[1, 0] == cofactor(X, 1, 2)


def test_minor_enumeration_order():
    X = generic_matrix(2, 3)
    labels = [(r, c) for r, c, _ in minors(X, 2)]
    assert labels == [((1, 2), (1, 2)), ((1, 2), (1, 3)), ((1, 2), (2, 3))]


def test_signed_maximal_minors_are_syzygies():
    X = generic_matrix(4, 3)
    gens = signed_maximal_minors(X)
    row = PolyMatrix(X.ring, [gens])
    assert (row @ X).is_zero()


def test_pfaffian_squares_to_determinant():
    R = Ring([f"a{i}{j}" for i in range(1, 5) for j in range(i + 1, 5)])
    n = 4
    grid = [[R.zero()] * n for _ in range(n)]
    for i, j in itertools.combinations(range(n), 2):
        v = R.var(f"a{i + 1}{j + 1}")
        grid[i][j], grid[j][i] = v, -v
    A = PolyMatrix(R, grid)
    assert A.is_alternating()
    assert pfaffian(A) == R("a12*a34 - a13*a24 + a14*a23")
    assert pfaffian(A) ** 2 == determinant(A)


def test_maximal_pfaffians_of_odd_matrix():
    R = Ring(["a", "b", "c"])
    A = PolyMatrix(R, [[R.zero(), R("a"), R("b")], [R("-a"), R.zero(), R("c")],
                       [R("-b"), R("-c"), R.zero()]])
    pf = maximal_pfaffians(A)
    assert sorted(map(str, pf)) == ["a", "b", "c"]


def test_rank_certificates():
    X = generic_matrix(3, 4)
    cert = rank(X)
    assert cert.rank == 3 and minor(X, cert.rows, cert.cols)
    R = X.ring
    two = X.submatrix([0, 1], range(4))
    Y = two.vstack(PolyMatrix(R, [[two[0, j] + two[1, j] for j in range(4)]]))
    assert rank(Y).rank == 2 == exact_rank(Y)


def test_rank_mod_generic_determinant():
    X = generic_matrix(3)
    f = determinant(X)
    # every 3-minor is f itself; 2-minors are not multiples of f
    assert rank_mod(X, f) == 2
    assert rank_mod(X, f, witness=((1, 2), (1, 2))) == 2


def test_matrix_json_roundtrip():
    X = generic_matrix(2, 3).with_twists([0, 0], [-1, -1, -1])
    obj = matrix_to_json(X)
    Y = matrix_from_json(obj)
    assert Y == X and matrix_to_json(Y) == obj
    assert obj["col_twists"] == [-1, -1, -1]


def test_matrix_json_shape_errors():
    obj = matrix_to_json(generic_matrix(2))
    obj["rows"] = 3
    with pytest.raises(ValueError):
        matrix_from_json(obj)
