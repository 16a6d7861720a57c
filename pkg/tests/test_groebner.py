import pytest
import sympy
from hypothesis import HealthCheck, given, settings, strategies as st

from conftest import to_sympy
from detkit.catalog import generic_matrix
from detkit.groebner import (UNIT_HEIGHT, GroebnerSizeError, Ideal, MonomialIdeal, buchberger,
                             hilbert_series_monomial, ideal_equal, ideal_height, initial_ideal,
                             is_groebner, lift, member, monomial_height, multiplicity,
                             normal_form)
from detkit.matrix import minor_ideal_gens
from detkit.poly import MonomialOrder
from strategies import R3, nonzero_polys

X, Y, Z = sympy.symbols("x y z")


def reduced_monic(G):
    return sorted(str(sympy.expand(to_sympy(g.monic(G.order)))) for g in G.basis)


def sympy_basis(gens):
    GB = sympy.groebner([to_sympy(g) for g in gens], X, Y, Z, order="grevlex", domain="QQ")
    out = []
    for g in GB.exprs:
        lc = sympy.LC(g, X, Y, Z, order="grevlex")
        out.append(str(sympy.expand(g / lc)))
    return sorted(out)


def test_twisted_cubic_basis():
    gens = [R3("x*z - y^2"), R3("y - x^2"), R3("z - x*y")]
    G = buchberger(Ideal.of(gens))
    assert reduced_monic(G) == sympy_basis(gens)


@settings(max_examples=25, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(st.lists(nonzero_polys(max_terms=3), min_size=1, max_size=3))
def test_reduced_basis_matches_sympy(gens):
    G = buchberger(Ideal.of(gens))
    assert reduced_monic(G) == sympy_basis(gens)


@settings(max_examples=25, deadline=None)
@given(st.lists(nonzero_polys(max_terms=3), min_size=1, max_size=3))
def test_generators_reduce_to_zero(gens):
    G = buchberger(Ideal.of(gens))
    assert all(not normal_form(g, G) for g in gens)
    assert is_groebner(G.basis)


def test_unit_ideal_height():
    assert ideal_height([R3("x"), R3("x + 1")]) == UNIT_HEIGHT
    assert ideal_height([R3("x*y"), R3("x*z")]) == 1
    assert ideal_height([R3("x"), R3("y"), R3("z")]) == 3


@pytest.mark.parametrize("m,n,t", [(2, 3, 2), (3, 3, 2), (3, 4, 3), (2, 4, 2)])
def test_generic_minor_height(m, n, t):
    # classical value (m - t + 1)(n - t + 1)
    X = generic_matrix(m, n)
    assert ideal_height(minor_ideal_gens(X, t)) == (m - t + 1) * (n - t + 1)


def test_height_mod_p_agrees():
    X = generic_matrix(3, 3, p=2147483647)
    assert ideal_height(minor_ideal_gens(X, 2), p=2147483647) == 4


def test_hilbert_series_of_monomial_ideal():
    M = MonomialIdeal.from_exponents([(1, 1, 0), (0, 1, 1)], 3)
    # numerator of (1 - 2t^2 + t^3) / (1 - t)^3
    assert hilbert_series_monomial(M) == [1, 0, -2, 1]
    assert monomial_height(M) == 1


def test_multiplicity_of_determinantal_ideal():
    # 2-minors of a generic 2×3 matrix: degree C(3, 1) = 3
    G = buchberger(Ideal.of(minor_ideal_gens(generic_matrix(2, 3), 2)))
    assert multiplicity(G) == 3


def test_member_and_lift():
    gens = [R3("x^2 - y"), R3("x*y - z")]
    f = R3("x^3 - z")
    assert member(f, gens)
    q = lift(f, gens)
    assert q is not None and sum((a * g for a, g in zip(q, gens)), R3.zero()) == f
    assert lift(R3("x"), gens) is None


def test_ideal_equality():
    assert ideal_equal([R3("x"), R3("y")], [R3("x + y"), R3("x - y")])
    assert not ideal_equal([R3("x")], [R3("x^2")])


def test_order_changes_leading_terms():
    gens = [R3("x*y - z^2")]
    rev = MonomialOrder(["z", "y", "x"])
    G1 = buchberger(Ideal.of(gens))
    G2 = buchberger(Ideal.of(gens, rev), rev)
    assert initial_ideal(G1) != initial_ideal(G2)


def test_size_guard():
    X = generic_matrix(3)
    with pytest.raises(GroebnerSizeError):
        buchberger(Ideal.of(minor_ideal_gens(X, 2)), max_size=3)
