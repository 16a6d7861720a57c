import pytest
import sympy
from hypothesis import given, settings, strategies as st

from conftest import matrix_to_sympy, to_sympy
from detkit.catalog import banded_section, generic_matrix, sparse_cofactor_example
from detkit.maps import (KernelStatus, cofactor_map, dual_dimension,
                         dual_two_minor_check, grassmann_jacobian, grassmann_kernel, hessian,
                         hessian_det_is_zero, homaloidal_certificate, image_minor_relations,
                         inversion_factors, jacobian_dual, kernel_member, linear_syzygies,
                         polar_map, random_linear_matrix, verify_rank)
from detkit.matrix import PolyMatrix, adjugate, determinant, minors
from detkit.poly import Ring


def test_cofactor_map_images():
    X = generic_matrix(2)
    sigma = cofactor_map(X)
    R = X.ring
    # y_1_2 -> adj(X)_{1,2} = -x_1_2
    assert sigma.image_of("y_1_2") == R("-x_1_2")
    assert sigma.common_degree() == 1


def test_polar_map_kernel_modulo_f():
    R = Ring(["x", "y", "z"])
    f = R("x*y*z")
    sigma = polar_map(f)
    S = sigma.source
    # y_x*y_y*y_z maps to (xyz)^2, a multiple of f
    res = kernel_member(S("y_x*y_y*y_z"), sigma)
    assert res.status is KernelStatus.ZERO_MOD_F
    assert kernel_member(S("y_x"), sigma).status is KernelStatus.NONZERO


def test_generic_two_minors_of_adjugate_in_kernel_mod_det():
    # 2-minors of adj(X) are det X times complementary minors
    X = generic_matrix(3)
    sigma = cofactor_map(X)
    Y = generic_matrix(3, name="y")
    for _, _, g in minors(Y, 2):
        img = sigma.apply(g)
        assert img and kernel_member(g, sigma).status is KernelStatus.NONZERO
        assert sympy.rem(to_sympy(img), to_sympy(determinant(X))) == 0


def test_sparse_example_relations():
    L = sparse_cofactor_example()
    sigma = cofactor_map(L)
    rels = image_minor_relations(L, (1, 2), (1, 2, 3))
    assert len(rels) == 3
    assert all(kernel_member(g, sigma).status is KernelStatus.ZERO for g in rels)
    with pytest.raises(ValueError):
        image_minor_relations(L, (1,), (1,))


def test_dual_two_minor_check_banded():
    G = banded_section(3, 0, 1)
    recs = dual_two_minor_check(G, G.ring.names)
    assert recs[0].status == "pass"
    assert all(r.status in ("pass", "unverified") for r in recs)


def test_linear_syzygies_of_two_minors():
    X = generic_matrix(2, 3)
    gens = [g for _, _, g in minors(X, 2)]
    syz = linear_syzygies(gens)
    assert syz.rank == 2
    assert (PolyMatrix(X.ring, [gens]) @ syz.matrix).is_zero()


def test_jacobian_dual_identity():
    L = random_linear_matrix(3, 2, 2, seed=4, bound=5)
    jd = jacobian_dual(L)
    assert jd.verified and jd.B.shape == (2, 2)


def test_homaloidal_certificates():
    R = Ring(["x", "y", "z"])
    assert homaloidal_certificate(R("x*y*z")).certified
    assert not homaloidal_certificate(R("x^3 + y^3 + z^3")).certified
    assert homaloidal_certificate(determinant(generic_matrix(3))).certified


def test_dual_dimensions():
    R = Ring(["x", "y", "z"])
    assert dual_dimension(R("x^3 + y^3 + z^3")) == 1
    assert dual_dimension(R("x*y*z")) == 0


def test_hessian_matches_sympy():
    R = Ring(["x", "y", "z"])
    f = R("x^3*y + y^2*z^2 - 2*x*z^3")
    xs = sympy.symbols("x y z")
    assert sympy.expand(matrix_to_sympy(hessian(f)) - sympy.hessian(to_sympy(f), xs)) == sympy.zeros(3)


def test_hessian_zero_for_cone():
    # a form in fewer variables than the ring has vanishing Hessian
    R = Ring(["x", "y", "z"])
    assert hessian_det_is_zero(R("x^3 + y^3"))
    assert not hessian_det_is_zero(R("x^3 + y^3 + z^3"))


@pytest.mark.parametrize("n,m", [(3, 1), (4, 2)])
def test_grassmann_kernel_annihilates(n, m):
    assert (grassmann_jacobian(n, m) @ grassmann_kernel(n, m)).is_zero()


def test_verify_rank_small():
    rep = verify_rank(4, 2)
    assert rep.ok and rep.rank == 5


def test_inversion_factors_structure():
    L = random_linear_matrix(4, 3, 3, seed=100)
    data = inversion_factors(L)
    R = L.ring
    xs = R.gens()
    for j, D in enumerate(data.factors):
        assert D.homogeneous_degree() == 5
        for i in range(3):
            assert data.adj_psi[i, j] == xs[i] * D
    assert (adjugate(data.psi) @ data.psi).is_zero() or determinant(data.psi) == R.zero()


def test_inversion_factors_rejects_shapes():
    with pytest.raises(ValueError):
        inversion_factors(random_linear_matrix(3, 3, 3, seed=1))


@settings(max_examples=10, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_random_linear_matrix_is_seeded(seed):
    assert random_linear_matrix(3, 2, 2, seed) == random_linear_matrix(3, 2, 2, seed)
