from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from detkit.catalog import generic_matrix, koszul_matrix
from detkit.homology import (FreeComplex, GradedFreeModule, be_acyclicity, br_betti,
                             buchsbaum_rim, complex_defects, fixed_minor_betti, fixed_minor_ideal,
                             gorenstein_ladder_suite, grade_at_least, hilbert_burch,
                             homogeneous_kernel, is_complex, is_minimal, random_block_hb,
                             reverse_criterion_instance, saturation_reduction_suite, skew_complex,
                             skew_form, sub_hankel_suite, syzygies_in_degree, t_eta_identity)
from detkit.matrix import PolyMatrix
from detkit.poly import Ring
from detkit.rees import example_deg4
from detkit.suites import seeded_br_matrix


def koszul_complex():
    R = Ring(["x", "y", "z"])
    x, y, z = R.gens()
    d1 = PolyMatrix(R, [[x, y, z]])
    d2 = koszul_matrix(x, y, z)
    d3 = PolyMatrix(R, [[x], [y], [z]])
    mods = [GradedFreeModule((0,)), GradedFreeModule.uniform(3, -1), GradedFreeModule.uniform(3, -2),
            GradedFreeModule((-3,))]
    return FreeComplex(mods, [d1, d2, d3])


def test_graded_module_display():
    F = GradedFreeModule((-2, -2, -3))
    assert str(F) == "R(-2)^2 + R(-3)"
    assert F.degrees == (2, 2, 3) and F.rank == 3
    assert str(GradedFreeModule(())) == "0"


def test_koszul_complex_is_exact():
    C = koszul_complex()
    assert is_complex(C) and is_minimal(C)
    rep = be_acyclicity(C)
    assert rep.ok and rep.expected_ranks == [1, 2, 1]


def test_shape_and_twist_errors():
    C = koszul_complex()
    with pytest.raises(ValueError):
        FreeComplex(C.modules, C.maps[:2])
    bad = FreeComplex([GradedFreeModule((0,)), GradedFreeModule.uniform(3, -2)], [C.maps[0]])
    assert any("homogeneous" in d or "degree" in d for d in complex_defects(bad))
    assert not is_complex(bad)


def test_non_exact_complex_fails_be():
    R = Ring(["x", "y"])
    x, y = R.gens()
    # image of d2 is x·(y, -x), strictly inside the kernel of d1
    d1 = PolyMatrix(R, [[x, y]])
    d2 = PolyMatrix(R, [[x * y], [-x * x]])
    C = FreeComplex([GradedFreeModule((0,)), GradedFreeModule.uniform(2, -1), GradedFreeModule((-3,))],
                    [d1, d2])
    assert is_complex(C)
    assert not be_acyclicity(C).ok


def test_grade_at_least():
    X = generic_matrix(2, 3)
    ok, h = grade_at_least(X, 2, 2)
    assert ok and h >= 2
    ok, _ = grade_at_least(X, 2, 3)
    assert not ok


@pytest.mark.parametrize("s,r", [(3, 1), (4, 2), (5, 3), (4, 1)])
def test_br_betti_formula(s, r):
    assert br_betti(s, r) == [comb(r - 1 + i, i) * comb(s, i + r + 1) for i in range(s - r)]


@pytest.mark.parametrize("s,r", [(3, 1), (4, 2), (4, 1)])
def test_buchsbaum_rim_complex(s, r):
    psi = seeded_br_matrix(s, r, seed=2)
    C = buchsbaum_rim(psi)
    assert is_complex(C)
    assert [F.rank for F in C.modules[2:]] == br_betti(s, r)
    assert be_acyclicity(C).ok


@pytest.mark.parametrize("s", [3, 4, 5])
def test_skew_form(s):
    psi = seeded_br_matrix(s, s - 2, seed=3)
    sk = skew_form(psi)
    assert sk.eta.is_alternating()
    assert sk.last == psi.T()
    assert is_complex(skew_complex(psi))
    assert t_eta_identity(psi)


def test_homogeneous_kernel_and_syzygies():
    R = Ring(["x", "y"])
    x, y = R.gens()
    M = PolyMatrix(R, [[x, y]])
    ker = homogeneous_kernel(M, [1, 1])
    assert len(ker) == 1
    assert ker[0][0] * x + ker[0][1] * y == R.zero()
    assert len(syzygies_in_degree([x * x, y * y], 4)) == 1


def test_hilbert_burch_example():
    hb = hilbert_burch(example_deg4())
    C = hb.complex
    assert hb.height == 2
    assert str(C) == "0 -> R(-6)^2 --phi--> R(-4)^3 --gens--> R"
    assert be_acyclicity(C).ok


def test_hilbert_burch_rejects_low_height():
    R = Ring(["x", "y", "z"])
    x, y, z = R.gens()
    phi = PolyMatrix(R, [[x, y], [x, y], [z, x]])
    with pytest.raises(ValueError):
        hilbert_burch(phi)


def test_fixed_minor_resolution():
    hb = random_block_hb(3, 5, 3, seed=0)
    res = fixed_minor_ideal(hb)
    assert res.betti == fixed_minor_betti(5, 3) == [4, 2]
    assert str(res.quotient) == "0 -> R(-8)^2 --d3--> R(-7)^4 --eta--> R(-5)^4 --psi--> R(-4)^2"
    assert is_complex(res.quotient) and is_complex(res.ring_quotient)
    assert be_acyclicity(res.ring_quotient).ok


def test_gorenstein_ladder_m3():
    rep = gorenstein_ladder_suite(3)
    assert rep.ok
    assert str(rep.complex) == "0 -> R(-5) --Delta^t--> R(-3)^5 --Phi--> R(-2)^5 --Delta--> R"


def test_sub_hankel_m3():
    rep = sub_hankel_suite(3)
    assert rep.support and rep.divisibility and rep.relations and rep.syzygy_matrix
    assert rep.linear_rank == 3 and rep.height_J == 2 and rep.delta11_in_J
    assert rep.psi_agrees_with_minors and rep.complex_ok and rep.be.ok and rep.minimal
    assert rep.quotient_heights[1:] == [2, 2]
    # the cofactor is anti-triangular, so it is -x_3^2 rather than x_3^2,
    # and that single sign is what keeps the report from passing
    assert rep.delta11_sign == -1
    assert not rep.ok


def test_saturation_suite():
    rep = saturation_reduction_suite(random_block_hb(3, 5, 3, seed=0))
    assert rep.ok and rep.monomial_count == 6


@settings(max_examples=8, deadline=None)
@given(st.integers(0, 10 ** 5))
def test_reverse_criterion_property(seed):
    inst = reverse_criterion_instance(seed)
    assert inst.ok
