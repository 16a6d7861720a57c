import random

import pytest
from hypothesis import given, settings, strategies as st

from detkit.matrix import PolyMatrix, signed_maximal_minors
from detkit.poly import Ring
from detkit.rees import (TVARS, BigradedForm, LiftError, coefficient_ideal, deg4_bis_report,
                         deg4_report, divide_by_pivots, example_deg4, rees_member, rees_ring,
                         sym_presentation, sylvester_form)

R = Ring(["x", "y", "z"])
# quadratic monomials lying in (x, y)
QUADS = ["x^2", "x*y", "x*z", "y^2", "y*z"]


def random_phi(seed: int) -> PolyMatrix:
    rng = random.Random(seed)

    def entry():
        return sum((R(m).scale(rng.randint(-3, 3)) for m in QUADS), R.zero())
    return PolyMatrix(R, [[entry() for _ in range(2)] for _ in range(3)])


def test_rees_ring_rejects_clash():
    with pytest.raises(ValueError):
        rees_ring(R, ["x", "t"])


def test_bigraded_form_json_roundtrip():
    phi = example_deg4()
    f, g = sym_presentation(phi, signed_maximal_minors(phi), TVARS)
    assert f.bidegree == (2, 1)
    obj = f.to_json()
    assert BigradedForm.from_json(obj).poly == f.poly
    obj["xdeg"] = 3
    with pytest.raises(ValueError):
        BigradedForm.from_json(obj)


def test_non_bihomogeneous_rejected():
    S = rees_ring(R, TVARS)
    with pytest.raises(ValueError):
        BigradedForm.of(S("x*t + y"), TVARS)


def test_presentation_requires_syzygies():
    phi = example_deg4()
    with pytest.raises(ValueError):
        sym_presentation(phi, [R("x"), R("y"), R("z")], TVARS)


def test_coefficient_ideal():
    phi = example_deg4()
    forms = sym_presentation(phi, signed_maximal_minors(phi), TVARS)
    I = coefficient_ideal(forms, R)
    assert sorted(map(str, I.generators)) == sorted(["x^2", "y^2", "x*z", "y^2", "x*y", "x^2"])


def test_divide_by_pivots_priority():
    c = R("x*y")
    assert divide_by_pivots(c, [R("x"), R("y")]) == [R("y"), R.zero()]
    assert divide_by_pivots(c, [R("y"), R("x")]) == [R("x"), R.zero()]
    assert divide_by_pivots(R("z^2"), [R("x"), R("y")]) is None


def test_lift_error_outside_pivots():
    phi = example_deg4()
    f, g = sym_presentation(phi, signed_maximal_minors(phi), TVARS)
    with pytest.raises(LiftError):
        sylvester_form(f, g, R("y"), R("z"))


def test_deg4_example():
    rep = deg4_report()
    assert rep.ok
    S = rep.datum.psi.ring
    assert rep.datum.psi == PolyMatrix(S, [[S("x*t + z*v"), S("u")], [S("y*u + x*v"), S("t")]])


def test_deg4_bis_example():
    rep = deg4_bis_report()
    assert rep.ok
    S = rep.datum.det.ring
    assert rep.datum.det.poly == S("x*z*t^2 + x*y*t*u - x*z*u*v - y*z*v^2")
    assert rep.forms[-1].bidegree == (1, 3)


@settings(max_examples=20, deadline=None, derandomize=True)
@given(st.integers(0, 10 ** 6))
def test_sylvester_forms_lie_in_rees_kernel(seed):
    phi = random_phi(seed)
    gens = signed_maximal_minors(phi)
    if not any(gens):
        return
    f, g = sym_presentation(phi, gens, TVARS)
    dat = sylvester_form(f, g, R("x"), R("y"))
    assert dat.identity_holds
    assert rees_member(dat.det, gens)
    assert not dat.det.poly or dat.det.bidegree == (2, 2)
