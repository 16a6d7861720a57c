import json

import pytest

from detkit import serialize as ser
from detkit.catalog import banded_section
from detkit.cli import main
from detkit.homology import gorenstein_ladder_resolution
from detkit.matrix import matrix_to_json
from detkit.poly import DEFAULT_PRIME, Ring, poly_to_json
from detkit.rees import deg4_report
from detkit.suites import CLAIMS, SUITES, FieldConfig, UnknownSuiteError, run_suite


def test_field_parsing():
    assert FieldConfig.parse("qq").p is None
    assert FieldConfig.parse("fp").p == DEFAULT_PRIME
    assert FieldConfig.parse("fp:101").label == "fp:101"
    for bad in ("fp:100", "zz", "fp:abc"):
        with pytest.raises(ValueError):
            FieldConfig.parse(bad)


def test_every_claim_in_exactly_one_suite():
    ids = [c for suite in SUITES.values() for c in suite]
    assert sorted(ids) == sorted(CLAIMS) and len(ids) == len(set(ids)) == 16


def test_run_suite_adjugate_qq():
    rep = run_suite("adjugate", 1, "qq")
    assert rep.ok and [c.id for c in rep.claims] == ["c01", "c02"]
    assert all(c.status == "pass" and c.field == "qq" for c in rep.claims)


def test_run_suite_ladder_height_fp():
    rep = run_suite("ladder-height", 1, f"fp:{DEFAULT_PRIME}")
    (claim,) = rep.claims
    assert claim.status == "pass"
    assert set(claim.witness) == {"4,1", "5,2"}
    assert claim.witness["5,2"]["height"] == 6


def test_unknown_suite():
    with pytest.raises(UnknownSuiteError):
        run_suite("nosuch", 1, "qq")


def test_skipped_claims_and_determinism():
    a = run_suite("adjugate", 3, "fp:101", skip={"c02"}, threads=2)
    b = run_suite("adjugate", 3, "fp:101", skip={"c02"}, threads=1)
    assert [c.status for c in a.claims] == ["pass", "skipped"]
    assert a.to_json(timings=False) == b.to_json(timings=False)
    ser.validate(a.to_json(), "report")


def test_confirm_qq_escalation():
    rep = run_suite("ladder-height", 1, "fp:101", confirm_qq=True)
    c = rep.claims[0]
    assert c.status == "pass" and c.field == "fp:101+qq"
    assert set(c.witness) == {"modular", "rational"}


# -- JSON artifacts --------------------------------------------------------------------

def test_matrix_roundtrip():
    obj = matrix_to_json(banded_section(3, 0, 1))
    assert ser.io_roundtrip(obj) == obj


def test_rational_polynomial_roundtrip():
    R = Ring(["x", "y"])
    obj = poly_to_json(R("1/3*x^2 - 7/2*y + 5"))
    assert ser.io_roundtrip(obj) == obj


def test_complex_roundtrip():
    obj = ser.complex_to_json(gorenstein_ladder_resolution(3))
    assert ser.io_roundtrip(obj) == obj


def test_form_roundtrip():
    obj = deg4_report().forms[2].to_json()
    assert ser.io_roundtrip(obj, "form") == obj


def test_schema_violation_reports_position():
    obj = matrix_to_json(banded_section(3, 0, 1))
    obj["entries"][1][2]["terms"][0]["num"] = "1.5"
    with pytest.raises(ser.SchemaViolation) as err:
        ser.io_roundtrip(obj)
    assert err.value.path == "$.entries[1][2].terms[0].num"


def test_semantic_violation_is_reported():
    obj = matrix_to_json(banded_section(3, 0, 1))
    obj["rows"] = 4
    with pytest.raises(ser.SchemaViolation):
        ser.io_roundtrip(obj)


# -- command line ----------------------------------------------------------------------------

def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_cli_gen_det_roundtrip(tmp_path, capsys):
    path = tmp_path / "g.json"
    code, _, _ = run(capsys, "gen", "banded", "3", "1", "1", "--field", "qq", "--json", "--out", str(path))
    assert code == 0
    code, out, _ = run(capsys, "det", str(path), "--field", "qq")
    assert code == 0
    assert out.strip() == "- x_1_3*x_2_2*x_3_1 + x_1_2*x_2_3*x_3_1 + x_1_3*x_2_1*x_3_2"
    code, out, _ = run(capsys, "roundtrip", str(path), "--json")
    assert json.loads(out) == json.loads(path.read_text())


def test_cli_groebner_commands(capsys):
    assert run(capsys, "height", "--vars", "x,y,z", "--gens", "x*y", "x*z")[1].strip() == "1"
    code, out, _ = run(capsys, "member", "--vars", "x,y", "--gens", "x", "y", "--poly", "x^2+y")
    assert code == 0 and out.strip() == "yes"
    code, out, _ = run(capsys, "gb", "--vars", "x,y,z", "--gens", "x^2-y", "x*y-z", "--json")
    assert len(json.loads(out)["gens"]) == 3


def test_cli_suite_exit_codes(capsys):
    code, out, _ = run(capsys, "suite", "ladder-height")
    assert code == 0 and "c11 PASS" in out
    code, _, err = run(capsys, "suite", "nosuch")
    assert code == 2 and "unknown suite" in err


def test_cli_bad_field(capsys):
    code, _, err = run(capsys, "suite", "adjugate", "--field", "fp:4")
    assert code == 2 and "not a prime" in err


def test_cli_map_and_rees(capsys):
    code, out, _ = run(capsys, "map", "grassmann", "4", "2", "--json")
    assert code == 0 and json.loads(out)[0]["status"] == "pass"
    code, out, _ = run(capsys, "rees", "member", "--example", "deg4-bis", "--poly",
                       "z*t^3+y*t^2*u-x*t*u*v-z*t*u*v-y*u^2*v+z*v^3")
    assert code == 0 and json.loads(out)[0]["status"] == "pass"
    code, out, _ = run(capsys, "complex", "hb", "--example", "deg4")
    assert code == 0 and out.startswith("0 -> R(-6)^2")
