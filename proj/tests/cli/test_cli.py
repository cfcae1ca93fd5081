import json
import os
import pathlib
import subprocess

import pytest

UMK = os.environ.get("UMK_BIN", "build/umk")
DATA = pathlib.Path(__file__).resolve().parents[2] / "data"


def umk(*args):
    p = subprocess.run([UMK, *args], capture_output=True, text=True, timeout=300)
    return p.returncode, p.stdout, p.stderr


def test_check_row_sphere_file():
    code, out, _ = umk("check-row", "--ring", str(DATA / "sphere.ring"), "--row", "[x,y,z]")
    assert code == 0
    assert "inverse: [[x], [y], [z]]" in out


def test_check_row_refutes():
    code, out, _ = umk("check-row", "--ring", "poly Q[x,y]/(0) sdim 2", "--row", "[x, y]")
    assert code == 1
    assert "unimodular: false" in out


def test_audit_ms3():
    code, out, _ = umk("audit", "--ring", "zmod 4", "--n", "3", "--what", "MS3")
    assert code == 0
    assert "0 violations" in out.splitlines()[-1]
    assert all(l.startswith("MS3 ") for l in out.splitlines())


def test_audit_report_file(tmp_path):
    path = tmp_path / "out.txt"
    code, out, _ = umk("audit", "--ring", "zmod 4", "--n", "3", "--what", "MS3",
                       "--report", str(path))
    assert code == 0
    assert out.count("\n") == 1
    assert path.read_text().endswith(out)


def test_dimension_gate_is_usage_error():
    code, _, err = umk("wms-mul", "--ring", "poly Q[x]/(0) sdim 9", "--v", "[1,0,0]",
                       "--w", "[1,0,0]")
    assert code == 3
    assert "dimension gate" in err


def test_budget_exit_code():
    code, _, err = umk("check-row", "--ring", "poly Q[x,y,z]/(0) sdim 3", "--row",
                       "[x^3+y^3+z^3-1, x*y*z, x+y+z]", "--solve-budget", "1")
    assert code == 2
    assert "budget" in err


def test_usage_errors():
    assert umk()[0] == 3
    assert umk("check-row", "--ring", "zmod 6", "--row", "[2,3")[0] == 3
    assert umk("audit", "--ring", "zmod 4", "--n", "3", "--what", "MS9")[0] == 3
    assert umk("audit", "--ring", "poly Q[x]/(0) sdim 1", "--n", "3")[0] == 3
    assert umk("complete", "--ring", "zmod 5", "--row", "[1,2,3]", "--mode", "nope")[0] == 3


def test_cap_exit_code():
    code, _, _ = umk("orbit-table", "--ring", "zmod 5", "--m", "2", "--n", "4",
                     "--enum-cap", "1000")
    assert code == 2


def test_workspace_objects():
    code, out, _ = umk("--input", str(DATA / "sample.ws"), "wms-mul", "--v", "v", "--w", "w")
    assert code == 0
    assert "x: 2" in out and "y: 5" in out and "tail: [1, 0]" in out
    code, out, _ = umk("--input", str(DATA / "sample.ws"), "row1", "--mat", "M")
    assert code == 0 and "row: [1, 2, 3, 4]" in out


def test_normalize_pair_identity_example():
    code, out, _ = umk("normalize-pair", "--ring", "poly Q[]/(0) sdim 0", "--v", "[1,0,0]", "--w", "[1,0,0]",
                       "--format", "json")
    assert code == 0
    j = json.loads(out)
    assert j["eps"] == "E C 1 2 1\n"
    assert j["delta"] == "E C 1 2 1\nE C 2 1 -1\n"
    assert j["x"] == "1" and j["y"] == "0"


def test_json_mirrors_text():
    args = ["star", "--ring", "zmod 5", "--x", "[[0,1],[1,0]]", "--y", "[[1,0],[0,1]]"]
    _, text, _ = umk(*args)
    code, out, _ = umk(*args, "--format", "json")
    assert code == 0
    j = json.loads(out)
    assert j["T"] == "[[4, 1, 1, 0], [1, 4, 0, 1]]"
    for key in j:
        assert f"{key}: {j[key]}" in text


def test_complete_modes():
    code, out, _ = umk("complete", "--ring", str(DATA / "sphere.ring"), "--row", "[x^2,y,z]",
                       "--root", "x", "--mode", "sq3")
    assert code == 0 and "determinant: 1" in out
    code, out, _ = umk("complete", "--ring", str(DATA / "sphere.ring"), "--row", "[x,y,z,0]",
                       "--mode", "bass-even")
    assert code == 0 and "matrix: [[x, y, z, 0], [-y, x, 0, z]]" in out
    code, _, _ = umk("complete", "--ring", str(DATA / "sphere.ring"), "--row", "[y,x,z]",
                     "--root", "x", "--mode", "sq3")
    assert code == 3


def test_homotopy(tmp_path):
    code, out, _ = umk("verify-homotopy", "--witness", str(DATA / "shift.wit"))
    assert code == 0 and "valid: true" in out
    bad = tmp_path / "bad.wit"
    bad.write_text("ring: poly Q[]/(0) sdim 0\nz: [t, 0, 0]\nv: [0, 0, 0]\nw: [1, 0, 0]\n")
    code, out, _ = umk("verify-homotopy", "--witness", str(bad))
    assert code == 1 and "certified: false" in out
    bad.write_text("ring: zmod 5\nz: [1, t, 0]\ncolour: red\n")
    assert umk("verify-homotopy", "--witness", str(bad))[0] == 3


def test_orbit_table():
    code, out, _ = umk("orbit-table", "--ring", "zmod 4", "--m", "1", "--n", "3", "--format", "json")
    assert code == 0
    j = json.loads(out)
    assert j["elements"] == 56 and j["orbit_count"] == 1


@pytest.mark.parametrize("what", ["MS5", "row1-hom", "adjoint-orbit"])
def test_deterministic(what):
    n = "4" if what == "row1-hom" else "3"
    a = umk("audit", "--ring", "zmod 3", "--n", n, "--what", what, "--seed", "3")
    b = umk("audit", "--ring", "zmod 3", "--n", n, "--what", what, "--seed", "3")
    assert a == b and a[0] == 0


def test_timing_only_on_request():
    _, out, _ = umk("audit", "--ring", "zmod 2", "--n", "3", "--what", "MS3")
    assert "runtime" not in out
    _, out, _ = umk("audit", "--ring", "zmod 2", "--n", "3", "--what", "MS3", "--timing")
    assert "runtime" in out
