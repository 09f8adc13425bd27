import json
import subprocess
import sys

import pytest

from conftest import CORPUS_DIR
from skewrad.cli import SCHEMA, run


def ring(name):
    return str(CORPUS_DIR / f"{name}.ring")


def run_json(*argv):
    code, text = run([*argv, "--format", "json"])
    return code, json.loads(text)


def test_verify_theorem1_on_z4():
    code, rep = run_json("verify", "theorem1", ring("z4_trivial"))
    assert code == 0 and rep["schema"] == SCHEMA and rep["status"] == "pass"
    res = rep["result"]
    assert res["S"]["elements"] == ["0", "2g1"]
    assert res["is_ideal"] and res["d_stable"] and res["nil"]
    assert res["replay"] == {"checked": 2, "failed": []}


def test_verify_corollary_on_matrix_ring():
    code, rep = run_json("verify", "corollary", ring("m2f2_inner"))
    assert code == 0
    assert rep["result"]["S"]["elements"] == ["0"]
    assert rep["result"]["max_degree"] == 8
    assert all(e["not_found_witness"] for e in rep["result"]["entries"])


def test_corollary_fails_when_nilradical_is_nonzero():
    code, rep = run_json("verify", "corollary", ring("z4_trivial"))
    assert code == 1 and rep["status"] == "fail"


def test_verify_centre():
    assert run(["verify", "centre", ring("z2xm2f2_inner")])[0] == 0
    assert run(["verify", "centre", ring("t2f2_inner")])[0] == 1


def test_skew_mul_text_output():
    code, text = run(["skew", "mul", ring("tdual"), "x^1*(g2)", "x^1*(g2)"])
    assert code == 0
    assert "product: x^1*(g2)" in text.splitlines()


def test_skew_qinv():
    code, rep = run_json("skew", "qinv", ring("tdual"), "x^1*(g2)")
    assert rep["result"] == {"p": "x^1*(g2)", "found": False, "max_degree": 8}
    code, rep = run_json("skew", "qinv", ring("z4_trivial"), "x^1*(2g1)", "--max-degree", "3")
    assert rep["result"]["found"] and rep["result"]["quasi_inverse"] == "x^1*(2g1)"


def test_bad_polynomial_is_input_error():
    code, rep = run_json("skew", "mul", ring("tdual"), "x^1*(g9)", "(g1)")
    assert code == 2 and rep["status"] == "error"


def test_radical_and_core():
    code, rep = run_json("radical", ring("t2f2_inner"))
    assert rep["result"]["jacobson"]["elements"] == ["0", "g2"]
    code, rep = run_json("dstable-core", ring("tdual"))
    assert rep["result"]["nilradical"]["elements"] == ["0", "g2"]
    assert rep["result"]["S"]["elements"] == ["0"]
    assert rep["result"]["nilradical_d_stable"] is False


def test_ring_info():
    code, rep = run_json("ring", "info", ring("m2f2_inner"))
    assert rep["result"]["size"] == 16 and rep["result"]["unit"] == "g1 + g4"
    assert rep["result"]["labels"] == ["E11", "E12", "E21", "E22"]


def test_identity_check():
    code, rep = run_json("identity", "check", ring("m2f2_inner"), "--standard", "4")
    assert code == 0 and rep["result"]["holds"]
    code, rep = run_json("identity", "check", ring("m2f2_inner"), "--identity", "x1*x2 - x2*x1")
    assert not rep["result"]["holds"] and rep["result"]["witness"] == ["g1", "g2"]


def test_parse_errors_carry_file_position(tmp_path):
    bad = tmp_path / "bad.ring"
    bad.write_text("ring.kind=structure\nring.params=2,2\n[structure]\ng1*g2 = 3g9\n")
    code, rep = run_json("radical", str(bad))
    assert code == 2
    assert rep["result"]["error"].startswith(f"{bad}:4:")


def test_semantic_errors_are_input_errors(tmp_path):
    bad = tmp_path / "ddt.ring"
    bad.write_text("ring.kind=truncpoly\nring.params=4,3\n[derivation]\nD(g2)=g1\nD(g3)=2g2\n")
    code, rep = run_json("verify", "theorem1", str(bad))
    assert code == 2 and "LeibnizViolation" in rep["result"]["error"]


def test_cap_is_respected():
    code, rep = run_json("radical", ring("z4t3_euler"), "--cap", "16")
    assert code == 2 and "SizeCapExceeded" in rep["result"]["error"]


def test_missing_derivation_is_input_error(tmp_path):
    f = tmp_path / "r.ring"
    f.write_text("ring.kind=zn\nring.params=4\n")
    assert run(["verify", "theorem1", str(f)])[0] == 2


def test_reports_are_byte_identical():
    argv = ["corpus", "run", str(CORPUS_DIR), "--format", "json", "--seed", "5"]
    assert run(argv) == run(argv)


def test_corpus_run_keeps_input_order():
    files = [ring("z4_trivial"), ring("tdual"), ring("m2f2_inner")]
    code, rep = run_json("corpus", "run", *files, "--jobs", "3")
    assert code == 0
    assert [r["file"] for r in rep["result"]["runs"]] == files
    assert rep["result"]["runs"][1]["obstruction"] == "g2"


def test_timing_only_when_requested():
    _, rep = run_json("radical", ring("z4_trivial"))
    assert "timing_seconds" not in rep
    _, rep = run_json("radical", ring("z4_trivial"), "--timing")
    assert rep["timing_seconds"] >= 0


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "skewrad", "verify", "theorem1", ring("t2f2_inner")],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.startswith("verify theorem1: pass")


def test_usage_errors_exit_2():
    with pytest.raises(SystemExit) as info:
        run(["verify"])
    assert info.value.code == 2
