import io
from pathlib import Path

import pytest

from gradedbrackets.cli import main
from gradedbrackets.docs import parse_doc

DATA = Path(__file__).parent / "data"


def run(*args):
    out = io.StringIO()
    code = main([str(a) for a in args], out)
    return code, out.getvalue()


def test_check_algebroid():
    assert run("check-algebroid", DATA / "tangent-plane.doc") == (0, "PASS\n")
    code, text = run("check-algebroid", DATA / "corrupted-plane.doc")
    assert code == 1 and "FAIL" in text


def test_check_jacobi():
    code, text = run("check-jacobi", DATA / "contact.doc")
    assert code == 0 and text.strip().endswith("PASS")


def test_sn_bracket_prints_a_document():
    code, text = run("bracket", DATA / "tangent-plane.doc", "--kind", "sn")
    assert code == 0
    doc = parse_doc(text)
    assert doc.tensors["result"][1][(0, 1)] == doc.chart.var("x2") ** 2 * -1


def test_other_brackets():
    code, text = run("bracket", DATA / "scaling-plane-jacobi.doc", "--kind", "sj")
    assert code == 0 and "[tensor result]" in text
    code, text = run("bracket", DATA / "cross-product.doc", "--kind", "nr")
    assert code == 0 and parse_doc(text).operators["result"].is_zero()
    code, text = run("bracket", DATA / "weighted-plane.doc", "--kind", "koszul")
    assert code == 0 and "space: form" in text


@pytest.mark.parametrize("kind", ["vertical", "complete"])
def test_tangent_lifts(kind):
    code, text = run("lift", DATA / "tangent-plane.doc", "--kind", kind, "--tensor", "Y")
    assert code == 0
    assert parse_doc(text).chart.fiber == ("y1", "y2")


@pytest.mark.parametrize("kind", ["jacobi", "poisson"])
def test_cocycle_lifts(kind):
    code, text = run("lift", DATA / "scaling-plane-jacobi.doc", "--kind", kind)
    assert code == 0 and "[tensor" in text


def test_poissonize():
    code, text = run("poissonize", DATA / "so3-extension.doc")
    assert code == 0 and "exp(-t)" in text


def test_bialgebroid_check():
    code, text = run("bialgebroid-check", DATA / "contact-pair.doc", "--depth", 2, "--seed", 42)
    assert code == 0 and text.endswith("PASS\n")
    code, text = run("bialgebroid-check", DATA / "contact-pair-perturbed.doc", "--seed", 42)
    assert code == 1 and "FAIL stage1" in text


def test_verify(tmp_path):
    code, text = run("verify", "--suite", "sn-jacobi", "--seed", 3, "--cases", 2)
    assert code == 0 and text.endswith("PASS\n")
    code, text = run("verify", "--suite", "sn-jacobi", "--cases", 5, "--doc", DATA / "corrupted-plane.doc",
                     "--repro-dir", tmp_path)
    assert code == 1
    written = list(tmp_path.iterdir())
    assert written and parse_doc(written[0].read_text()).note


def test_verify_is_deterministic():
    first = run("verify", "--suite", "poissonization", "--seed", 11, "--cases", 3)
    assert run("verify", "--suite", "poissonization", "--seed", 11, "--cases", 3) == first


def test_input_errors(tmp_path):
    assert run("verify", "--suite", "nope")[0] == 2
    assert run("check-algebroid", tmp_path / "missing.doc")[0] == 2
    bad = tmp_path / "bad.doc"
    bad.write_text("kind: algebroid\n[chart]\nbase: x\n[anchor]\nd_x x: x^-1\n")
    assert run("check-algebroid", bad)[0] == 2
    assert run("bracket", DATA / "tangent-plane.doc", "--kind", "sn", "--left", "Q")[0] == 2
    assert run("bialgebroid-check", DATA / "tangent-plane.doc")[0] == 2
    assert run("frobnicate")[0] == 2


def test_list_suites():
    code, text = run("verify", "--list")
    assert code == 0 and "bialgebroid-two-stage" in text
