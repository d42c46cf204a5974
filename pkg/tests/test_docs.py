import json
from pathlib import Path

import pytest

from gradedbrackets import corpus
from gradedbrackets.docs import (doc_from_algebroid, doc_from_dual_pair, doc_from_json,
                                 doc_from_tensors, doc_to_json, load_doc, parse_doc, print_doc)
from gradedbrackets.errors import ParseError
from gradedbrackets.grassmann import wedge
from gradedbrackets.jacobi import JacobiAlgebroid

DATA = Path(__file__).parent / "data"


def test_minimal_tangent_document():
    doc = parse_doc("kind: algebroid\n[chart]\nbase: x1 x2\n")
    A = doc.algebroid()
    assert A == corpus.tangent_plane()
    assert A.is_tangent()


def test_skew_completion():
    text = ("kind: algebroid\n[chart]\n[frame]\nnames: e1 e2 e3\ndual: eps1 eps2 eps3\n"
            "[structure]\ne1 e2 e3: 1\n")
    A = parse_doc(text).algebroid()
    S = A.sections
    assert A.frame_bracket(1, 0) == -S.gen(2)
    assert A.frame_bracket(0, 1) == S.gen(2)


def test_malformed_exponent_points_at_the_token():
    text = "kind: algebroid\n[chart]\nbase: x\n[anchor]\nd_x x: x^-1\n"
    with pytest.raises(ParseError) as err:
        parse_doc(text)
    assert err.value.line == 5 and err.value.column == 10


def test_undeclared_coordinate():
    with pytest.raises(ParseError):
        parse_doc("kind: algebroid\n[chart]\nbase: x\n[anchor]\nd_x x: z\n")


def test_unknown_kind():
    with pytest.raises(ParseError):
        parse_doc("kind: manifold\n[chart]\nbase: x\n")


@pytest.mark.parametrize("name", sorted(corpus.ALGEBROIDS))
def test_algebroid_round_trip(name):
    A = corpus.ALGEBROIDS[name]()
    doc = doc_from_algebroid(A)
    again = parse_doc(print_doc(doc))
    assert again == doc
    assert again.algebroid() == A


def test_dual_pair_round_trip():
    for P in list(corpus.triangular_pairs().values()) + list(corpus.perturbed_pairs().values()):
        doc = doc_from_dual_pair(P)
        again = parse_doc(print_doc(doc))
        assert again == doc
        assert again.dual_pair() == P


def test_tensors_operators_and_note_round_trip():
    B = corpus.scaling_plane()
    J = JacobiAlgebroid(B, B.forms.gen(0))
    x1, x2 = B.chart.vars()
    doc = doc_from_tensors(B, {"X": wedge(B.sections.gen(0), B.sections.gen(1)) * x2,
                               "mu": B.forms.gen(1) * (x1 * x1) + B.forms.one()}, "jacobi-algebroid", J.cocycle)
    doc.with_operator("bracket", corpus.algebra("sl2").op())
    doc.note = "graded Jacobi identity"
    text = print_doc(doc)
    again = parse_doc(text)
    assert again == doc
    assert print_doc(again) == text
    assert again.tensor("X") == doc.tensor("X")
    assert again.operators["bracket"] == corpus.algebra("sl2").op()


def test_exponential_chart_round_trip():
    doc = load_doc(str(DATA / "so3-extension.doc"))
    assert parse_doc(print_doc(doc)) == doc
    assert doc.chart.exp_coord == "t"


def test_json_form():
    doc = load_doc(str(DATA / "contact-pair.doc"))
    text = doc_to_json(doc)
    assert isinstance(json.loads(text), dict)
    assert doc_from_json(text) == doc


def test_sample_documents_are_canonical():
    for path in sorted(DATA.glob("*.doc")):
        text = path.read_text()
        assert print_doc(parse_doc(text)) == text, path.name
