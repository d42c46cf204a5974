import random

import pytest

from gradedbrackets import corpus
from gradedbrackets.algebroid import (AlgebroidSpec, algebroid_validate, exterior_d, lie_derivative,
                                      sn_bracket)
from gradedbrackets.errors import SpaceMismatch
from gradedbrackets.generators import random_element, random_scalar
from gradedbrackets.grassmann import contract, pairing, wedge


def test_tangent_and_so3_validate():
    assert algebroid_validate(corpus.tangent_plane()).ok
    assert algebroid_validate(corpus.so3()).ok
    assert algebroid_validate(corpus.scaling_plane()).ok


def test_broken_three_fails_on_the_full_triple():
    ex = corpus.algebra("broken-three")
    structure = {}
    for (i, j), out in ex.table.items():
        for k, c in out.items():
            if i < j:
                structure[(i, j, k)] = c
    A = AlgebroidSpec.lie_algebra(("e1", "e2", "e3"), structure)
    rep = algebroid_validate(A)
    assert not rep.ok
    assert "e1" in rep.lines()[0] and "e2" in rep.lines()[0] and "e3" in rep.lines()[0]


def test_corrupted_anchor_is_reported():
    rep = algebroid_validate(corpus.corrupted_tangent_plane())
    assert not rep.ok
    assert rep.lines()[-1] == "FAIL" or rep.lines()[0].startswith("FAIL")


def test_sn_examples():
    A = corpus.tangent_plane()
    S = A.sections
    x1, x2 = A.chart.vars()
    assert sn_bracket(S.gen(0), S.scalar(x1), A) == S.one()
    assert sn_bracket(S.gen(1) * x1, S.gen(0), A) == -S.gen(1)
    so3 = corpus.so3()
    assert sn_bracket(so3.sections.gen(0), so3.sections.gen(1), so3) == so3.sections.gen(2)


def test_sn_refuses_foreign_elements():
    A, B = corpus.tangent_plane(), corpus.so3()
    with pytest.raises(SpaceMismatch):
        sn_bracket(A.sections.gen(0), B.sections.gen(0), A)


def test_exterior_derivative_examples():
    A = corpus.tangent_plane()
    F = A.forms
    x1, x2 = A.chart.vars()
    assert exterior_d(F.scalar(x1), A) == F.gen(0)
    assert exterior_d(F.gen(0) * x2, A) == -wedge(F.gen(0), F.gen(1))
    so3 = corpus.so3()
    G = so3.forms
    assert exterior_d(G.gen(0), so3) == -wedge(G.gen(1), G.gen(2))


def test_lie_derivative_examples():
    A = corpus.tangent_plane()
    F, S = A.forms, A.sections
    x1, _ = A.chart.vars()
    assert lie_derivative(S.gen(0), F.gen(0) * x1, A) == F.gen(0)


def test_lie_derivative_on_so3_matches_pairing():
    so3 = corpus.so3()
    S, F = so3.sections, so3.forms
    got = lie_derivative(S.gen(0), F.gen(1), so3)
    for j in range(3):
        expected = -pairing(sn_bracket(S.gen(0), S.gen(j), so3), F.gen(1))
        assert pairing(S.gen(j), got) == expected


def test_lie_derivative_is_a_module_derivation():
    rng = random.Random(11)
    for A in (corpus.tangent_plane(), corpus.scaling_plane()):
        for _ in range(10):
            X = random_element(rng, A.sections, 0)
            mu = random_element(rng, A.forms, rng.randint(0, 1))
            f = random_scalar(rng, A.chart)
            lhs = lie_derivative(X, mu * f, A) - lie_derivative(X, mu, A) * f
            assert lhs == mu * A.act(X, f)


def test_d_squared_vanishes():
    rng = random.Random(12)
    for A in (corpus.tangent_space3(), corpus.so3(), corpus.scaling_plane()):
        for _ in range(10):
            mu = random_element(rng, A.forms, rng.randint(-1, 1))
            assert not exterior_d(exterior_d(mu, A), A)


def test_contraction_pairs_dual_frames():
    A = corpus.tangent_space3()
    S, F = A.sections, A.forms
    for i in range(3):
        for j in range(3):
            assert pairing(S.gen(i), F.gen(j)) == (A.chart.one() if i == j else A.chart.zero())
    assert contract(S.gen(0), wedge(F.gen(0), F.gen(1), F.gen(2))) == wedge(F.gen(1), F.gen(2))
