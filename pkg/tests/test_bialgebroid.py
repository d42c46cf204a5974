import random

import pytest

from gradedbrackets import corpus
from gradedbrackets.algebroid import AlgebroidSpec
from gradedbrackets.bialgebroid import (DualPair, bialgebroid_check, d_star, triangular_construct,
                                        wedge_reduction_sides)
from gradedbrackets.docs import doc_from_dual_pair
from gradedbrackets.errors import SpaceMismatch, StructureError
from gradedbrackets.generators import random_element
from gradedbrackets.grassmann import wedge
from gradedbrackets.jacobi import FirstOrderOp, JacobiAlgebroid, extension_algebroid
from gradedbrackets.koszul import koszul_bracket, unpack_extension_form
from gradedbrackets.scalar import Chart


def test_trivial_structures_pass():
    chart = Chart(base=("x1", "x2"))
    zero = AlgebroidSpec(chart, ("e1", "e2"), None, {}, ("eps1", "eps2"))
    P = corpus.trivial_pair(zero)
    rep = bialgebroid_check(P)
    assert rep.ok and rep.stage2_ok
    x = random_element(random.Random(1), P.sections, 1)
    assert not d_star(x, P)


def test_d_star_of_unit_is_the_dual_cocycle():
    P = corpus.triangular_pairs()["contact-space3"]
    assert d_star(P.sections.one(), P) == P.J_star.cocycle.reinterpret(P.sections)


def test_d_star_on_a_line():
    line = Chart(base=("x",))
    L = AlgebroidSpec.tangent(line)
    x = line.var("x")
    dual = AlgebroidSpec(line, L.coframe, [[x]], {}, L.frame, "algebroid-section")
    P = DualPair(JacobiAlgebroid(L), JacobiAlgebroid(dual, dual.forms.gen(0) * 2))
    # anchor x d_x acting on x^2 plus the cocycle term 2 x^2
    assert d_star(P.sections.scalar(x * x), P) == P.sections.gen(0) * (x * x * 4)


def test_dual_pair_needs_matching_frames():
    A = corpus.tangent_plane()
    with pytest.raises(SpaceMismatch):
        DualPair(JacobiAlgebroid(A), JacobiAlgebroid(A))


def test_zero_element_gives_zero_dual():
    P = corpus.triangular_pairs()["zero"]
    Ls = P.J_star.algebroid
    assert not Ls.structure or all(not slot for slot in Ls.structure.values())
    assert all(not f for row in Ls.anchor for f in row)
    assert not P.J_star.cocycle


def test_non_jacobi_element_is_rejected():
    J = extension_algebroid(corpus.tangent_plane())
    S = J.sections
    x1, _ = J.chart.vars()
    with pytest.raises(StructureError):
        triangular_construct(wedge(S.gen(1), S.gen(2)) * x1 + wedge(S.gen(0), S.gen(1)), J)


def test_poisson_case_dual_bracket_is_koszul():
    js = corpus.weighted_plane()
    A = js.algebroid
    J = extension_algebroid(A)
    X = FirstOrderOp.of(js.lam, None).to_extension(J.algebroid)
    P = triangular_construct(X, J)
    Ls = P.J_star.algebroid
    br = Ls.frame_bracket(1, 2)  # [dx1, dx2] in the dual frame dI, dx1, dx2
    form, fn = unpack_extension_form(br.reinterpret(J.forms), A)
    assert form == koszul_bracket(A.forms.gen(0), A.forms.gen(1), js.lam, A)
    assert fn == -A.chart.var("x1")


def test_triangular_pairs_pass():
    for name, P in corpus.triangular_pairs().items():
        assert not P.validate(), name
        rep = bialgebroid_check(P, depth=2, seed=3)
        assert rep.ok, (name, rep.lines())


def test_perturbed_pairs_fail_at_degree_zero():
    for name, P in corpus.perturbed_pairs().items():
        assert not P.validate(), name
        rep = bialgebroid_check(P, depth=2, seed=3)
        assert not rep.ok and not rep.stage1_ok, name
        assert rep.failures[0][0] == 1


def test_structure_function_shifted_by_a_coordinate():
    doc = doc_from_dual_pair(corpus.triangular_pairs()["contact-space3"])
    key = (1, 2, 0)
    doc.dual_structure[key] = doc.dual_structure[key] + doc.chart.var("q")
    rep = bialgebroid_check(doc.dual_pair())
    assert not rep.ok
    assert rep.failures[0][0] == 1 and "d_q" in rep.failures[0][1]


def test_wedge_reduction_holds_on_every_pair():
    pairs = {**corpus.triangular_pairs(), **corpus.perturbed_pairs()}
    rng = random.Random(17)
    for name, P in pairs.items():
        S = P.sections
        for _ in range(8):
            x, y, z = (random_element(rng, S, rng.randint(-1, 1), 1, 2) for _ in range(3))
            lhs, rhs = wedge_reduction_sides(x, y, z, P)
            assert lhs == rhs, name


def test_swapped_pair_is_a_pair():
    P = corpus.triangular_pairs()["affine-line"]
    assert P.swapped().swapped() == P
