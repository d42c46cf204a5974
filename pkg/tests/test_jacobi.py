import random

import pytest

from gradedbrackets import corpus
from gradedbrackets.algebroid import AlgebroidSpec, lie_derivative, sn_bracket
from gradedbrackets.errors import StructureError
from gradedbrackets.generators import random_element, random_first_order_op
from gradedbrackets.grassmann import pairing, wedge
from gradedbrackets.jacobi import (FirstOrderOp, JacobiAlgebroid, d_phi, extension_algebroid, h_z_map,
                                   jacobi_structure_check, lie_phi, nr_structural_bracket, sj_bracket,
                                   z_homogeneous_check)
from gradedbrackets.lifts import TotalSpace, complete_lift, vertical_lift
from gradedbrackets.scalar import Chart


def _plane_with_cocycle():
    A = corpus.tangent_plane()
    return JacobiAlgebroid(A, A.forms.gen(0))


def test_open_cocycle_is_rejected():
    B = corpus.scaling_plane()
    with pytest.raises(StructureError):
        JacobiAlgebroid(B, B.forms.gen(1))


def test_sections_bracket_like_sn():
    J = _plane_with_cocycle()
    S = J.sections
    x1, x2 = J.chart.vars()
    X, Y = S.gen(0) * x2, S.gen(1) * x1 + S.gen(0)
    assert sj_bracket(X, Y, J) == sn_bracket(X, Y, J.algebroid)


def test_bracket_with_unit_is_phi_of_x():
    J = _plane_with_cocycle()
    S = J.sections
    x1, x2 = J.chart.vars()
    X = S.gen(0) * x2 + S.gen(1)
    assert sj_bracket(X, S.one(), J) == S.scalar(x2)
    assert J.phi_contract(X) == S.scalar(x2)


def test_d_phi_examples():
    line = Chart(base=("x",))
    A = AlgebroidSpec.tangent(line)
    J = JacobiAlgebroid(A, A.forms.gen(0))
    F = A.forms
    x = line.var("x")
    assert d_phi(F.one(), J) == J.cocycle
    assert not d_phi(J.cocycle, J)
    assert d_phi(F.scalar(x), J) == F.gen(0) * (x + 1)


def test_lie_phi_examples():
    rng = random.Random(13)
    J = _plane_with_cocycle()
    A = J.algebroid
    for _ in range(10):
        X = random_element(rng, A.sections, 0)
        mu = random_element(rng, A.forms, rng.randint(-1, 1))
        assert lie_phi(X, mu, J) == lie_derivative(X, mu, A) + mu * pairing(X, J.cocycle)
    X = A.sections.gen(0) * 3
    assert lie_phi(X, A.forms.one(), J) == A.forms.scalar(pairing(X, J.cocycle))


def test_extension_bracket_and_cocycle():
    J = extension_algebroid(corpus.tangent_plane())
    E = J.algebroid
    S = E.sections
    x1, x2 = E.chart.vars()
    # I sits at index 0, the coordinate fields follow
    a = S.gen(1)
    b = S.gen(2) * x1 + S.gen(0) * x2
    assert sj_bracket(a, b, J) == S.gen(2)
    f, g = S.gen(0) * x1, S.gen(0) * x2
    assert not sj_bracket(f, g, J)
    assert J.phi_contract(S.gen(1) * 5 + S.gen(0) * x1) == S.scalar(x1)


def test_jacobi_structures():
    for name, build in corpus.JACOBI_STRUCTURES.items():
        js = build()
        assert jacobi_structure_check(js.lam, js.gamma, js.algebroid).ok, name


def test_non_jacobi_pair_reports_defects():
    A = corpus.tangent_plane()
    S = A.sections
    x1, _ = A.chart.vars()
    rep = jacobi_structure_check(wedge(S.gen(0), S.gen(1)) * x1, S.gen(0), A)
    assert not rep.ok
    assert any(line.startswith("FAIL") for line in rep.lines())


def test_square_of_a_jacobi_pair():
    js = corpus.contact_space3()
    A = js.algebroid
    op = js.first_order()
    sq = nr_structural_bracket(op, op, A)
    lam, gam = js.lam, js.gamma
    assert sq.first == sn_bracket(lam, lam, A) + wedge(lam, gam) * 2
    assert sq.second == sn_bracket(gam, lam, A) * 2
    assert not sq


def test_degree_zero_structural_bracket_matches_extension():
    rng = random.Random(14)
    A = corpus.tangent_plane()
    J = extension_algebroid(A)
    for _ in range(10):
        a = random_first_order_op(rng, A.sections, 0)
        b = random_first_order_op(rng, A.sections, 0)
        got = nr_structural_bracket(a, b, A)
        ext = sj_bracket(a.to_extension(J.algebroid), b.to_extension(J.algebroid), J)
        assert got == FirstOrderOp.from_extension(ext, A)


def test_h_z_map_without_second_part():
    A = corpus.tangent_plane()
    S = A.sections
    X = wedge(S.gen(0), S.gen(1))
    op = FirstOrderOp.of(X, None)
    assert h_z_map(op, S.gen(0)) == X


def test_homogeneity_against_the_liouville_field():
    A = corpus.tangent_plane()
    T = TotalSpace(A)
    x1, _ = A.chart.vars()
    X = A.sections.gen(1) * x1
    Xv = vertical_lift(X, T)
    assert sn_bracket(T.liouville(), Xv, T.tangent) == -Xv
    # [Z, A] = -a A with a = 0 for a section: the vertical lift is off by one
    assert not z_homogeneous_check(FirstOrderOp.of(Xv, None), T.liouville(), T.tangent)
    assert z_homogeneous_check(FirstOrderOp.of(complete_lift(X, T), None), T.liouville(), T.tangent)
