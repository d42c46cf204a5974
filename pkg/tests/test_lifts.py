import random

import pytest

from gradedbrackets import corpus
from gradedbrackets.algebroid import AlgebroidSpec, lie_derivative, sn_bracket
from gradedbrackets.errors import InhomogeneousError
from gradedbrackets.generators import random_element
from gradedbrackets.grassmann import wedge
from gradedbrackets.jacobi import FirstOrderOp, JacobiAlgebroid, d_phi, extension_algebroid
from gradedbrackets.lifts import (TotalSpace, complete_lift, function_complete_lift, induced_bracket,
                                  jacobi_lift, poisson_lift, poissonization_algebroid, poissonization_embed,
                                  vertical_lift)
from gradedbrackets.scalar import Chart


def test_vertical_lift_examples():
    A = corpus.tangent_plane()
    T = TotalSpace(A)
    S, TS = A.sections, T.sections
    x1, x2 = A.chart.vars()
    assert vertical_lift(S.gen(0), T) == TS.gen("d_y1")
    assert vertical_lift(wedge(S.gen(0), S.gen(1)) * x1, T) == wedge(TS.gen("d_y1"), TS.gen("d_y2")) * T.pullback(x1)
    assert vertical_lift(S.scalar(x1 * x2), T) == TS.scalar(T.pullback(x1 * x2))


def test_complete_lift_examples():
    line = Chart(base=("x",))
    A = AlgebroidSpec.tangent(line)
    T = TotalSpace(A)
    TS = T.sections
    x = line.var("x")
    assert complete_lift(A.sections.gen(0), T) == TS.gen("d_x")
    lifted = complete_lift(A.sections.gen(0) * x, T, verify=True)
    assert lifted == TS.gen("d_x") * T.pullback(x) + TS.gen("d_y1") * T.chart.var("y1")
    plane = corpus.tangent_plane()
    TP = TotalSpace(plane)
    assert function_complete_lift(plane.chart.var("x1"), TP) == TP.chart.var("y1")


def test_lifts_are_homomorphisms():
    rng = random.Random(15)
    for A in (corpus.tangent_plane(), corpus.scaling_plane(), corpus.so3()):
        T = TotalSpace(A)
        for _ in range(6):
            X = random_element(rng, A.sections, rng.randint(-1, 1), 1, 2)
            Y = random_element(rng, A.sections, rng.randint(-1, 1), 1, 2)
            br = sn_bracket(X, Y, A)
            assert complete_lift(br, T) == sn_bracket(complete_lift(X, T), complete_lift(Y, T), T.tangent)
            assert vertical_lift(br, T) == sn_bracket(complete_lift(X, T), vertical_lift(Y, T), T.tangent)


def test_jacobi_lift_without_cocycle_terms():
    A = corpus.tangent_plane()
    J = JacobiAlgebroid(A, A.forms.gen(0))
    T = TotalSpace(A)
    X = A.sections.gen(1) * A.chart.var("x1")
    lifted = jacobi_lift(X, J, T)
    assert lifted.first == complete_lift(X, T)
    assert not lifted.second


def test_poisson_lift_of_a_function():
    A = corpus.tangent_plane()
    J = JacobiAlgebroid(A, A.forms.gen(0))
    T = TotalSpace(A)
    f = A.chart.var("x1") * A.chart.var("x2")
    assert poisson_lift(A.sections.scalar(f), J, T) == T.tangent.sections.scalar(T.iota(d_phi(A.forms.scalar(f), J)))


def test_poisson_lift_of_a_constant_poisson_structure():
    A = corpus.tangent_plane()
    lam = wedge(A.sections.gen(0), A.sections.gen(1))
    J = extension_algebroid(A)
    X = FirstOrderOp.of(lam, None).to_extension(J.algebroid)
    TE = TotalSpace(J.algebroid)
    TA = TotalSpace(A)
    t = TE.chart.var("t")
    expected = complete_lift(lam, TA).embed(TE.sections) - vertical_lift(lam, TA).embed(TE.sections) * t
    assert poisson_lift(X, J, TE) == expected


def test_poissonization_examples():
    chart = Chart(base=("x1", "x2"), aux=("t",), exp_coord="t")
    A = AlgebroidSpec(chart, ("d_x1", "d_x2"), [[1, 0, 0], [0, 1, 0]], {}, ("dx1", "dx2"))
    J = JacobiAlgebroid(A, A.forms.gen(0))
    target = poissonization_algebroid(A)
    X = A.sections.gen(1) * chart.var("x1")
    shift = {0: 0, 1: 1}
    assert poissonization_embed(X, J, target) == X.embed(target.sections, shift)
    assert poissonization_embed(A.sections.one(), J, target) == target.sections.scalar(chart.exp(1))


def test_induced_bracket_of_a_complete_lift_is_the_lie_derivative():
    A = corpus.tangent_plane()
    T = TotalSpace(A)
    x1, x2 = A.chart.vars()
    X = A.sections.gen(0) * x2 + A.sections.gen(1)
    mu = A.forms.gen(0) * x1 + A.forms.gen(1) * (x1 * x2)
    assert induced_bracket(complete_lift(X, T), [mu], T) == lie_derivative(X, mu, A)


def test_induced_bracket_rejects_nonlinear_dependence():
    A = corpus.tangent_plane()
    T = TotalSpace(A)
    TS = T.sections
    y1 = T.chart.var("y1")
    lam = wedge(TS.gen("d_x1"), TS.gen("d_y1")) * (y1 * y1)
    with pytest.raises(InhomogeneousError):
        induced_bracket(lam, [A.forms.gen(0) * A.chart.var("x1"), A.forms.gen(0)], T)
