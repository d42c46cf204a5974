from gradedbrackets.grassmann import contract, pairing, wedge
from gradedbrackets.algebroid import AlgebroidSpec


def _tangent(plane):
    A = AlgebroidSpec.tangent(plane)
    return A, A.sections, A.forms


def test_wedge_examples(plane):
    A, S, F = _tangent(plane)
    x, y = plane.vars()
    e1, e2 = S.gen(0), S.gen(1)
    assert wedge(e1, e2).terms == {(0, 1): plane.one()}
    assert not wedge(e1, e1)
    assert wedge(e1 * x, e2 * y + e1) == wedge(e1, e2) * (x * y)
    assert wedge(e2, e1) == -wedge(e1, e2)


def test_contraction_examples(plane):
    A, S, F = _tangent(plane)
    x, _ = plane.vars()
    e1, e2 = S.gen(0), S.gen(1)
    eps1, eps2 = F.gen(0), F.gen(1)
    assert contract(e1, wedge(eps1, eps2)) == eps2
    assert pairing(wedge(e1, e2), wedge(eps1, eps2)) == plane.one()
    assert contract(e2, wedge(eps1, eps2) * x) == -eps1 * x


def test_pairing_is_a_determinant(plane):
    A, S, F = _tangent(plane)
    x1, x2 = plane.vars()
    mu = F.gen(0) * x1 + F.gen(1) * 2
    nu = F.gen(0) * 3 + F.gen(1) * x2
    # det [[x1, 2], [3, x2]]
    assert pairing(wedge(S.gen(0), S.gen(1)), wedge(mu, nu)) == x1 * x2 - 6


def test_contraction_is_a_graded_derivation(plane):
    A, S, F = _tangent(plane)
    x1, _ = plane.vars()
    v = S.gen(0) * x1 + S.gen(1)
    a, b = F.gen(0) * x1, F.gen(1) - F.gen(0)
    assert contract(v, wedge(a, b)) == wedge(contract(v, a), b) - wedge(a, contract(v, b))


def test_scalar_and_unit(plane):
    A, S, F = _tangent(plane)
    x1, _ = plane.vars()
    assert S.one().scalar_part() == plane.one()
    assert wedge(S.scalar(x1), S.gen(0)) == S.gen(0) * x1
    assert S.zero().tensor_degree is None
