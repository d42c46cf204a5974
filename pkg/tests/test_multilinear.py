import random
from fractions import Fraction

import numpy as np
import pytest

from gradedbrackets import corpus
from gradedbrackets.algebroid import AlgebroidSpec, sn_bracket
from gradedbrackets.errors import NotFirstOrderError, NotSkewError
from gradedbrackets.generators import random_multilinear
from gradedbrackets.grassmann import wedge
from gradedbrackets.multilinear import (CommutativeAlgebra, FnMultilinearOp, MultilinearOp, fn_equal,
                                        fn_nr_bracket, g_insertion, gerstenhaber_bracket, nr_bracket,
                                        nr_bracket_skew, probe_functions, skew_projector,
                                        split_first_order, unshuffles, wedge_multilinear)
from gradedbrackets.scalar import Chart


def _bilinear(table_fn, dim):
    t = np.empty((dim, dim, dim), dtype=object)
    for idx in np.ndindex(t.shape):
        t[idx] = Fraction(table_fn(*idx))
    return MultilinearOp(t, 1)


def test_insertion_of_a_vector_into_a_bilinear_map():
    rng = random.Random(4)
    A = random_multilinear(rng, 2, 1, skew=False, density=1.0)
    v = MultilinearOp.vector([2, -1])
    ins = g_insertion(A, v)
    assert ins.degree == 0
    for i in range(2):
        x = [Fraction(int(i == 0)), Fraction(int(i == 1))]
        # b = -1: k = 0 term plus (-1)^(-1) times the k = 1 term
        expected = A(v.tensor, x) - A(x, v.tensor)
        assert list(ins(x)) == list(expected)


def test_insertion_of_linear_maps_is_composition():
    rng = random.Random(5)
    A = random_multilinear(rng, 3, 0, skew=False, density=1.0)
    B = random_multilinear(rng, 3, 0, skew=False, density=1.0)
    comp = MultilinearOp(np.dot(A.tensor, B.tensor), 0)
    assert g_insertion(A, B) == comp


def test_scalar_multiplication_is_associative():
    mult = MultilinearOp.from_table(1, 2, {(0, 0): {0: 1}})
    assert not g_insertion(mult, mult)
    assert not gerstenhaber_bracket(mult, mult)


def test_upper_triangular_matrices():
    assert not corpus.bracket_square(corpus.algebra("upper-triangular-2x2"))


def test_non_associative_product_has_a_witness():
    ex = corpus.algebra("twisted-square")
    assert corpus.bracket_square(ex)
    witness = corpus.associativity_witness(ex.op())
    assert witness is not None


def test_skew_projector():
    rng = random.Random(6)
    A = skew_projector(random_multilinear(rng, 3, 1, skew=False, density=1.0))
    assert skew_projector(A) == A
    sym = _bilinear(lambda o, i, j: i + j + o, 2)
    assert not skew_projector(sym)
    swap = _bilinear(lambda o, i, j: 1 if (o, i) == (0, 1) else 0, 2)
    half = skew_projector(swap)
    assert half.tensor[0, 1, 0] == Fraction(1, 2) and half.tensor[0, 0, 1] == Fraction(-1, 2)


def test_lie_brackets_square_to_zero():
    assert not nr_bracket(corpus.algebra("cross-product").op(), corpus.algebra("cross-product").op())
    aff = corpus.algebra("affine-line").op()
    assert not nr_bracket(aff, aff)


def test_non_jacobi_table_has_a_witness():
    ex = corpus.algebra("broken-three")
    op = ex.op()
    assert nr_bracket(op, op)
    assert corpus.jacobi_witness(op) is not None


def test_nr_needs_skew_operators():
    rng = random.Random(8)
    A = random_multilinear(rng, 2, 1, skew=False, density=1.0)
    while A.is_skew():
        A = random_multilinear(rng, 2, 1, skew=False, density=1.0)
    with pytest.raises(NotSkewError):
        nr_bracket(A, A)


@pytest.mark.parametrize("a,b", [(-1, 1), (0, 0), (1, 1), (1, 2), (2, 0), (0, -1)])
def test_unshuffle_and_skew_forms_agree(a, b):
    rng = random.Random(f"{a}:{b}")
    A, B = random_multilinear(rng, 2, a), random_multilinear(rng, 2, b)
    assert nr_bracket(A, B) == nr_bracket_skew(A, B)


def test_unshuffle_count():
    assert len(list(unshuffles(5, 2))) == 10
    assert all(sign in (1, -1) for sign, _ in unshuffles(4, 2))


def test_degrees_below_minus_one_give_zero():
    v = MultilinearOp.vector([1, 2])
    low = nr_bracket(v, v)
    assert low.degree == -2 and not low
    C = random_multilinear(random.Random(2), 2, 2)
    assert not nr_bracket(low, C)


def test_wedge_of_vectors_is_the_product():
    alg = CommutativeAlgebra.truncated_polynomials(2)
    one, x = MultilinearOp.vector([1, 0]), MultilinearOp.vector([0, 1])
    assert wedge_multilinear(one, x, alg) == x
    assert not wedge_multilinear(x, x, alg)


def test_wedge_with_the_unit():
    alg = CommutativeAlgebra.truncated_polynomials(3)
    rng = random.Random(9)
    A = random_multilinear(rng, 3, 1)
    assert wedge_multilinear(A, alg.unit, alg) == A


def test_wedge_is_graded_commutative():
    alg = CommutativeAlgebra.truncated_polynomials(3)
    rng = random.Random(10)
    for a, b in [(0, 0), (0, 1), (1, 1), (-1, 1)]:
        A, B = random_multilinear(rng, 3, a), random_multilinear(rng, 3, b)
        sign = 1 if ((a + 1) * (b + 1)) % 2 == 0 else -1
        assert wedge_multilinear(A, B, alg) == wedge_multilinear(B, A, alg) * sign


def test_split_examples():
    line = Chart(base=("x",))
    T1 = AlgebroidSpec.tangent(line)
    A = FnMultilinearOp(line, 2, lambda f, g: f * g.partial("x") - g * f.partial("x"))
    a1, a2 = split_first_order(A, T1)
    assert not a1 and a2 == T1.sections.gen(0)

    plane = Chart(base=("x", "y"))
    T = AlgebroidSpec.tangent(plane)
    B = FnMultilinearOp(plane, 2, lambda f, g: f.partial("x") * g.partial("y") - f.partial("y") * g.partial("x"))
    b1, b2 = split_first_order(B, T)
    assert b1 == wedge(T.sections.gen(0), T.sections.gen(1)) and not b2

    i1, i2 = split_first_order(FnMultilinearOp.identity(plane), T)
    assert not i1 and i2 == T.sections.one()


def test_second_order_operator_is_rejected():
    plane = Chart(base=("x", "y"))
    T = AlgebroidSpec.tangent(plane)
    with pytest.raises(NotFirstOrderError):
        split_first_order(FnMultilinearOp(plane, 1, lambda f: f.partial("x").partial("x")), T)


def test_sn_matches_pointwise_nr():
    plane = Chart(base=("x", "y"))
    T = AlgebroidSpec.tangent(plane)
    S = T.sections
    x, y = plane.vars()
    X = wedge(S.gen(0) * x, S.gen(1) * y * y)
    Y = S.gen(0) * (x * y) + S.gen(1)
    lhs = fn_nr_bracket(FnMultilinearOp.from_multivector(X, T), FnMultilinearOp.from_multivector(Y, T))
    rhs = FnMultilinearOp.from_multivector(sn_bracket(X, Y, T), T)
    assert fn_equal(lhs, rhs, probe_functions(plane)) is None
