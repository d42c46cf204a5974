from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from gradedbrackets.errors import ChartMismatch, ParseError, UnknownCoordinate
from gradedbrackets.scalar import Chart, format_scalar, parse_scalar


def test_product_of_binomials(line_with_t):
    x, _ = line_with_t.vars()[:2]
    assert (x + 1) * (x - 1) == x * x - 1


def test_adding_zero(line_with_t):
    a = parse_scalar("3*x*y - 1/2", line_with_t)
    assert a + 0 == a
    assert a + line_with_t.zero() == a


def test_exponential_weights_cancel(line_with_t):
    c = line_with_t
    x, y = c.var("x"), c.var("y")
    assert (c.exp(1) * x) * (c.exp(-1) * y) == x * y


def test_partials(line_with_t):
    c = line_with_t
    x, y, t = c.var("x"), c.var("y"), c.var("t")
    assert (x * x * y).partial("x") == x * y * 2
    assert (x * x).partial("y") == c.zero()
    a = c.exp(-2) * x * t
    assert a.partial("t") == c.exp(-2) * (x - x * t * 2)


def test_reject_unknown_coordinate(plane):
    with pytest.raises(UnknownCoordinate):
        plane.var("z")


def test_mixing_charts(plane):
    other = Chart(base=("x1",))
    with pytest.raises(ChartMismatch):
        plane.var("x1") + other.var("x1")


def test_parse_error_reports_column(plane):
    with pytest.raises(ParseError) as err:
        parse_scalar("x1^-2 + 1", plane)
    assert err.value.column == 4


def test_format_roundtrip_with_exponentials(line_with_t):
    a = parse_scalar("exp(-2*t)*(x^2 - 3/4*t) + exp(t)*(y) + 5", line_with_t)
    assert parse_scalar(format_scalar(a), line_with_t) == a


def test_term_order_is_canonical(plane):
    x1, x2 = plane.vars()
    assert format_scalar(x2 + x1 * x1 + 1 + x1) == format_scalar(1 + x1 + x1 * x1 + x2)


def test_constant_value(plane):
    assert plane.const(Fraction(3, 4)).constant_value() == Fraction(3, 4)


_coeffs = st.fractions(min_value=-5, max_value=5, max_denominator=4)
_monomials = st.tuples(_coeffs, st.integers(0, 3), st.integers(0, 3), st.integers(-2, 2))


def _build(chart, terms):
    out = chart.zero()
    for c, i, j, k in terms:
        out = out + chart.const(c) * chart.var("x") ** i * chart.var("y") ** j * chart.exp(k)
    return out


@settings(max_examples=60, deadline=None)
@given(st.lists(_monomials, max_size=5), st.lists(_monomials, max_size=5))
def test_ring_laws_and_leibniz(a_terms, b_terms):
    chart = Chart(base=("x", "y"), aux=("t",), exp_coord="t")
    a, b = _build(chart, a_terms), _build(chart, b_terms)
    assert a * b == b * a
    assert (a + b) * a == a * a + b * a
    for c in chart.coords:
        assert (a * b).partial(c) == a.partial(c) * b + a * b.partial(c)
    assert parse_scalar(format_scalar(a), chart) == a
