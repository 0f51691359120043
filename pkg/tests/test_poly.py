"""Exact-polynomial core: hand-computed oracles plus algebraic property tests."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from leibniz.poly import (
    Chart,
    ChartMismatchError,
    DegreeCapError,
    Poly,
    PolyParseError,
    embed,
    format_poly,
    get_degree_cap,
    grad,
    parse_poly,
    set_degree_cap,
)

C3 = Chart.standard(3)
D3 = Chart.standard(3, 3)  # x1..x3 plus xi1..xi3


def P(text, chart=C3):
    return parse_poly(chart, text)


# -- construction and canonical form -----------------------------------------


def test_zero_and_const():
    z = Poly.zero(C3)
    assert z.is_zero
    assert z.degree() == -1
    assert str(z) == "0"
    c = Poly.const(C3, Fraction(3, 4))
    assert c.degree() == 0
    assert c.constant_term() == Fraction(3, 4)


def test_var_and_str_order():
    p = P("x2 + x1^2 - 3*x3*x1")
    # descending graded-lex: x1^2, then -3*x1*x3, then x2
    assert str(p) == "x1^2 - 3*x1*x3 + x2"


def test_coefficient_lookup():
    p = P("5*x1^2*x2 - 1/2*x3")
    assert p.coefficient((2, 1, 0)) == 5
    assert p.coefficient((0, 0, 1)) == Fraction(-1, 2)
    assert p.coefficient((1, 1, 1)) == 0


def test_zero_coefficients_dropped():
    p = P("x1") - P("x1")
    assert p.is_zero
    assert list(p.terms()) == []


# -- arithmetic oracles (hand-expanded) ---------------------------------------


def test_product_difference_of_squares():
    assert P("x1 + x2") * P("x1 - x2") == P("x1^2 - x2^2")


def test_product_trinomial():
    lhs = P("x1 + x2 + x3") * P("x1 + x2 + x3")
    rhs = P("x1^2 + x2^2 + x3^2 + 2*x1*x2 + 2*x1*x3 + 2*x2*x3")
    assert lhs == rhs


def test_pow():
    assert P("x1 + 1") ** 3 == P("x1^3 + 3*x1^2 + 3*x1 + 1")
    assert P("x1") ** 0 == Poly.const(C3, 1)


def test_scalar_ops():
    p = P("x1 - x2")
    assert 2 * p == P("2*x1 - 2*x2")
    assert p * Fraction(1, 3) == P("1/3*x1 - 1/3*x2")
    assert p + 1 == P("x1 - x2 + 1")
    assert 1 - p == P("1 - x1 + x2")


def test_rational_coefficients_stay_exact():
    p = P("1/3*x1") * 3
    assert p == P("x1")
    q = P("0.1*x1") + P("0.2*x1")
    assert q == P("3/10*x1")  # no float drift


# -- differentiation -----------------------------------------------------------


def test_diff_monomial():
    p = P("x1^3*x2")
    assert p.diff("x1") == P("3*x1^2*x2")
    assert p.diff("x2") == P("x1^3")
    assert p.diff("x3").is_zero


def test_grad_order_matches_chart():
    p = parse_poly(D3, "x1*xi2")
    g = grad(p)
    assert len(g) == 6
    assert g[0] == parse_poly(D3, "xi2")
    assert g[4] == parse_poly(D3, "x1")
    assert all(g[i].is_zero for i in (1, 2, 3, 5))


# -- evaluation ----------------------------------------------------------------


def test_evaluate_exact_and_float():
    p = P("1/2*x1^2 - x2*x3")
    assert p.evaluate_exact([Fraction(2), Fraction(3), Fraction(5)]) == 2 - 15
    assert p.evaluate([2.0, 3.0, 5.0]) == pytest.approx(-13.0)


# -- parsing and formatting ----------------------------------------------------


def test_parse_round_trip():
    texts = ["x1^2 - 3*x1*x3 + x2", "-x1 - 1/2", "3/5*x1^2*xi3 - 2*x2 + 1/4"]
    for t in texts:
        p = parse_poly(D3, t)
        assert parse_poly(D3, format_poly(p)) == p


def test_parse_decimal_is_exact():
    assert P("0.6*x1") == P("3/5*x1")


def test_parse_implicit_one_coefficient():
    assert P("-x1") == -Poly.var(C3, "x1")


def test_parse_errors():
    with pytest.raises(PolyParseError):
        P("x1 + + x2")
    with pytest.raises(PolyParseError):
        P("y7")
    with pytest.raises(PolyParseError):
        P("x1^")
    with pytest.raises(PolyParseError):
        P("")


# -- chart handling ------------------------------------------------------------


def test_chart_mismatch_raises():
    a = Poly.var(C3, "x1")
    b = Poly.var(Chart.standard(2), "x1")
    with pytest.raises(ChartMismatchError):
        a + b
    with pytest.raises(ChartMismatchError):
        a * b


def test_embed_into_larger_chart():
    p = P("x1*x2 + 1")
    q = embed(p, D3)
    assert q.chart == D3
    assert q == parse_poly(D3, "x1*x2 + 1")
    with pytest.raises(ChartMismatchError):
        embed(parse_poly(D3, "xi1"), C3)


def test_fiber_degree():
    p = parse_poly(D3, "x1^5*xi1*xi2 + xi3")
    assert p.degree() == 7
    assert p.fiber_degree() == 2
    assert parse_poly(D3, "x1^4").fiber_degree() == 0


# -- degree cap ----------------------------------------------------------------


def test_degree_cap_enforced():
    cap = get_degree_cap()
    p = P("x1^8 + 1")
    with pytest.raises(DegreeCapError):
        p * p * p  # degree 24 > 16
    set_degree_cap(32)
    try:
        q = p * p * p
        assert q.degree() == 24
    finally:
        set_degree_cap(cap)


# -- property tests ------------------------------------------------------------

_coeffs = st.fractions(
    min_value=Fraction(-8), max_value=Fraction(8), max_denominator=6
)


@st.composite
def polys(draw, chart=C3, max_terms=4, max_deg=1):
    # per-variable exponent cap 1 keeps triple products inside the degree cap
    n = draw(st.integers(min_value=0, max_value=max_terms))
    p = Poly.zero(chart)
    for _ in range(n):
        expt = tuple(
            draw(st.integers(min_value=0, max_value=max_deg))
            for _ in range(chart.dim)
        )
        p = p + Poly(chart, {expt: draw(_coeffs)})
    return p


@settings(max_examples=120, deadline=None)
@given(polys(), polys(), polys())
def test_ring_axioms(p, q, r):
    assert p + q == q + p
    assert p * q == q * p
    assert (p + q) + r == p + (q + r)
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r


@settings(max_examples=120, deadline=None)
@given(polys(), polys())
def test_leibniz_rule_for_diff(p, q):
    for name in C3.base:
        lhs = (p * q).diff(name)
        rhs = p.diff(name) * q + p * q.diff(name)
        assert lhs == rhs


@settings(max_examples=100, deadline=None)
@given(
    polys(max_terms=3),
    polys(max_terms=3),
    st.lists(
        st.floats(min_value=-2.0, max_value=2.0, allow_nan=False),
        min_size=3,
        max_size=3,
    ),
)
def test_evaluate_is_ring_hom(p, q, point):
    lhs = (p * q).evaluate(point)
    rhs = p.evaluate(point) * q.evaluate(point)
    scale = max(1.0, abs(lhs), abs(rhs))
    assert abs(lhs - rhs) <= 1e-12 * scale


@settings(max_examples=100, deadline=None)
@given(polys())
def test_str_round_trip(p):
    assert parse_poly(C3, str(p)) == p
