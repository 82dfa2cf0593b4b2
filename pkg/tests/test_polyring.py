from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hilbstab.polyring import (
    EQUAL,
    GREATER,
    LESS,
    GREVLEX,
    LEX,
    Ideal,
    ParseError,
    Polynomial,
    Ring,
    TermOrder,
    compare,
    degree_basis,
    parse_ideal,
    parse_polynomial,
)

R = Ring(("x", "y", "z"))


def P(s, ring=R):
    return parse_polynomial(s, ring)


def test_parse_and_print_roundtrip():
    p = P("3x^2y - 1/2*y*z + 1")
    assert P(p.to_string()) == p
    assert p.coefficient((0, 1, 1)) == Fraction(-1, 2)


def test_juxtaposition_for_single_letters():
    S = Ring(tuple("ABEH"))
    assert parse_polynomial("2EH", S) == parse_polynomial("2*E*H", S)
    assert parse_polynomial("AE+AH", S) == parse_polynomial("A*(E+H)", S)


def test_parse_errors():
    with pytest.raises(ParseError):
        P("x +* y")
    with pytest.raises(ParseError):
        P("w")


def test_arithmetic():
    x, y = R.var("x"), R.var("y")
    assert (x + y) * (x - y) == x * x - y * y
    assert (x + y) ** 2 == P("x^2+2xy+y^2")
    assert (x - x).is_zero()


def test_grevlex_vs_lex():
    # x*z^2 vs y^3: grevlex prefers the one with smaller last exponent
    a, b = (1, 0, 2), (0, 3, 0)
    assert compare(TermOrder.default(3, GREVLEX), a, b) == (LESS, True)
    assert compare(TermOrder.default(3, LEX), a, b) == (GREATER, True)


def test_weight_decides_before_tiebreak():
    order = TermOrder((0, 0, 5))
    assert compare(order, (0, 0, 1), (1, 0, 0)) == (GREATER, False)
    assert compare(order, (1, 0, 0), (1, 0, 0)) == (EQUAL, False)


def test_compare_dimension_mismatch():
    with pytest.raises(ValueError):
        compare(TermOrder.default(3), (1, 0), (0, 1))


def test_degree_basis_size_and_order():
    basis = degree_basis(R, 2)
    assert len(basis) == 6
    assert basis[0] == (2, 0, 0)
    assert basis[-1] == (0, 0, 2)


def test_leading_term_uses_order():
    p = P("x*z^2 + y^3")
    assert p.leading(TermOrder.default(3, GREVLEX))[0] == (0, 3, 0)
    assert p.leading(TermOrder.default(3, LEX))[0] == (1, 0, 2)


def test_primitive_content():
    p = P("1/2*x - 3/4*y")
    assert p.primitive() == P("2x - 3y")


def test_parse_ideal_with_header():
    I = parse_ideal("# ring: a,b,c\n(ab - c^2, a^2)")
    assert I.ring.variable_names == ("a", "b", "c")
    assert len(I) == 2
    again = parse_ideal(I.to_text())
    assert again.generators == I.generators


def test_parse_ideal_infers_ring():
    I = parse_ideal("y^2 - x z")
    assert I.ring.variable_names == ("x", "y", "z")


def test_zero_generator_rejected():
    with pytest.raises(ValueError):
        Ideal(R, (R.zero(),))


coef = st.fractions(min_value=-5, max_value=5, max_denominator=4)
mono = st.tuples(*[st.integers(0, 3)] * 3)
polys = st.dictionaries(mono, coef, max_size=5).map(lambda d: Polynomial(R, d))


@settings(max_examples=60, deadline=None)
@given(polys, polys, polys)
def test_ring_axioms(a, b, c):
    assert a * (b + c) == a * b + a * c
    assert (a * b) * c == a * (b * c)
    assert a + b == b + a


@settings(max_examples=60, deadline=None)
@given(polys)
def test_string_roundtrip(p):
    assert P(p.to_string()) == p
