import random
import warnings
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from infdr.core import Poly, X, Y, V
from infdr.derham import DForm, random_form
from infdr.infinitesimal import normal_form
from infdr.parsing import ParseError, RepeatedIndexWarning, parse_form, parse_poly
from infdr import sampling


def test_poly_examples():
    assert parse_poly("x1**2 - 1", 1) == X(1) ** 2 - 1
    # parsing does not normalize
    assert parse_poly("y1_2*y2_1", 2, 2) == Y(1, 2) * Y(2, 1)
    assert parse_poly(" 3 / 2 * x1 ", 1) == Fraction(3, 2) * X(1)
    assert parse_poly("-(x1 - 2)**2", 1) == -(X(1) - 2) ** 2
    assert parse_poly("v2_1 - v1_1", 1, 1, "vertex") == V(2, 1) - V(1, 1)


@pytest.mark.parametrize(
    "text,offset",
    [
        ("x1 + + 2", 5),
        ("x1 *", 4),
        ("(x1", 3),
        ("x1^2", 2),
        ("x1 ** 1/2", 6),
        ("x1 @ 2", 3),
        ("x1 x1", 3),
    ],
)
def test_syntax_errors_carry_position(text, offset):
    with pytest.raises(ParseError) as err:
        parse_poly(text, 1)
    assert err.value.position == offset


def test_range_and_kind_errors():
    with pytest.raises(ParseError):
        parse_poly("x3", 2)
    with pytest.raises(ParseError):
        parse_poly("y3_1", 1, 2)
    with pytest.raises(ParseError):
        parse_poly("v1_1", 1, 1, "difference")
    with pytest.raises(ParseError):
        parse_poly("x1", 1, 1, "vertex")
    with pytest.raises(ParseError):
        parse_poly("1/0", 1)


def test_form_examples():
    assert parse_form("(x2) dx1", 2) == DForm(2, 1, {(1,): X(2)})
    assert parse_form("(1) dx2^dx1", 2) == DForm(2, 2, {(1, 2): -1})
    with pytest.warns(RepeatedIndexWarning):
        assert parse_form("(1) dx1^dx1", 2).is_zero()
    assert parse_form("(x1 + 1)", 2) == DForm(2, 0, {(): X(1) + 1})
    assert parse_form("0", 3, 2) == DForm(3, 2)
    assert parse_form("(1) dx1 - (x1) dx2", 2) == DForm(2, 1, {(1,): 1, (2,): -X(1)})


def test_form_errors():
    with pytest.raises(ParseError):
        parse_form("(1) dx1 + (1) dx1^dx2", 2)
    with pytest.raises(ParseError):
        parse_form("(1) dx3", 2)
    with pytest.raises(ParseError):
        parse_form("(y1_1) dx1", 2)
    with pytest.raises(ParseError):
        parse_form("(1) dx1^", 2)


def test_roundtrip_random_objects():
    rng = random.Random(31)
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        for _ in range(200):
            n, m = rng.randint(1, 3), rng.randint(0, 3)
            p = sampling.raw_inf_poly(rng, n, m, 3)
            assert parse_poly(str(p), n, m) == p
            e = sampling.inf_element(rng, n, m, 2)
            assert normal_form(parse_poly(str(e), n, m), n, m) == e
            k = rng.randint(0, n)
            omega = random_form(rng, n, k, 2)
            assert parse_form(str(omega), n, k) == omega


coeffs = st.fractions(min_value=-20, max_value=20, max_denominator=7)


@settings(max_examples=100, deadline=None)
@given(st.lists(st.tuples(coeffs, st.integers(0, 3), st.integers(0, 3), st.booleans()), max_size=6))
def test_roundtrip_hypothesis(terms):
    p = Poly()
    for c, a, b, y in terms:
        p = p + c * X(1) ** a * X(2) ** b * (Y(1, 2) if y else 1)
    assert parse_poly(str(p), 2, 1) == p
