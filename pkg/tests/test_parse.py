from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from heisacf.errors import ParseError
from heisacf.parse import PolyExpr, format_poly, parse
from heisacf.poly import ZERO, Poly3, T, X, Y


def test_counterexample():
    assert parse("x - 3*y*t - 2*x^3") == Poly3({(1, 0, 0): 1, (0, 1, 1): -3, (3, 0, 0): -2})


def test_basic_forms():
    assert parse("0") == ZERO
    assert parse("(x+y)^2") == X * X + 2 * X * Y + Y * Y
    assert parse("-x^2") == -(X * X)
    assert parse("--x") == X
    assert parse("1/2*t") == T * Fraction(1, 2)
    assert parse("3x") == 3 * X
    assert parse("1/2t^2") == T * T * Fraction(1, 2)
    assert parse("2^3") == Poly3.constant(8)
    assert parse("  x  *  y ") == X * Y
    assert parse("x - (y - t)") == X - Y + T


def test_format_examples():
    assert format_poly(Poly3({(1, 0, 0): 1, (0, 1, 1): -3, (3, 0, 0): -2})) == "-2*x^3 - 3*y*t + x"
    assert format_poly(ZERO) == "0"
    assert format_poly(Poly3({(0, 0, 1): Fraction(1, 2)})) == "1/2*t"
    assert format_poly(Poly3.constant(-3)) == "-3"
    assert format_poly(-X + 1) == "-x + 1"


def test_polyexpr():
    e = PolyExpr.from_source("x + 1")
    assert e.poly == X + 1 and e.source == "x + 1"


@pytest.mark.parametrize(
    "src, offset",
    [
        ("3yt", 2),
        ("3 y", 2),
        ("x +", 3),
        ("x ** 2", 3),
        ("x^y", 2),
        ("x^1/2", 2),
        ("(x", 2),
        ("x)", 1),
        ("x @ y", 2),
        ("1.5*x", 1),
        ("x^2^2", 3),
        ("3x^2^2", 4),
        ("2/", 2),
    ],
)
def test_syntax_error_offsets(src, offset):
    with pytest.raises(ParseError) as ei:
        parse(src)
    assert ei.value.offset == offset
    assert ei.value.expected


def test_error_offsets_are_utf8_bytes():
    with pytest.raises(ParseError) as ei:
        parse("x + @")
    assert ei.value.offset == 5
    with pytest.raises(ParseError) as ei:
        parse("x*(y+ü)")
    assert ei.value.offset == 5


def test_empty_and_zero_denominator():
    with pytest.raises(ParseError):
        parse("")
    with pytest.raises(ParseError):
        parse("   ")
    with pytest.raises(ParseError):
        parse("1/0*x")


def test_degree_overflow():
    with pytest.raises(ParseError):
        parse("x^9")
    with pytest.raises(ParseError):
        parse("t^5")
    with pytest.raises(ParseError):
        parse("(x+t)^5")
    assert parse("t^4") == T**4
    assert parse("x^9", max_degree=9) == X**9


def test_expected_set_contents():
    with pytest.raises(ParseError) as ei:
        parse("x +")
    assert "'x'" in ei.value.expected and "number" in ei.value.expected


exponents = st.tuples(st.integers(0, 4), st.integers(0, 4), st.integers(0, 2)).filter(
    lambda e: e[0] + e[1] + 2 * e[2] <= 8
)
coeffs = st.fractions(min_value=-1000, max_value=1000, max_denominator=50).filter(lambda c: c != 0)
polys = st.dictionaries(exponents, coeffs, max_size=8).map(Poly3)


@settings(max_examples=500, deadline=None)
@given(polys)
def test_round_trip(p):
    assert parse(format_poly(p)) == p


VALID = ["x - 3*y*t - 2*x^3", "(x+y)^2 - 1/2*t", "-(x*y)^3 + 4x", "3*t^2 - y"]


@settings(max_examples=200, deadline=None)
@given(st.sampled_from(VALID).flatmap(lambda s: st.tuples(st.just(s), st.integers(1, len(s)))),
       st.sampled_from(["@", "^^", "**", "#x", "$"]))
def test_error_offset_inside_appended_garbage(case, garbage):
    src, cut = case
    prefix = src[:cut]
    with pytest.raises(ParseError) as ei:
        parse(prefix + garbage)
    assert ei.value.offset >= len(prefix.encode("utf-8"))
