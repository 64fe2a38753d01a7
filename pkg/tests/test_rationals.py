from fractions import Fraction

import pytest

from src.utils.rationals import (
    format_float,
    format_rational,
    parse_decades,
    parse_int_list,
    parse_rational,
    parse_real_list,
)


@pytest.mark.parametrize(("text", "expected"), [
    ("3/4", Fraction(3, 4)),
    (" 2 ", Fraction(2)),
    ("0.5", Fraction(1, 2)),
    ("-1/3", Fraction(-1, 3)),
    (7, Fraction(7)),
    (Fraction(5, 6), Fraction(5, 6)),
])
def test_parse_rational(text, expected):
    assert parse_rational(text) == expected


@pytest.mark.parametrize("value", [0.5, True, "one", "1/0", None])
def test_parse_rational_rejects(value):
    with pytest.raises(ValueError):
        parse_rational(value)


def test_format_rational_always_writes_denominator():
    assert format_rational(Fraction(4, 2)) == "2/1"
    assert format_rational(Fraction(-6, 4)) == "-3/2"


def test_lists():
    assert parse_int_list("1,2,4") == (1, 2, 4)
    assert parse_real_list("1e-3, 1e-4") == [1e-3, 1e-4]
    with pytest.raises(ValueError):
        parse_int_list("1,x")
    with pytest.raises(ValueError):
        parse_real_list("1e-3;1e-4")


def test_decades():
    assert parse_decades("2:5") == [100.0, 1000.0, 10000.0, 100000.0]
    assert parse_decades("-1:0") == [0.1, 1.0]
    for bad in ("3:3", "5:2", "2", "a:b"):
        with pytest.raises(ValueError):
            parse_decades(bad)


def test_format_float_round_trips():
    for value in (0.1, 1 / 3, 2.356194490192345, 1e-300):
        assert float(format_float(value)) == value
