"""
Exact Value Parsing for the Heisenberg Spectra Pipeline
=======================================================

Rationals travel as "num/den" strings (bare integers allowed) so that the
center parameter c and the parameter alpha never pass through a float.
"""

from fractions import Fraction
from numbers import Rational
from typing import List, Tuple, Union

RationalLike = Union[int, Fraction, str]


def parse_rational(value: RationalLike) -> Fraction:
    """
    Parse an exact rational.

    Parameters
    ----------
    value : int, Fraction or str
        "num/den", an integer, or a terminating decimal string such as "0.5".

    Returns
    -------
    Fraction

    Raises
    ------
    ValueError
        For floats (inexact by construction), booleans and unparseable text.
    """
    if isinstance(value, bool):
        raise ValueError(f"not a rational: {value!r}")
    if isinstance(value, Rational):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"not a rational: {value!r}") from exc
    raise ValueError(f"expected an exact rational ('num/den' or integer), got {value!r}")


def format_rational(value: Fraction) -> str:
    """Format as "num/den" (denominator always written)."""
    value = Fraction(value)
    return f"{value.numerator}/{value.denominator}"


def parse_int_list(text: str) -> Tuple[int, ...]:
    """Parse a comma list of integers, e.g. "1,2,4"."""
    try:
        return tuple(int(part) for part in text.split(",") if part.strip())
    except ValueError as exc:
        raise ValueError(f"expected a comma list of integers, got {text!r}") from exc


def parse_real_list(text: str) -> List[float]:
    """Parse a comma list of reals, e.g. "1e-3,1e-4"."""
    try:
        return [float(part) for part in text.split(",") if part.strip()]
    except ValueError as exc:
        raise ValueError(f"expected a comma list of numbers, got {text!r}") from exc


def parse_decades(text: str) -> List[float]:
    """
    Expand "a:b" into the thresholds 10^a, 10^(a+1), ..., 10^b.

    Raises
    ------
    ValueError
        Unless a and b are integers with a < b.
    """
    try:
        low, high = (int(part) for part in text.split(":"))
    except ValueError as exc:
        raise ValueError(f"expected decades as 'a:b', got {text!r}") from exc
    if low >= high:
        raise ValueError(f"decades need a < b, got {text!r}")
    return [float(10 ** k) if k >= 0 else 10.0 ** k for k in range(low, high + 1)]


def format_float(value: float) -> str:
    """Shortest round-trip text for a float (at most 17 significant digits)."""
    return repr(float(value))
