"""Utility functions for the Heisenberg spectra pipeline."""

from .rationals import (
    RationalLike,
    parse_rational,
    format_rational,
    parse_int_list,
    parse_real_list,
    parse_decades,
    format_float,
)

__all__ = [
    "RationalLike",
    "parse_rational",
    "format_rational",
    "parse_int_list",
    "parse_real_list",
    "parse_decades",
    "format_float",
]
