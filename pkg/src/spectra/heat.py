"""
Type (a) Heat Trace
===================

Closed forms for G(t) = sum over the type (a) spectrum of e^{-lambda t}:

    |alpha| < d:  G = L sum_n n^d [e^{-tun(d+alpha)} + e^{-tun(d-alpha)}] / (1 - e^{-2tun})^d,
                  u = pi / (2c)
    |alpha| = d:  G = L sum_n n^d e^{-tund} / (1 - e^{-tun})^d
                    + L sum_n n^d [1 / (1 - e^{-tun})^d - 1],
                  u = pi / c (zero modes excluded)

The n-series is summed in fixed-size numpy chunks in increasing n. Summation
stops once the term ratio bound (1 + 1/n)^d e^{-decay} is below one and the
last term is below ``tol`` times the partial sum; the dropped tail is then
bounded by a geometric series with that ratio. The ratio bound alone fixes a
minimum series length of about d / decay terms, so inputs that cannot finish
under the term cap are rejected before any summation. Every term is
evaluated in the log domain so small t does not overflow.
"""

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Real
from typing import Iterable, List, Optional, Sequence, Union

import numpy as np

from src.config import NUMERICS
from src.spectra.errors import EnumerationBudgetExceeded, SpectralValidationError
from src.spectra.quotient import QuotientGeometry
from src.spectra.spectrum import EigenvalueRecord
from src.utils.rationals import parse_rational

logger = logging.getLogger(__name__)

RealLike = Union[int, float, Fraction, str]


@dataclass(frozen=True)
class HeatTracePoint:
    t: float
    g: float
    scaled: float  # t^(d+1) g
    truncation_bound: float
    terms: int


def real_alpha(d: int, alpha: RealLike) -> float:
    """alpha as a float in [-d, d]; "num/den" strings are accepted."""
    if isinstance(alpha, str):
        try:
            alpha = parse_rational(alpha)
        except ValueError as exc:
            raise SpectralValidationError(f"alpha: {exc}") from exc
    if isinstance(alpha, bool) or not isinstance(alpha, Real):
        raise SpectralValidationError(f"alpha must be real, got {alpha!r}")
    value = float(alpha)
    if not math.isfinite(value) or abs(value) > d:
        raise SpectralValidationError(f"alpha = {alpha} outside [-d, d] for d = {d}")
    return value


def _log1mexp(x: np.ndarray) -> np.ndarray:
    """log(1 - e^{-x}) for x > 0."""
    small = x < math.log(2.0)
    return np.where(
        small,
        np.log(-np.expm1(-np.where(small, x, 1.0))),
        np.log1p(-np.exp(-np.where(small, 1.0, x))),
    )


def _interior_terms(n: np.ndarray, d: int, y: np.ndarray, alpha: float) -> np.ndarray:
    # y = t u n
    log_base = d * np.log(n) - d * _log1mexp(2.0 * y)
    return np.exp(log_base - y * (d + alpha)) + np.exp(log_base - y * (d - alpha))


def _boundary_terms(n: np.ndarray, d: int, y: np.ndarray) -> np.ndarray:
    log_denominator = d * _log1mexp(y)
    minus = np.exp(d * np.log(n) - y * d - log_denominator)
    plus = n ** d * np.expm1(-log_denominator)
    return minus + plus


def heat_trace(q: QuotientGeometry, alpha: RealLike, t: float,
               tol: Optional[float] = None,
               max_terms: Optional[int] = None) -> HeatTracePoint:
    """
    G(t) for L_alpha on q, type (a) spectrum only.

    Parameters
    ----------
    q : QuotientGeometry
    alpha : real in [-d, d]
    t : float
        Must be at least ``NUMERICS.min_heat_t``.
    tol : float, optional
        Relative truncation tolerance (default ``NUMERICS.heat_tol``).
    max_terms : int, optional
        Series length cap (default ``NUMERICS.max_heat_terms``).

    Returns
    -------
    HeatTracePoint
        ``truncation_bound`` bounds the dropped tail, multiplicity L included.

    Raises
    ------
    SpectralValidationError
        For t below the minimum, |alpha| > d or a nonpositive tol.
    EnumerationBudgetExceeded
        When the series needs more than ``max_terms`` terms; raised up front
        when the minimum length already exceeds it.
    """
    tol = NUMERICS.heat_tol if tol is None else tol
    max_terms = NUMERICS.max_heat_terms if max_terms is None else max_terms
    d = q.d
    a = real_alpha(d, alpha)
    if isinstance(t, bool) or not isinstance(t, Real) or not math.isfinite(t) or t <= 0:
        raise SpectralValidationError(f"t must be positive, got {t!r}")
    if t < NUMERICS.min_heat_t:
        raise SpectralValidationError(f"t = {t:g} below the minimum {NUMERICS.min_heat_t:g}")
    if not tol > 0:
        raise SpectralValidationError(f"tol must be positive, got {tol}")
    t = float(t)

    boundary = abs(a) == d
    if boundary:
        u = math.pi / float(q.c)
        decay = t * u
    else:
        u = math.pi / (2 * float(q.c))
        decay = t * u * (d - abs(a))

    # (1 + 1/n)^d e^{-decay} < 1 needs n > 1 / expm1(decay / d)
    min_terms = math.floor(1.0 / math.expm1(decay / d)) + 1
    if min_terms > max_terms:
        raise EnumerationBudgetExceeded(max_terms, "heat series", min_terms)

    chunk = NUMERICS.heat_chunk
    total = 0.0
    tail = math.inf
    start = 1
    while True:
        if start > max_terms:
            raise EnumerationBudgetExceeded(max_terms, "heat series", start - 1)
        stop = min(start + chunk, max_terms + 1)
        n = np.arange(start, stop, dtype=float)
        y = t * u * n
        terms = _boundary_terms(n, d, y) if boundary else _interior_terms(n, d, y, a)
        total += float(np.sum(terms))
        last = stop - 1
        ratio = (1.0 + 1.0 / last) ** d * math.exp(-decay)
        if ratio < 1.0 and terms[-1] < tol * total:
            tail = float(terms[-1]) * ratio / (1.0 - ratio)
            break
        start = stop

    g = q.L * total
    logger.debug("G(%g): d=%d alpha=%g terms=%d tail=%.3e", t, d, a, last, tail)
    return HeatTracePoint(
        t=t,
        g=g,
        scaled=t ** (d + 1) * g,
        truncation_bound=q.L * tail,
        terms=last,
    )


def scaled_trace_sequence(q: QuotientGeometry, alpha: RealLike, t_values: Sequence[float],
                          tol: Optional[float] = None) -> List[HeatTracePoint]:
    """heat_trace at each t, in input order; inspect ``scaled`` as t decreases."""
    if len(t_values) == 0:
        raise SpectralValidationError("t grid is empty")
    return [heat_trace(q, alpha, t, tol) for t in t_values]


def spectral_sum(records: Iterable[EigenvalueRecord], t: float) -> float:
    """Sum of multiplicity * e^{-lambda t} over enumerated records."""
    return math.fsum(record.multiplicity * math.exp(-record.float_value * t) for record in records)
