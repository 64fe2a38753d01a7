"""
Spectrum of L_alpha on a Compact Heisenberg Quotient
====================================================

Two families of eigenvalues:

- type (a): u |n| (d + 2j - alpha sgn n), n != 0, j >= 0, u = pi / (2c),
  with multiplicity |n|^d L binom(j + d - 1, d - 1);
- type (b): (pi / 2) |xi|^2 for xi in the dual lattice Lambda'.

Eigenvalues are stored exactly as rationals in units of u: type (a) values
are |n| (d + 2j - alpha sgn n), type (b) values are c |xi|^2. Thresholds given
in absolute units are converted to units of u with the fixed rational
``PI_RATIONAL`` (the double nearest pi, read exactly), so every comparison
below is an exact rational comparison. Zero eigenvalues are never counted.
"""

import logging
import math
from collections import defaultdict
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import comb, isqrt
from numbers import Real
from typing import Dict, List, Optional, Tuple, Union

from src.config import NUMERICS
from src.spectra.errors import EnumerationBudgetExceeded, SpectralValidationError
from src.spectra.quotient import QuotientGeometry, dual_lattice, make_quotient, projected_lattice
from src.utils.rationals import RationalLike, format_rational, parse_rational

logger = logging.getLogger(__name__)

PI_RATIONAL = Fraction(math.pi)

Threshold = Union[int, float, Fraction]


# =============================================================================
# DOMAIN TYPES
# =============================================================================

class EigenvalueKind(str, Enum):
    TYPE_A = "a"
    TYPE_B = "b"
    MIXED = "a+b"  # merged record with sources of both types


@dataclass(frozen=True)
class SpectralParameter:
    """The parameter alpha of L_alpha, exact and restricted to [-d, d]."""

    alpha: Fraction
    d: int

    def __post_init__(self):
        try:
            alpha = parse_rational(self.alpha)
        except ValueError as exc:
            raise SpectralValidationError(f"alpha: {exc}") from exc
        if abs(alpha) > self.d:
            raise SpectralValidationError(
                f"alpha = {format_rational(alpha)} outside [-d, d] for d = {self.d}"
            )
        object.__setattr__(self, "alpha", alpha)

    def branch_offsets(self) -> Tuple[Tuple[int, Fraction], ...]:
        """(sgn n, d - alpha sgn n) for both signs of n."""
        return tuple((sign, self.d - self.alpha * sign) for sign in (1, -1))


@dataclass(frozen=True)
class SpectralUnit:
    """u = pi / (2c), exactly (under PI_RATIONAL) and as a float."""

    exact: Fraction
    value: float


@dataclass(frozen=True)
class TypeASource:
    n: int
    j: int
    multiplicity: int


@dataclass(frozen=True)
class TypeBSource:
    norm_sq: Fraction
    multiplicity: int  # number of dual-lattice points of this norm


Source = Union[TypeASource, TypeBSource]


@dataclass(frozen=True)
class EigenvalueRecord:
    """One spectral line after merging coincident eigenvalues."""

    kind: EigenvalueKind
    exact_value: Fraction  # units of u
    float_value: float  # absolute units
    sources: Tuple[Source, ...]
    multiplicity: int


@dataclass(frozen=True)
class SpectralCount:
    lam: float
    n_a: int
    n_b: int
    n_total: int
    normalized_ratio: float


# =============================================================================
# UNITS AND THRESHOLDS
# =============================================================================

def spectral_unit(q: QuotientGeometry) -> SpectralUnit:
    return SpectralUnit(exact=PI_RATIONAL / (2 * q.c), value=math.pi / (2 * float(q.c)))


def _exact_threshold(lam: Threshold) -> Fraction:
    if isinstance(lam, bool) or not isinstance(lam, Real):
        raise SpectralValidationError(f"lambda must be a real number, got {lam!r}")
    try:
        value = Fraction(lam)
    except (ValueError, OverflowError) as exc:
        raise SpectralValidationError(f"lambda must be finite, got {lam!r}") from exc
    if value <= 0:
        raise SpectralValidationError(f"lambda must be positive, got {lam!r}")
    return value


def threshold_in_units(q: QuotientGeometry, lam: Threshold) -> Fraction:
    """Exact lambda / u for a threshold lambda in absolute units."""
    return _exact_threshold(lam) * 2 * q.c / PI_RATIONAL


def _parameter(q: QuotientGeometry, alpha: RationalLike) -> SpectralParameter:
    if isinstance(alpha, SpectralParameter):
        return alpha
    return SpectralParameter(alpha=alpha, d=q.d)


# =============================================================================
# TYPE (A)
# =============================================================================

def type_a_eigenvalue(q: QuotientGeometry, alpha: RationalLike, n: int, j: int) -> Fraction:
    """|n| (d + 2j - alpha sgn n), in units of u."""
    param = _parameter(q, alpha)
    if n == 0:
        raise SpectralValidationError("n must be nonzero")
    if j < 0:
        raise SpectralValidationError(f"j must be nonnegative, got {j}")
    sign = 1 if n > 0 else -1
    return abs(n) * (q.d + 2 * j - param.alpha * sign)


def type_a_multiplicity(q: QuotientGeometry, n: int, j: int) -> int:
    """|n|^d L binom(j + d - 1, d - 1)."""
    if n == 0:
        raise SpectralValidationError("n must be nonzero")
    if j < 0:
        raise SpectralValidationError(f"j must be nonnegative, got {j}")
    return abs(n) ** q.d * q.L * comb(j + q.d - 1, q.d - 1)


def cumulative_multiplicity(d: int, J: int) -> int:
    """Sum of binom(j + d - 1, d - 1) over 0 <= j <= J, i.e. binom(J + d, d)."""
    if d < 1:
        raise SpectralValidationError(f"d must be a positive integer, got {d}")
    if J < 0:
        return 0
    return comb(J + d, d)


def _type_a_n_max(param: SpectralParameter, units: Fraction) -> int:
    # smallest positive eigenvalue per unit |n|: the j = 0 offset, or 2 when it vanishes
    smallest = min(offset if offset > 0 else Fraction(2) for _, offset in param.branch_offsets())
    return math.floor(units / smallest)


def count_type_a(q: QuotientGeometry, alpha: RationalLike, lam: Threshold) -> int:
    """
    N_a(lambda): positive type (a) eigenvalues <= lambda, with multiplicity.

    For each n >= 1 and each sign of n the admissible j form a range 0..J, and
    the hockey-stick identity sums their multiplicities to L n^d binom(J + d, d).
    The j = 0 zero mode of a vanishing offset (alpha = +-d) is dropped.
    """
    param = _parameter(q, alpha)
    units = threshold_in_units(q, lam)
    P, Q = units.numerator, units.denominator
    d, L = q.d, q.L
    branches = [(v.numerator, v.denominator, v == 0) for _, v in param.branch_offsets()]

    n_max = _type_a_n_max(param, units)
    total = 0
    for n in range(1, n_max + 1):
        weight = L * n ** d
        for vn, vd, zero_mode in branches:
            # n (v + 2j) <= P/Q  <=>  j <= (P vd - Q n vn) / (2 Q n vd)
            J = (P * vd - Q * n * vn) // (2 * Q * n * vd)
            if J < 0:
                continue
            total += weight * (comb(J + d, d) - (1 if zero_mode else 0))
    logger.debug("N_a: d=%d alpha=%s lambda/u=%.6g shells=%d -> %d",
                 d, param.alpha, float(units), n_max, total)
    return total


def count_type_a_direct(q: QuotientGeometry, alpha: RationalLike, lam: Threshold) -> int:
    """Double loop over (n, j) with per-term multiplicity; the oracle for count_type_a."""
    param = _parameter(q, alpha)
    units = threshold_in_units(q, lam)
    n_max = _type_a_n_max(param, units)
    total = 0
    for n in range(-n_max, n_max + 1):
        if n == 0:
            continue
        j = 0
        while True:
            value = type_a_eigenvalue(q, param, n, j)
            if value > units:
                break
            if value > 0:
                total += type_a_multiplicity(q, n, j)
            j += 1
    return total


# =============================================================================
# TYPE (B)
# =============================================================================

def _type_b_weights(q: QuotientGeometry) -> Tuple[List[int], int]:
    """Integer weights w_k and denominator D with |xi|^2 = sum w_k m_k^2 / D."""
    squares = [v * v for v in dual_lattice(projected_lattice(q)).diag]
    denom = math.lcm(*(s.denominator for s in squares))
    weights = sorted((int(s * denom) for s in squares), reverse=True)
    return weights, denom


def _type_b_bound(q: QuotientGeometry, units: Fraction, denom: int) -> int:
    # c |xi|^2 <= units  <=>  sum w_k m_k^2 <= units D / c
    return math.floor(units * denom / q.c)


class _EllipsoidCounter:
    """
    Integer points with sum w_k m_k^2 <= bound, by nested coordinate ranges.

    Sub-counts are memoized on (remaining bound, coordinate); ``work`` is the
    number of coordinate values scanned and is held under the budget.
    """

    def __init__(self, weights: List[int], budget: int):
        self.weights = weights
        self.budget = budget
        self.work = 0
        self._memo: Dict[Tuple[int, int], int] = {}

    def count(self, bound: int, level: int = 0) -> int:
        weight = self.weights[level]
        m_max = isqrt(bound // weight)
        if level == len(self.weights) - 1:
            return 2 * m_max + 1
        key = (bound, level)
        cached = self._memo.get(key)
        if cached is not None:
            return cached
        self.work += m_max + 1
        if self.work > self.budget:
            raise EnumerationBudgetExceeded(self.budget, "type (b) lattice-point count", self.work)
        result = self.count(bound, level + 1)
        for m in range(1, m_max + 1):
            result += 2 * self.count(bound - weight * m * m, level + 1)
        self._memo[key] = result
        return result


def count_type_b(q: QuotientGeometry, lam: Threshold, budget: Optional[int] = None) -> int:
    """
    N_b(lambda) = #{xi in Lambda' : 0 < (pi/2)|xi|^2 <= lambda}.

    Raises
    ------
    EnumerationBudgetExceeded
        When the nested range scan needs more than ``budget`` steps.
    """
    budget = NUMERICS.enumeration_budget if budget is None else budget
    units = threshold_in_units(q, lam)
    weights, denom = _type_b_weights(q)
    bound = _type_b_bound(q, units, denom)
    counter = _EllipsoidCounter(weights, budget)
    total = counter.count(bound) - 1  # xi = 0
    logger.debug("N_b: bound=%d weights=%s work=%d -> %d", bound, weights, counter.work, total)
    return total


def _norm_histogram(weights: List[int], bound: int, budget: int) -> Dict[int, int]:
    """{sum w_k m_k^2 : number of integer points} for all sums <= bound."""
    histogram: Dict[int, int] = {0: 1}
    work = 0
    for weight in weights:
        extended: Dict[int, int] = defaultdict(int)
        for partial, count in histogram.items():
            m_max = isqrt((bound - partial) // weight)
            work += 2 * m_max + 1
            if work > budget:
                raise EnumerationBudgetExceeded(budget, "type (b) enumeration", work)
            extended[partial] += count
            for m in range(1, m_max + 1):
                extended[partial + weight * m * m] += 2 * count
        histogram = extended
    return histogram


# =============================================================================
# COUNTS AND ENUMERATION
# =============================================================================

def count_total(q: QuotientGeometry, alpha: RationalLike, lam: Threshold,
                budget: Optional[int] = None) -> SpectralCount:
    """N(lambda) = N_a + N_b together with N / lambda^(d+1)."""
    n_a = count_type_a(q, alpha, lam)
    n_b = count_type_b(q, lam, budget)
    n_total = n_a + n_b
    return SpectralCount(
        lam=float(lam),
        n_a=n_a,
        n_b=n_b,
        n_total=n_total,
        normalized_ratio=n_total / float(lam) ** (q.d + 1),
    )


def _record_kind(sources: List[Source]) -> EigenvalueKind:
    has_a = any(isinstance(s, TypeASource) for s in sources)
    has_b = any(isinstance(s, TypeBSource) for s in sources)
    if has_a and has_b:
        return EigenvalueKind.MIXED
    return EigenvalueKind.TYPE_A if has_a else EigenvalueKind.TYPE_B


def _source_order(source: Source):
    if isinstance(source, TypeASource):
        return (0, abs(source.n), -source.n, source.j)
    return (1, source.norm_sq, 0, 0)


def enumerate_spectrum(q: QuotientGeometry, alpha: RationalLike, lam_max: Threshold,
                       budget: Optional[int] = None,
                       include_type_b: bool = True) -> List[EigenvalueRecord]:
    """
    Every positive eigenvalue <= lam_max, merged and sorted.

    Coincident eigenvalues (equal exact values, from any mix of (n, j) pairs
    and dual-lattice norms) become one record whose multiplicity is the sum of
    the source multiplicities.

    Raises
    ------
    EnumerationBudgetExceeded
        When more than ``budget`` (n, j) pairs and partial norms are visited.
    """
    budget = NUMERICS.enumeration_budget if budget is None else budget
    param = _parameter(q, alpha)
    units = threshold_in_units(q, lam_max)
    d, L = q.d, q.L
    lines: Dict[Fraction, List[Source]] = defaultdict(list)

    work = 0
    for n in range(1, _type_a_n_max(param, units) + 1):
        for sign, offset in param.branch_offsets():
            j = 1 if offset == 0 else 0
            while True:
                value = n * (offset + 2 * j)
                if value > units:
                    break
                work += 1
                if work > budget:
                    raise EnumerationBudgetExceeded(budget, "type (a) enumeration", work)
                lines[value].append(TypeASource(sign * n, j, L * n ** d * comb(j + d - 1, d - 1)))
                j += 1

    if include_type_b:
        weights, denom = _type_b_weights(q)
        bound = _type_b_bound(q, units, denom)
        for norm, points in _norm_histogram(weights, bound, budget - work).items():
            if norm == 0:
                continue
            norm_sq = Fraction(norm, denom)
            lines[q.c * norm_sq].append(TypeBSource(norm_sq, points))

    unit = spectral_unit(q)
    records = []
    for value in sorted(lines):
        sources = sorted(lines[value], key=_source_order)
        records.append(EigenvalueRecord(
            kind=_record_kind(sources),
            exact_value=value,
            float_value=float(value) * unit.value,
            sources=tuple(sources),
            multiplicity=sum(s.multiplicity for s in sources),
        ))
    logger.debug("enumerated %d lines up to lambda/u=%.6g", len(records), float(units))
    return records


def dilate(q: QuotientGeometry, r: RationalLike) -> QuotientGeometry:
    """Image of q under (z, t) -> (rz, r^2 t): c -> r^2 c, Lambda -> r Lambda."""
    try:
        factor = parse_rational(r)
    except ValueError as exc:
        raise SpectralValidationError(f"r: {exc}") from exc
    if factor <= 0:
        raise SpectralValidationError(f"r must be positive, got {format_rational(factor)}")
    return make_quotient(q.d, q.ell, q.c * factor ** 2, q.scale * factor)
