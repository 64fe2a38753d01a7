"""
Kohn Laplacian on (p,q)-Forms
=============================

Box_b acts on (p,q)-forms diagonally as L_{d-2q} on each coefficient, and
there are binom(d,p) binom(d,q) coefficients, so every scalar count and
every Weyl target for L_{d-2q} is multiplied by that factor.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import List, Optional, Sequence

from src.spectra.errors import SpectralValidationError
from src.spectra.heat import HeatTracePoint, heat_trace
from src.spectra.quotient import QuotientGeometry
from src.spectra.spectrum import SpectralCount, Threshold, count_total
from src.spectra.weyl import ConvergenceRow, check_lambda_grid, convergence_rows, weyl_constant

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FormDegree:
    """Bidegree (p, q) with 0 <= p <= d and 0 < q < d; needs d >= 2."""

    d: int
    p: int
    q: int

    def __post_init__(self):
        if isinstance(self.d, bool) or not isinstance(self.d, int) or self.d < 2:
            raise SpectralValidationError(f"(p,q)-forms need d >= 2, got d = {self.d!r}")
        if not 0 <= self.p <= self.d:
            raise SpectralValidationError(f"p = {self.p} outside [0, {self.d}]")
        if not 0 < self.q < self.d:
            raise SpectralValidationError(f"q = {self.q} outside (0, {self.d})")


def form_multiplicity(deg: FormDegree) -> int:
    return comb(deg.d, deg.p) * comb(deg.d, deg.q)


def box_b_alpha(deg: FormDegree) -> Fraction:
    """The alpha = d - 2q of the scalar operator acting on each coefficient."""
    return Fraction(deg.d - 2 * deg.q)


def _check_matches(geometry: QuotientGeometry, deg: FormDegree):
    if geometry.d != deg.d:
        raise SpectralValidationError(f"form degree is for d = {deg.d}, quotient has d = {geometry.d}")


def box_b_count(geometry: QuotientGeometry, deg: FormDegree, lam: Threshold,
                budget: Optional[int] = None) -> SpectralCount:
    _check_matches(geometry, deg)
    factor = form_multiplicity(deg)
    scalar = count_total(geometry, box_b_alpha(deg), lam, budget)
    return SpectralCount(
        lam=scalar.lam,
        n_a=factor * scalar.n_a,
        n_b=factor * scalar.n_b,
        n_total=factor * scalar.n_total,
        normalized_ratio=factor * scalar.normalized_ratio,
    )


def box_b_weyl_target(d: int, deg: FormDegree, volume, tol: Optional[float] = None) -> float:
    """binom(d,p) binom(d,q) C_{d,d-2q} vol; |d - 2q| < d, so always the interior constant."""
    if d != deg.d:
        raise SpectralValidationError(f"form degree is for d = {deg.d}, got d = {d}")
    return form_multiplicity(deg) * weyl_constant(d, box_b_alpha(deg), tol).value * float(volume)


def box_b_heat_trace(geometry: QuotientGeometry, deg: FormDegree, t: float,
                     tol: Optional[float] = None) -> HeatTracePoint:
    """Type (a) heat trace of box_b on (p,q)-forms."""
    _check_matches(geometry, deg)
    factor = form_multiplicity(deg)
    scalar = heat_trace(geometry, box_b_alpha(deg), t, tol)
    return HeatTracePoint(
        t=scalar.t,
        g=factor * scalar.g,
        scaled=factor * scalar.scaled,
        truncation_bound=factor * scalar.truncation_bound,
        terms=scalar.terms,
    )


def box_b_convergence_report(geometry: QuotientGeometry, deg: FormDegree,
                             lambda_values: Sequence[float],
                             tol: Optional[float] = None,
                             budget: Optional[int] = None) -> List[ConvergenceRow]:
    check_lambda_grid(lambda_values)
    target = box_b_weyl_target(geometry.d, deg, geometry.volume, tol)
    counts = [box_b_count(geometry, deg, lam, budget) for lam in lambda_values]
    rows = convergence_rows(counts, target)
    logger.info("box_b (p,q)=(%d,%d): final rel_error %+.3e", deg.p, deg.q, rows[-1].rel_error)
    return rows
