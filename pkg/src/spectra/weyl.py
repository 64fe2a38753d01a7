"""
Weyl Constants and Convergence Reports
======================================

C_{d,alpha} is the limit of N(lambda) / (vol(M) lambda^(d+1)):

    |alpha| < d:  C = 2 / (pi^(d+1) (d+1)!) * I(d, alpha)
    |alpha| = d:  C = 2d / ((d+1) pi^(d+1) (d+1)!) * I(d+1, d-1)

with I(p, a) = integral over R of (x / sinh x)^p e^{-a x} dx, which needs
|a| < p. After symmetrization the integrand is (x / sinh x)^p cosh(a x) on
[0, inf). The integral is split at a point X where the analytic bound

    (x / sinh x)^p cosh(a x) <= kappa^p x^p e^{-(p - |a|) x},   x >= 1,
    kappa = 2 / (1 - e^{-2})

puts the integrand below the configured cutoff; [0, X] is integrated with
composite Gauss-Legendre, doubling the panel count until two levels agree,
and the tail beyond X is bounded by an incomplete gamma function.
"""

import logging
import math
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np
from numpy.polynomial.legendre import leggauss
from scipy.special import gamma, gammaincc

from src.config import NUMERICS
from src.spectra.errors import QuadratureError, SpectralValidationError
from src.spectra.heat import RealLike, real_alpha
from src.spectra.quotient import DiagonalLattice, QuotientGeometry
from src.spectra.spectrum import count_total

logger = logging.getLogger(__name__)

KAPPA = 2.0 / (1.0 - math.exp(-2.0))
SERIES_CUTOFF = 1e-4
PANEL_BLOCK = 4096


@dataclass(frozen=True)
class WeylConstant:
    d: int
    alpha: float
    value: float
    quadrature_error: float
    boundary: bool = False


@dataclass(frozen=True)
class ConvergenceRow:
    lam: float
    n_a: int
    n_b: int
    n_total: int
    ratio: float
    target: float
    rel_error: float


# =============================================================================
# QUADRATURE
# =============================================================================

def _log_x_over_sinh(x: np.ndarray) -> np.ndarray:
    small = x < SERIES_CUTOFF
    safe = np.where(small, 1.0, x)
    direct = np.log(safe) - safe - np.log(-np.expm1(-2.0 * safe)) + math.log(2.0)
    x2 = x * x
    return np.where(small, -x2 / 6.0 + x2 * x2 / 180.0, direct)


def _log_cosh(y: np.ndarray) -> np.ndarray:
    y = np.abs(y)
    return y + np.log1p(np.exp(-2.0 * y)) - math.log(2.0)


def _kernel(x: np.ndarray, power: int, alpha: float) -> np.ndarray:
    return np.exp(power * _log_x_over_sinh(x) + _log_cosh(alpha * x))


def _tail_bound(power: int, beta: float, x: float) -> float:
    """Upper bound for the integral of kappa^p s^p e^{-beta s} over [x, inf)."""
    return KAPPA ** power * gammaincc(power + 1, beta * x) * gamma(power + 1) / beta ** (power + 1)


def _truncation_point(power: int, beta: float, tol: float) -> float:
    x = 1.0
    while True:
        pointwise = KAPPA ** power * x ** power * math.exp(-beta * x)
        if pointwise < NUMERICS.tail_cutoff and 2.0 * _tail_bound(power, beta, x) <= 0.1 * tol:
            return x
        x *= 1.25


def _composite_gauss_legendre(power: int, alpha: float, upper: float, panels: int,
                              nodes: np.ndarray, weights: np.ndarray) -> float:
    total = 0.0
    width = upper / panels
    for first in range(0, panels, PANEL_BLOCK):
        left = width * np.arange(first, min(first + PANEL_BLOCK, panels), dtype=float)
        mid = left + 0.5 * width
        x = mid[:, None] + 0.5 * width * nodes[None, :]
        total += float(np.sum(_kernel(x, power, alpha) @ weights)) * 0.5 * width
    return total


def sinh_kernel_integral(power: int, alpha: float, tol: Optional[float] = None,
                         rtol: float = 0.0) -> Tuple[float, float]:
    """
    Integral over R of (x / sinh x)^power e^{-alpha x}, with an error estimate.

    Parameters
    ----------
    power : int
    alpha : float
        Needs |alpha| < power.
    tol : float, optional
        Absolute tolerance (default ``NUMERICS.quadrature_tol``).
    rtol : float
        Relative tolerance. The accepted error is max(tol, rtol * |value|);
        with the default 0 only ``tol`` counts. Near |alpha| = power the
        integral grows like (power - |alpha|)^-(power+1) and an absolute
        ``tol`` can fall below double-precision resolution of the value.

    Returns
    -------
    (value, error)
        ``error`` is the last between-level difference plus the analytic tail bound.

    Raises
    ------
    SpectralValidationError
        Unless |alpha| < power.
    QuadratureError
        When the levels do not agree within the accepted error before the
        halving cap; ``achieved`` is the last error estimate.
    """
    tol = NUMERICS.quadrature_tol if tol is None else tol
    beta = power - abs(alpha)
    if not beta > 0:
        raise SpectralValidationError(f"integral diverges for |alpha| = {abs(alpha)} >= {power}")
    upper = _truncation_point(power, beta, tol)
    tail = 2.0 * _tail_bound(power, beta, upper)

    nodes, weights = leggauss(NUMERICS.quadrature_order)
    panels = NUMERICS.quadrature_initial_panels
    previous = 2.0 * _composite_gauss_legendre(power, alpha, upper, panels, nodes, weights)
    difference = math.inf
    for level in range(1, NUMERICS.quadrature_max_levels + 1):
        panels *= 2
        current = 2.0 * _composite_gauss_legendre(power, alpha, upper, panels, nodes, weights)
        difference = abs(current - previous)
        previous = current
        if difference + tail < max(tol, rtol * abs(current)):
            logger.debug("I(%d, %g): X=%.4g panels=%d err=%.3e", power, alpha, upper, panels,
                         difference + tail)
            return current + tail / 2.0, difference + tail / 2.0
    raise QuadratureError(difference + tail, tol, NUMERICS.quadrature_max_levels)


# =============================================================================
# CONSTANTS
# =============================================================================

def _check_dimension(d: int):
    if isinstance(d, bool) or not isinstance(d, int) or d < 1:
        raise SpectralValidationError(f"d must be a positive integer, got {d!r}")


def weyl_constant(d: int, alpha: RealLike, tol: Optional[float] = None,
                  rtol: float = 0.0) -> WeylConstant:
    """
    C_{d,alpha} with its quadrature error.

    The boundary formula is used for |alpha| = d, where the interior
    integral diverges. On success ``quadrature_error`` is below ``tol``, or
    below ``rtol * value`` when that is larger (see :func:`sinh_kernel_integral`).
    """
    tol = NUMERICS.quadrature_tol if tol is None else tol
    if not tol > 0:
        raise SpectralValidationError(f"tol must be positive, got {tol}")
    if not rtol >= 0:
        raise SpectralValidationError(f"rtol must be nonnegative, got {rtol}")
    _check_dimension(d)
    a = real_alpha(d, alpha)
    boundary = abs(a) == d
    base = math.pi ** (d + 1) * math.factorial(d + 1)
    if boundary:
        factor = 2.0 * d / ((d + 1) * base)
        integral, error = sinh_kernel_integral(d + 1, d - 1, tol / factor, rtol)
    else:
        factor = 2.0 / base
        integral, error = sinh_kernel_integral(d, a, tol / factor, rtol)
    constant = WeylConstant(d=d, alpha=a, value=factor * integral,
                            quadrature_error=factor * error, boundary=boundary)
    logger.debug("C_{%d,%g} = %.15g (+- %.2e)", d, a, constant.value, constant.quadrature_error)
    return constant


def weyl_constant_boundary_consistency(d: int, tol: Optional[float] = None,
                                       epsilon: Optional[float] = None) -> Tuple[float, float]:
    """
    (C_{d,d}, C_{d,d-epsilon}); reported side by side, not expected to agree.

    C_{d,d-epsilon} grows like epsilon^-(d+1), so it is computed to the relative
    tolerance ``NUMERICS.boundary_rtol`` as well as ``tol``.
    """
    epsilon = NUMERICS.boundary_epsilon if epsilon is None else epsilon
    _check_dimension(d)
    near = weyl_constant(d, d - epsilon, tol, rtol=NUMERICS.boundary_rtol)
    return weyl_constant(d, d, tol).value, near.value


def flat_torus_leading(dual: DiagonalLattice, d: int) -> float:
    """Limit of N_b(lambda) / lambda^d for eigenvalues (pi/2)|xi|^2, xi in the dual lattice."""
    _check_dimension(d)
    if dual.dim != 2 * d:
        raise SpectralValidationError(f"dual lattice has dimension {dual.dim}, expected {2 * d}")
    return 2.0 ** d / (math.factorial(d) * float(dual.covolume))


def karamata_target(q: QuotientGeometry, alpha: RealLike, tol: Optional[float] = None) -> float:
    """(d+1)! C_{d,alpha} vol(M): the limit of t^(d+1) G(t) as t -> 0."""
    return math.factorial(q.d + 1) * weyl_constant(q.d, alpha, tol).value * float(q.volume)


# =============================================================================
# CONVERGENCE
# =============================================================================

def check_lambda_grid(lambda_values: Sequence[float]):
    if len(lambda_values) == 0:
        raise SpectralValidationError("lambda grid is empty")
    if any(not lam > 0 for lam in lambda_values):
        raise SpectralValidationError(f"lambda grid must be positive, got {list(lambda_values)}")
    if any(b <= a for a, b in zip(lambda_values, lambda_values[1:])):
        raise SpectralValidationError(f"lambda grid must be ascending, got {list(lambda_values)}")


def convergence_rows(counts, target: float) -> List[ConvergenceRow]:
    """ConvergenceRow per SpectralCount against a fixed target."""
    return [
        ConvergenceRow(
            lam=count.lam,
            n_a=count.n_a,
            n_b=count.n_b,
            n_total=count.n_total,
            ratio=count.normalized_ratio,
            target=target,
            rel_error=count.normalized_ratio / target - 1.0,
        )
        for count in counts
    ]


def convergence_report(q: QuotientGeometry, alpha, lambda_values: Sequence[float],
                       tol: Optional[float] = None,
                       budget: Optional[int] = None) -> List[ConvergenceRow]:
    """
    N(lambda) / lambda^(d+1) against C_{d,alpha} vol(M) over a lambda grid.

    ``alpha`` must be rational (the counts are exact).
    """
    check_lambda_grid(lambda_values)
    target = weyl_constant(q.d, alpha, tol).value * float(q.volume)
    counts = [count_total(q, alpha, lam, budget) for lam in lambda_values]
    rows = convergence_rows(counts, target)
    for row in rows:
        logger.info("lambda=%-10g N=%-14d ratio=%.8g rel_error=%+.3e",
                    row.lam, row.n_total, row.ratio, row.rel_error)
    return rows
