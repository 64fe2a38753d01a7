"""Exception types raised by the spectral modules."""

from typing import Optional


class SpectralError(Exception):
    """Base class for every error raised by src.spectra."""


class SpectralValidationError(SpectralError, ValueError):
    """An input violates a precondition (range, sign, divisibility)."""


class EnumerationBudgetExceeded(SpectralError, RuntimeError):
    """Counting or enumeration needed more work than the configured budget allows."""

    def __init__(self, budget: int, what: str, attempted: Optional[int] = None):
        self.budget = budget
        self.what = what
        self.attempted = attempted
        detail = f" (attempted {attempted})" if attempted is not None else ""
        super().__init__(f"{what} exceeded the enumeration budget of {budget}{detail}")


class QuadratureError(SpectralError, RuntimeError):
    """Adaptive quadrature did not reach the requested tolerance."""

    def __init__(self, achieved: float, tol: float, levels: int):
        self.achieved = achieved
        self.tol = tol
        self.levels = levels
        super().__init__(
            f"quadrature reached error {achieved:.3e} > tol {tol:.3e} after {levels} halvings"
        )


class VerificationFailure(SpectralError):
    """A convergence check did not meet its pass threshold."""

    def __init__(self, rel_error: float, threshold: float):
        self.rel_error = rel_error
        self.threshold = threshold
        super().__init__(f"final |rel_error| = {abs(rel_error):.6g} not below {threshold:g}")
