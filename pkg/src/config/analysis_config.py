"""
Analysis Configuration for the Heisenberg Spectra Pipeline
==========================================================

This module contains all configuration parameters for counting the spectrum of
L_alpha (and the Kohn Laplacian on (p,q)-forms) on compact Heisenberg quotients
and for checking the Weyl-law limits numerically.

Numeric defaults can be overridden from the environment (or a local .env file):

    HEISENBERG_WEYL_BUDGET      enumeration budget (integer)
    HEISENBERG_WEYL_TOL         quadrature tolerance (float)
    HEISENBERG_WEYL_OUTPUT_DIR  root directory for tables and figures
"""

import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple

from dotenv import load_dotenv

load_dotenv()

# =============================================================================
# PATH CONFIGURATION
# =============================================================================

# Project root - dynamically determined
PROJECT_ROOT = Path(__file__).parent.parent.parent

OUTPUT_DIR = Path(os.getenv("HEISENBERG_WEYL_OUTPUT_DIR", PROJECT_ROOT / "analysis" / "outputs"))
TABLES_DIR = OUTPUT_DIR / "tables"
FIGURES_DIR = OUTPUT_DIR / "figures"

# =============================================================================
# NUMERICS
# =============================================================================


def _env_int(name: str, default: int) -> int:
    value = os.getenv(name)
    return int(value) if value else default


def _env_float(name: str, default: float) -> float:
    value = os.getenv(name)
    return float(value) if value else default


@dataclass
class NumericsDefaults:
    """Tolerances, caps and quadrature settings shared by the spectral modules."""

    # Weyl constants
    quadrature_tol: float = field(default_factory=lambda: _env_float("HEISENBERG_WEYL_TOL", 1e-10))
    quadrature_order: int = 32  # Gauss-Legendre nodes per panel
    quadrature_initial_panels: int = 8
    quadrature_max_levels: int = 16  # interval halvings before giving up
    tail_cutoff: float = 1e-18  # integrand bound at the truncation point

    # Heat traces
    heat_tol: float = 1e-12
    min_heat_t: float = 1e-8
    heat_chunk: int = 4096
    max_heat_terms: int = 10**9

    # Counting / enumeration
    enumeration_budget: int = field(default_factory=lambda: _env_int("HEISENBERG_WEYL_BUDGET", 10**8))

    # Verification
    pass_threshold: float = 0.05
    boundary_epsilon: float = 1e-2
    boundary_rtol: float = 1e-12  # relative quadrature tolerance for C_{d,d-epsilon}


NUMERICS = NumericsDefaults()

# =============================================================================
# DEFAULT QUOTIENT
# =============================================================================


@dataclass
class QuotientDefaults:
    """Quotient used when no --d/--ell/--c flags are given."""

    d: int = 1
    ell: Tuple[int, ...] = (1,)
    c: str = "1"


DEFAULT_QUOTIENT = QuotientDefaults()

# =============================================================================
# REPORT FORMATTING
# =============================================================================


@dataclass
class ReportFormatting:
    """CSV/JSON/SVG output standards."""

    csv_separator: str = ","
    line_terminator: str = "\n"
    json_indent: int = 2

    # Figure settings
    figure_width_inches: float = 7.0
    figure_height_inches: float = 4.5
    font_size_axis: int = 10
    font_size_title: int = 12
    svg_hashsalt: str = "heisenberg-weyl"

    # Color palette (colorblind-friendly)
    colors: List[str] = field(default_factory=lambda: [
        "#0072B2",  # Blue
        "#D55E00",  # Orange
        "#009E73",  # Green
        "#CC79A7",  # Pink
        "#000000",  # Black
    ])


REPORT = ReportFormatting()

OUTPUT_FORMATS = ("csv", "json", "svg")

# =============================================================================
# HELPER FUNCTIONS
# =============================================================================


def get_output_path(filename: str, figure: bool = False) -> Path:
    """Get full path to an output file."""
    if figure:
        return FIGURES_DIR / filename
    return TABLES_DIR / filename


# =============================================================================
# RUN CONFIGURATION
# =============================================================================


class RunConfigError(ValueError):
    """Raised when a run configuration is inconsistent."""


def _check_grid(name: str, values: Optional[List[float]], ascending: bool = True):
    if values is None:
        return
    if len(values) == 0:
        raise RunConfigError(f"{name} grid is empty")
    if any(v <= 0 for v in values):
        raise RunConfigError(f"{name} grid must be positive, got {list(values)}")
    steps = list(zip(values, values[1:]))
    if ascending and any(b <= a for a, b in steps):
        raise RunConfigError(f"{name} grid must be strictly ascending, got {list(values)}")
    if not ascending and not (all(b > a for a, b in steps) or all(b < a for a, b in steps)):
        raise RunConfigError(f"{name} grid must be strictly monotone, got {list(values)}")


@dataclass
class RunConfig:
    """
    One command-line run: the quotient, the operator, the grids and the output.
    Exactly one of ``alpha`` / ``forms`` selects the operator where one is needed.
    """
    command: str
    d: int = DEFAULT_QUOTIENT.d
    ell: Tuple[int, ...] = DEFAULT_QUOTIENT.ell
    c: str = DEFAULT_QUOTIENT.c
    alpha: Optional[str] = None
    forms: Optional[Tuple[int, int]] = None
    lambdas: Optional[List[float]] = None
    t_values: Optional[List[float]] = None
    tol: float = NUMERICS.quadrature_tol
    heat_tol: float = NUMERICS.heat_tol
    fmt: str = "csv"
    out: Optional[str] = None
    budget: int = NUMERICS.enumeration_budget
    extra: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        """Validate configuration."""
        if self.alpha is not None and self.forms is not None:
            raise RunConfigError("supply exactly one of --alpha / --forms")
        _check_grid("lambda", self.lambdas)
        _check_grid("t", self.t_values, ascending=False)
        if not self.tol > 0:
            raise RunConfigError(f"--tol must be positive, got {self.tol}")
        if not self.heat_tol > 0:
            raise RunConfigError(f"--heat-tol must be positive, got {self.heat_tol}")
        if self.budget <= 0:
            raise RunConfigError(f"--budget must be positive, got {self.budget}")
        if self.fmt not in OUTPUT_FORMATS:
            raise RunConfigError(f"--format must be one of {OUTPUT_FORMATS}, got {self.fmt!r}")

    def to_dict(self) -> Dict[str, Any]:
        """JSON-ready echo of the run, defaults included."""
        return {
            "command": self.command,
            "d": self.d,
            "ell": list(self.ell),
            "c": self.c,
            "alpha": self.alpha,
            "forms": list(self.forms) if self.forms is not None else None,
            "lambdas": self.lambdas,
            "t_values": self.t_values,
            "tol": self.tol,
            "heat_tol": self.heat_tol,
            "format": self.fmt,
            "out": self.out,
            "budget": self.budget,
            **self.extra,
        }
