"""Configuration module for the Heisenberg spectra pipeline."""

from .analysis_config import (
    # Paths
    PROJECT_ROOT,
    OUTPUT_DIR,
    TABLES_DIR,
    FIGURES_DIR,

    # Numerics
    NUMERICS,
    NumericsDefaults,

    # Quotient
    DEFAULT_QUOTIENT,
    QuotientDefaults,

    # Formatting
    REPORT,
    ReportFormatting,
    OUTPUT_FORMATS,

    # Helpers
    get_output_path,

    # Runs
    RunConfig,
    RunConfigError,
)

__all__ = [
    "PROJECT_ROOT",
    "OUTPUT_DIR",
    "TABLES_DIR",
    "FIGURES_DIR",
    "NUMERICS",
    "NumericsDefaults",
    "DEFAULT_QUOTIENT",
    "QuotientDefaults",
    "REPORT",
    "ReportFormatting",
    "OUTPUT_FORMATS",
    "get_output_path",
    "RunConfig",
    "RunConfigError",
]
