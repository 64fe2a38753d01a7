"""Spectra of L_alpha and the Kohn Laplacian on compact Heisenberg quotients."""

from .errors import (
    SpectralError,
    SpectralValidationError,
    EnumerationBudgetExceeded,
    QuadratureError,
    VerificationFailure,
)
from .quotient import (
    DiagonalLattice,
    QuotientGeometry,
    make_quotient,
    projected_lattice,
    dual_lattice,
    quotient_to_json,
    quotient_from_json,
)
from .spectrum import (
    PI_RATIONAL,
    EigenvalueKind,
    SpectralParameter,
    SpectralUnit,
    TypeASource,
    TypeBSource,
    EigenvalueRecord,
    SpectralCount,
    spectral_unit,
    threshold_in_units,
    type_a_eigenvalue,
    type_a_multiplicity,
    cumulative_multiplicity,
    count_type_a,
    count_type_a_direct,
    count_type_b,
    count_total,
    enumerate_spectrum,
    dilate,
)
from .heat import (
    HeatTracePoint,
    heat_trace,
    scaled_trace_sequence,
    spectral_sum,
)
from .weyl import (
    WeylConstant,
    ConvergenceRow,
    sinh_kernel_integral,
    weyl_constant,
    weyl_constant_boundary_consistency,
    flat_torus_leading,
    karamata_target,
    convergence_report,
)
from .forms import (
    FormDegree,
    form_multiplicity,
    box_b_alpha,
    box_b_count,
    box_b_weyl_target,
    box_b_heat_trace,
    box_b_convergence_report,
)

__all__ = [
    "SpectralError",
    "SpectralValidationError",
    "EnumerationBudgetExceeded",
    "QuadratureError",
    "VerificationFailure",
    "DiagonalLattice",
    "QuotientGeometry",
    "make_quotient",
    "projected_lattice",
    "dual_lattice",
    "quotient_to_json",
    "quotient_from_json",
    "PI_RATIONAL",
    "EigenvalueKind",
    "SpectralParameter",
    "SpectralUnit",
    "TypeASource",
    "TypeBSource",
    "EigenvalueRecord",
    "SpectralCount",
    "spectral_unit",
    "threshold_in_units",
    "type_a_eigenvalue",
    "type_a_multiplicity",
    "cumulative_multiplicity",
    "count_type_a",
    "count_type_a_direct",
    "count_type_b",
    "count_total",
    "enumerate_spectrum",
    "dilate",
    "HeatTracePoint",
    "heat_trace",
    "scaled_trace_sequence",
    "spectral_sum",
    "WeylConstant",
    "ConvergenceRow",
    "sinh_kernel_integral",
    "weyl_constant",
    "weyl_constant_boundary_consistency",
    "flat_torus_leading",
    "karamata_target",
    "convergence_report",
    "FormDegree",
    "form_multiplicity",
    "box_b_alpha",
    "box_b_count",
    "box_b_weyl_target",
    "box_b_heat_trace",
    "box_b_convergence_report",
]
