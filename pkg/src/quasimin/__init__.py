"""Numerical toolkit for quasi-minimal surfaces with positive relative
nullity in the flat neutral 4-space and the unit quadric of neutral 5-space.

The package constructs the classified families from their data functions and
certifies, from the raw parametrizations alone, that each surface has a
lightlike nonzero mean curvature vector, a one-dimensional relative null
space, an adapted lightlike normal frame with the asserted relations, and
induced data satisfying the Gauss, Codazzi and Ricci equations.
"""

__version__ = "0.1.0"

from .config import (
    CONTROL_TAGS,
    FAMILY_TAGS,
    RunConfig,
    build_curve,
    build_function,
    build_immersion,
    load_config,
)
from .exceptions import (
    DegenerateNullSpace,
    DimensionMismatch,
    InadmissibleFamily,
    NotArcLength,
    NotQuasiMinimal,
    NullPlaneError,
    OffQuadricError,
    QuasiminError,
    SingularPointError,
    VanishingCurvature,
    WrongCausalType,
)
from .families import (
    CONDITION_LABELS,
    ChartCoefficients,
    SphericalCurve,
    chart_pde_residuals,
    coefficient_chart,
    frenet_apparatus,
    make_e42,
    make_s42_curve,
    make_s42_hyp,
    make_s42_trig,
    spacelike_circle,
    timelike_circle,
)
from .immersion import (
    AdaptedFrame,
    FundamentalData,
    Immersion,
    SingularLocus,
    adapted_frame,
    fundamental_data,
    induced_metric,
    relative_null_space,
    structure_coefficients,
)
from .linalg import CausalCharacter, IndefiniteSpace, kernel, lightlike_partner
from .numerics import (
    CubicHermite,
    Grid1D,
    cumulative_integral,
    derivative1,
    derivative2,
    partial_derivs,
    solve_lode2,
)
from .space_forms import AmbientPoint, SpaceForm
from .verify import (
    CertificationReport,
    PointRecord,
    certify_adapted_frame,
    certify_curvature_equations,
    certify_positive_relative_nullity,
    certify_quasi_minimal,
    ode_convergence,
    residual_convergence,
    run_certifications,
    sample_grid,
)

__all__ = [
    "__version__",
    "AdaptedFrame",
    "AmbientPoint",
    "CausalCharacter",
    "CertificationReport",
    "ChartCoefficients",
    "CONDITION_LABELS",
    "CONTROL_TAGS",
    "CubicHermite",
    "DegenerateNullSpace",
    "DimensionMismatch",
    "FAMILY_TAGS",
    "FundamentalData",
    "Grid1D",
    "Immersion",
    "InadmissibleFamily",
    "IndefiniteSpace",
    "NotArcLength",
    "NotQuasiMinimal",
    "NullPlaneError",
    "OffQuadricError",
    "PointRecord",
    "QuasiminError",
    "RunConfig",
    "SingularLocus",
    "SingularPointError",
    "SpaceForm",
    "SphericalCurve",
    "VanishingCurvature",
    "WrongCausalType",
    "adapted_frame",
    "build_curve",
    "build_function",
    "build_immersion",
    "certify_adapted_frame",
    "certify_curvature_equations",
    "certify_positive_relative_nullity",
    "certify_quasi_minimal",
    "chart_pde_residuals",
    "coefficient_chart",
    "cumulative_integral",
    "derivative1",
    "derivative2",
    "frenet_apparatus",
    "fundamental_data",
    "induced_metric",
    "kernel",
    "lightlike_partner",
    "load_config",
    "make_e42",
    "make_s42_curve",
    "make_s42_hyp",
    "make_s42_trig",
    "ode_convergence",
    "partial_derivs",
    "relative_null_space",
    "residual_convergence",
    "run_certifications",
    "sample_grid",
    "solve_lode2",
    "spacelike_circle",
    "structure_coefficients",
    "timelike_circle",
]
