"""Ground state and bound-level solver for a polarized neutral spin-1/2 particle
in the transverse electric field of a uniformly charged cylinder.

The planar problem decouples into four radial sectors controlled by the single
dimensionless parameter b = beta*r0^2. For b > 1 a normalizable zero-energy
ground state exists in closed form (`groundstate`); the remaining levels are
searched for by matching an interior confluent-hypergeometric solution to an
exterior modified-Bessel tail (`spectrum`), validated against an independent
finite-difference eigensolver (`oracle`).
"""

__version__ = "0.1.0"

from .errors import (
    AcBoundError,
    ConfigurationError,
    DegenerateBranchError,
    DomainError,
    PoleError,
    PrecisionError,
    SingularityError,
    UnbrokenSusyViolation,
)
from .groundstate import (
    Figure1Table,
    GroundState,
    build_ground_state,
    density,
    figure1_profile,
    probability_window,
    quadrature_norm,
    ratio_outside_inside,
)
from .model import (
    ALL_SECTORS,
    Component,
    CylinderConfig,
    LambdaMinResult,
    SectorLabel,
    Spin,
    SusyReport,
    check_unbroken_susy,
    evaluate_field,
    field_divergence,
    lambda_min_si,
)
from .oracle import FdEigenResult, FdGrid, fd_eigenvalues, fd_ground_mode, mass_inside
from .specfun import (
    EvalMethod,
    FunEvalResult,
    bessel_j,
    bessel_j_deriv,
    bessel_k,
    bessel_k_deriv,
    bessel_y,
    bessel_y_deriv,
    hyp1f1,
    hyp1f1_deriv,
)
from .spectrum import (
    BoundState,
    BoundStateScan,
    ExteriorSolution,
    MatchingProfile,
    RadialProblem,
    SpectrumRow,
    SpectrumTable,
    exterior_solution,
    find_bound_states,
    interior_solution,
    matching_mismatch,
    scan_mismatch,
    scan_spectrum,
)

__all__ = [
    "__version__",
    "AcBoundError",
    "ConfigurationError",
    "DegenerateBranchError",
    "DomainError",
    "PoleError",
    "PrecisionError",
    "SingularityError",
    "UnbrokenSusyViolation",
    "ALL_SECTORS",
    "Component",
    "CylinderConfig",
    "LambdaMinResult",
    "SectorLabel",
    "Spin",
    "SusyReport",
    "check_unbroken_susy",
    "evaluate_field",
    "field_divergence",
    "lambda_min_si",
    "EvalMethod",
    "FunEvalResult",
    "hyp1f1",
    "hyp1f1_deriv",
    "bessel_j",
    "bessel_j_deriv",
    "bessel_y",
    "bessel_y_deriv",
    "bessel_k",
    "bessel_k_deriv",
    "GroundState",
    "Figure1Table",
    "build_ground_state",
    "density",
    "figure1_profile",
    "probability_window",
    "quadrature_norm",
    "ratio_outside_inside",
    "RadialProblem",
    "BoundState",
    "BoundStateScan",
    "ExteriorSolution",
    "MatchingProfile",
    "SpectrumRow",
    "SpectrumTable",
    "interior_solution",
    "exterior_solution",
    "matching_mismatch",
    "scan_mismatch",
    "find_bound_states",
    "scan_spectrum",
    "FdGrid",
    "FdEigenResult",
    "fd_eigenvalues",
    "fd_ground_mode",
    "mass_inside",
]
