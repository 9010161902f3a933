"""Geodesic flow, scattering, and twistor blow-down maps for rotationally invariant disks."""

from .errors import (
    BoundaryDegenerateError,
    ClassifierMismatchError,
    DomainError,
    GlancingError,
    NotInImageError,
    TrappingError,
)
from .flow import (
    FanBeamCoord,
    PhasePoint,
    Trajectory,
    fan_to_phase,
    boundary_angles,
    g_speed,
    integrate_geodesic,
    interior_angles,
    scattering_function_closed,
    scattering_function_numeric,
    scattering_function_sweep,
    scattering_quadrature_oracle,
    scattering_relation_numeric,
    scattering_relation_sweep,
)
from .geometry import (
    DiskSpec,
    MetricMatrix,
    RadialProfile,
    frame_pair,
    frame_section,
    gaussian_curvature,
    isothermal,
    isothermal_inverse,
    metric_cartesian,
    metric_inner,
)
from .invariants import (
    FourierSpectrum,
    HoloDifferential,
    bottom_mode_expected,
    build_invariant,
    eta_minus_residual,
    fiber_fourier,
    transport_residual,
)
from .jacobi import (
    JacobiTrace,
    SimplicityReport,
    conjugate_scan,
    jacobi_field,
    sprime_closed,
    sprime_identity_residual,
)
from .twistor import (
    BallPoint,
    BoundarySeparationReport,
    HermitianForm2,
    TwistorValue,
    XiCoefficients,
    beta_forward,
    beta_inverse,
    boundary_beta,
    boundary_jacobian_closed,
    boundary_jacobian_rescaled,
    boundary_separation,
    h_c_profile,
    hermitian_H,
    hermitian_entry_bounds,
    holomorphicity_residual,
    holomorphicity_residual_fd,
    lambda_min_uniform_bound,
    phase_to_ball,
    sm_restriction,
    xi_vector,
)

__version__ = "0.1.0"

__all__ = [
    "BallPoint",
    "BoundaryDegenerateError",
    "BoundarySeparationReport",
    "ClassifierMismatchError",
    "DiskSpec",
    "DomainError",
    "FanBeamCoord",
    "FourierSpectrum",
    "GlancingError",
    "HermitianForm2",
    "HoloDifferential",
    "JacobiTrace",
    "MetricMatrix",
    "NotInImageError",
    "PhasePoint",
    "RadialProfile",
    "SimplicityReport",
    "Trajectory",
    "TrappingError",
    "TwistorValue",
    "XiCoefficients",
    "beta_forward",
    "beta_inverse",
    "bottom_mode_expected",
    "boundary_angles",
    "boundary_beta",
    "boundary_jacobian_closed",
    "boundary_jacobian_rescaled",
    "boundary_separation",
    "build_invariant",
    "conjugate_scan",
    "eta_minus_residual",
    "fan_to_phase",
    "fiber_fourier",
    "frame_pair",
    "frame_section",
    "g_speed",
    "gaussian_curvature",
    "h_c_profile",
    "hermitian_H",
    "hermitian_entry_bounds",
    "holomorphicity_residual",
    "holomorphicity_residual_fd",
    "integrate_geodesic",
    "interior_angles",
    "isothermal",
    "isothermal_inverse",
    "jacobi_field",
    "lambda_min_uniform_bound",
    "metric_cartesian",
    "metric_inner",
    "phase_to_ball",
    "scattering_function_closed",
    "scattering_function_numeric",
    "scattering_function_sweep",
    "scattering_quadrature_oracle",
    "scattering_relation_numeric",
    "scattering_relation_sweep",
    "sm_restriction",
    "sprime_closed",
    "sprime_identity_residual",
    "transport_residual",
    "xi_vector",
]
