"""Numerical toolkit for higher-order Riesz transforms of ultraspherical
expansions: spectral multipliers, singular kernels, principal-value
truncations, and the oscillation/variation operators that measure how fast
the truncations converge."""

from .jets import Jet
from .special import (
    beta,
    gegenbauer_eval,
    gegenbauer_theta_jet,
    gegenbauer_theta_jets,
    log_gamma,
    norm_sq,
    validate_lambda,
)
from .quadrature import (
    AccuracyError,
    ConstructionError,
    EvaluationError,
    GridFunction,
    PowerWeight,
    QuadratureError,
    QuadratureRule,
    build_rule,
    integrate,
    lp_norm,
    singular_integrate,
    total_mass,
)
from .faa_di_bruno import (
    FaaTable,
    KernelPoint,
    coefficients,
    expansion_eval,
    jet_oracle,
    pochhammer_factor,
    sample_points,
)
from .kernels import (
    DEFAULT_KERNEL_CONFIG,
    KernelConfig,
    KernelConstants,
    circle_H,
    circle_R,
    envelope_residual,
    h_limit_even,
    kernel_constants,
    kernel_partial,
    m_k_estimate,
    poisson_kernel,
    region_classify,
    riesz_kernel,
)
from .transforms import (
    PVResult,
    SpectralCoefficients,
    TruncationOperator,
    TruncationSchedule,
    analyze,
    band_limited,
    fractional_power,
    poisson_coefficients,
    poisson_spectral,
    poisson_via_kernel,
    riesz_maximal,
    riesz_pv,
    riesz_spectral,
    riesz_truncated,
    synthesize,
)
from .variation import (
    ConvergenceReport,
    DyadicBands,
    ThetaRecord,
    TruncationTrace,
    convergence_report,
    oscillation,
    rho_variation,
)

__all__ = [
    "Jet",
    "beta",
    "gegenbauer_eval",
    "gegenbauer_theta_jet",
    "gegenbauer_theta_jets",
    "log_gamma",
    "norm_sq",
    "validate_lambda",
    "AccuracyError",
    "ConstructionError",
    "EvaluationError",
    "GridFunction",
    "PowerWeight",
    "QuadratureError",
    "QuadratureRule",
    "build_rule",
    "integrate",
    "lp_norm",
    "singular_integrate",
    "total_mass",
    "FaaTable",
    "KernelPoint",
    "coefficients",
    "expansion_eval",
    "jet_oracle",
    "pochhammer_factor",
    "sample_points",
    "DEFAULT_KERNEL_CONFIG",
    "KernelConfig",
    "KernelConstants",
    "circle_H",
    "circle_R",
    "envelope_residual",
    "h_limit_even",
    "kernel_constants",
    "kernel_partial",
    "m_k_estimate",
    "poisson_kernel",
    "region_classify",
    "riesz_kernel",
    "PVResult",
    "SpectralCoefficients",
    "TruncationOperator",
    "TruncationSchedule",
    "analyze",
    "band_limited",
    "fractional_power",
    "poisson_coefficients",
    "poisson_spectral",
    "poisson_via_kernel",
    "riesz_maximal",
    "riesz_pv",
    "riesz_spectral",
    "riesz_truncated",
    "synthesize",
    "ConvergenceReport",
    "DyadicBands",
    "ThetaRecord",
    "TruncationTrace",
    "convergence_report",
    "oscillation",
    "rho_variation",
]

__version__ = "0.1.0"
