"""Multiphase estimation under white noise.

A small numpy library (plus a CLI) for the quantum estimation of the
``d - 1`` free phases of a pure state mixed with white noise: symmetric
logarithmic derivatives by closed form, spectral solve, and
nested-commutator series; the quantum Fisher information matrix by four
mutually cross-checking methods; and the Cramér-Rao analysis (bound
attainability, minimal total variance, optimal estimators).
"""

from __future__ import annotations

from .crb import (
    CRBReport,
    attainability_check,
    crb_report,
    diagonalize_qfim,
    estimator_covariance,
    min_total_variance,
    optimal_estimators,
    rotated_slds,
    singular_directions,
    white_noise_crb_report,
)
from .exceptions import (
    ConvergenceDomainError,
    DimensionMismatchError,
    EtaEndpointError,
    EtaOutOfRangeError,
    NegativeEigenvalueError,
    NMaxTooLargeError,
    NonHermitianError,
    NonSquareError,
    NotDensityMatrixError,
    NotNormalizedError,
    NotOrthogonalError,
    NotOrthonormalError,
    PhaseFisherError,
    RangeError,
    SchemaError,
    SingularInformationError,
    StepOutOfRangeError,
    SupportViolationError,
)
from .linalg import (
    HermitianEig,
    anticommutator,
    bures_distance,
    commutator,
    hermitian_eig,
    matrix_sqrt_psd,
    uhlmann_fidelity,
)
from .qfim import (
    QFIM,
    finite_difference_drho,
    luders_family,
    monotonicity_gap,
    qfim_closed_form,
    qfim_fidelity_fd,
    qfim_from_slds,
    qfim_pure,
    qfim_spectral,
    ratio_xi,
    white_noise_family,
)
from .sld import (
    SeriesSpec,
    SLDSet,
    bernoulli_numbers,
    closed_form_coefficient,
    generating_coefficients,
    sld_closed_form,
    sld_eigenbasis,
    sld_series,
    verify_sld,
)
from .states import (
    LudersState,
    PhaseModel,
    WhiteNoiseState,
    build_luders_state,
    build_projector,
    build_pure_state,
    build_white_noise_state,
    derivative_operator_A,
    phase_rotated_basis,
    projector_derivative,
    white_noise_derivative,
)

__version__ = "0.1.0"

__all__ = [
    "CRBReport",
    "ConvergenceDomainError",
    "DimensionMismatchError",
    "EtaEndpointError",
    "EtaOutOfRangeError",
    "HermitianEig",
    "LudersState",
    "NMaxTooLargeError",
    "NegativeEigenvalueError",
    "NonHermitianError",
    "NonSquareError",
    "NotDensityMatrixError",
    "NotNormalizedError",
    "NotOrthogonalError",
    "NotOrthonormalError",
    "PhaseFisherError",
    "PhaseModel",
    "QFIM",
    "RangeError",
    "SLDSet",
    "SchemaError",
    "SeriesSpec",
    "SingularInformationError",
    "StepOutOfRangeError",
    "SupportViolationError",
    "WhiteNoiseState",
    "anticommutator",
    "attainability_check",
    "bernoulli_numbers",
    "build_luders_state",
    "build_projector",
    "build_pure_state",
    "build_white_noise_state",
    "bures_distance",
    "closed_form_coefficient",
    "commutator",
    "crb_report",
    "derivative_operator_A",
    "diagonalize_qfim",
    "estimator_covariance",
    "finite_difference_drho",
    "generating_coefficients",
    "hermitian_eig",
    "luders_family",
    "matrix_sqrt_psd",
    "min_total_variance",
    "monotonicity_gap",
    "optimal_estimators",
    "phase_rotated_basis",
    "projector_derivative",
    "qfim_closed_form",
    "qfim_fidelity_fd",
    "qfim_from_slds",
    "qfim_pure",
    "qfim_spectral",
    "ratio_xi",
    "rotated_slds",
    "singular_directions",
    "sld_closed_form",
    "sld_eigenbasis",
    "sld_series",
    "uhlmann_fidelity",
    "verify_sld",
    "white_noise_crb_report",
    "white_noise_derivative",
    "white_noise_family",
]
