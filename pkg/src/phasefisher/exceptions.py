"""Exception hierarchy shared across the library.

Everything derives from :class:`PhaseFisherError`, itself a ``ValueError``,
so callers that do not care about the fine-grained category can catch
either one.
"""

from __future__ import annotations


class PhaseFisherError(ValueError):
    """Base class for all validation and domain errors raised here."""


class NonSquareError(PhaseFisherError):
    """Matrix expected to be square is not."""


class NonHermitianError(PhaseFisherError):
    """Matrix deviates from its conjugate transpose beyond tolerance."""


class NegativeEigenvalueError(PhaseFisherError):
    """PSD input has an eigenvalue below the clamp tolerance."""


class DimensionMismatchError(PhaseFisherError):
    """Operands have incompatible shapes."""


class NotDensityMatrixError(PhaseFisherError):
    """Matrix fails the density-matrix checks (Hermitian, unit trace, PSD)."""


class NotNormalizedError(PhaseFisherError):
    """Amplitude vector does not have unit sum of squares."""


class EtaOutOfRangeError(PhaseFisherError):
    """Reliability parameter outside [0, 1]."""


class NotOrthonormalError(PhaseFisherError):
    """Vector family fails the orthonormality check."""


class NotOrthogonalError(PhaseFisherError):
    """Real matrix expected to be orthogonal is not."""


class NMaxTooLargeError(PhaseFisherError):
    """Requested series/recurrence order exceeds the supported range."""


class EtaEndpointError(PhaseFisherError):
    """Operation undefined at eta = 0 or eta = 1."""


class ConvergenceDomainError(PhaseFisherError):
    """Series evaluated outside its convergence domain (alpha >= pi - 0.1)."""


class SupportViolationError(PhaseFisherError):
    """Derivative has weight outside the state's support; SLD equation unsolvable."""


class StepOutOfRangeError(PhaseFisherError):
    """Finite-difference step outside the admissible range."""


class SingularInformationError(PhaseFisherError):
    """Fisher information singular along a requested direction."""


class SchemaError(PhaseFisherError):
    """Problem document violates the input schema."""


class RangeError(PhaseFisherError):
    """Scan range invalid (need 0 <= from < to <= 1 and steps >= 2)."""
