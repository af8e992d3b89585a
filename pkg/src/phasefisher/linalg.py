"""Dense complex-matrix primitives used by every other module.

All functions are pure: they validate their inputs, allocate fresh output
arrays and never mutate arguments.  Matrices are plain ``numpy`` arrays in
``complex128``; Hermitian eigenproblems go through ``numpy.linalg.eigh``,
which returns eigenvalues in ascending order and is deterministic for
identical input.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exceptions import (
    DimensionMismatchError,
    NegativeEigenvalueError,
    NonHermitianError,
    NonSquareError,
    NotDensityMatrixError,
)

# Eigenvalues of a PSD matrix in [-PSD_CLAMP_TOL, 0) are treated as rounding
# debris and clamped to zero; anything below raises.
PSD_CLAMP_TOL = 1e-10

HERMITICITY_TOL = 1e-10
TRACE_TOL = 1e-10


@dataclass(frozen=True)
class HermitianEig:
    """Eigendecomposition of a Hermitian matrix.

    ``eigenvalues`` are real and ascending; the columns of ``eigenvectors``
    are the matching orthonormal eigenvectors, so
    ``M = V @ diag(w) @ V.conj().T``.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def _as_complex_matrix(M: np.ndarray, name: str = "matrix") -> np.ndarray:
    A = np.asarray(M, dtype=complex)
    if A.ndim != 2:
        raise NonSquareError(f"{name} must be 2-dimensional, got ndim={A.ndim}")
    if not np.isfinite(A.real).all() or not np.isfinite(A.imag).all():
        raise ValueError(f"{name} contains non-finite entries")
    return A


def _require_square(A: np.ndarray, name: str = "matrix") -> np.ndarray:
    if A.shape[0] != A.shape[1]:
        raise NonSquareError(f"{name} must be square, got shape {A.shape}")
    return A


def _require_hermitian(A: np.ndarray, name: str = "matrix") -> np.ndarray:
    scale = max(1.0, float(np.linalg.norm(A)))
    dev = float(np.linalg.norm(A - A.conj().T))
    if dev > HERMITICITY_TOL * scale:
        raise NonHermitianError(
            f"{name} is not Hermitian: ||A - A^dag||_F = {dev:.3e} "
            f"exceeds {HERMITICITY_TOL:.1e} * max(1, ||A||_F)"
        )
    return A


def hermitian_eig(M: np.ndarray) -> HermitianEig:
    """Eigendecompose a Hermitian matrix.

    Raises ``NonSquareError`` / ``NonHermitianError`` when the input fails
    validation.  The Hermitian part ``(M + M^dag)/2`` is what gets
    decomposed, so results are insensitive to rounding-level asymmetry.
    """
    A = _require_hermitian(_require_square(_as_complex_matrix(M)))
    w, V = np.linalg.eigh((A + A.conj().T) / 2.0)
    return HermitianEig(eigenvalues=w, eigenvectors=V)


def matrix_sqrt_psd(M: np.ndarray) -> np.ndarray:
    """Hermitian PSD square root of a Hermitian PSD matrix.

    Eigenvalues in ``[-PSD_CLAMP_TOL, 0)`` are clamped to zero; anything
    more negative raises ``NegativeEigenvalueError``.
    """
    eig = hermitian_eig(M)
    w = eig.eigenvalues
    if np.any(w < -PSD_CLAMP_TOL):
        raise NegativeEigenvalueError(
            f"matrix has eigenvalue {w.min():.3e} below -{PSD_CLAMP_TOL:.1e}"
        )
    w = np.clip(w, 0.0, None)
    V = eig.eigenvectors
    R = (V * np.sqrt(w)) @ V.conj().T
    return (R + R.conj().T) / 2.0


def _require_density_matrix(rho: np.ndarray, name: str = "rho") -> np.ndarray:
    A = _require_square(_as_complex_matrix(rho, name), name)
    try:
        _require_hermitian(A, name)
    except NonHermitianError as exc:
        raise NotDensityMatrixError(str(exc)) from exc
    tr = complex(np.trace(A))
    if abs(tr - 1.0) > TRACE_TOL:
        raise NotDensityMatrixError(f"{name} has trace {tr:.12g}, expected 1")
    w = np.linalg.eigvalsh((A + A.conj().T) / 2.0)
    if w.min() < -PSD_CLAMP_TOL:
        raise NotDensityMatrixError(
            f"{name} has eigenvalue {w.min():.3e} below -{PSD_CLAMP_TOL:.1e}"
        )
    return A


def uhlmann_fidelity(rho1: np.ndarray, rho2: np.ndarray) -> float:
    """Uhlmann fidelity ``(Tr sqrt(sqrt(rho1) rho2 sqrt(rho1)))**2``.

    Both arguments must be density matrices of the same dimension; the
    result is clamped to [0, 1].

    Evaluated as the squared nuclear norm ``||sqrt(rho1) sqrt(rho2)||_1^2``
    (the same quantity: the singular values of that product are the square
    roots of the eigenvalues of ``sqrt(rho1) rho2 sqrt(rho1)``).  Taking
    square roots before the product keeps rank-deficient states accurate:
    eigendecomposing the triple product would turn rounding-level zero
    eigenvalues into ``sqrt(eps) ~ 1e-8`` contributions to the trace.
    """
    a = _require_density_matrix(rho1, "rho1")
    b = _require_density_matrix(rho2, "rho2")
    if a.shape != b.shape:
        raise DimensionMismatchError(f"shapes differ: {a.shape} vs {b.shape}")
    sa = matrix_sqrt_psd(a)
    return _fidelity_from_sqrt(sa, b)


def _sqrt_psd_clipped(M: np.ndarray) -> np.ndarray:
    """PSD square root without validation (negative rounding clipped)."""
    w, V = np.linalg.eigh((M + M.conj().T) / 2.0)
    return (V * np.sqrt(np.clip(w, 0.0, None))) @ V.conj().T


def _fidelity_from_sqrt(sqrt_rho1: np.ndarray, rho2: np.ndarray) -> float:
    """Fidelity given a precomputed square root of the first state.

    Internal fast path: skips re-validation, used by finite-difference
    drivers that evaluate many fidelities against one fixed state.
    """
    s = np.linalg.svd(sqrt_rho1 @ _sqrt_psd_clipped(rho2), compute_uv=False)
    f = float(np.sum(s) ** 2)
    return min(max(f, 0.0), 1.0)


def bures_distance(rho1: np.ndarray, rho2: np.ndarray) -> float:
    """Bures distance ``sqrt(2 - 2 sqrt(F_U))`` between two density matrices."""
    f = uhlmann_fidelity(rho1, rho2)
    return float(np.sqrt(max(0.0, 2.0 - 2.0 * np.sqrt(f))))


def commutator(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """``A @ B - B @ A``."""
    a = _require_square(_as_complex_matrix(A, "A"), "A")
    b = _require_square(_as_complex_matrix(B, "B"), "B")
    if a.shape != b.shape:
        raise DimensionMismatchError(f"shapes differ: {a.shape} vs {b.shape}")
    return a @ b - b @ a


def anticommutator(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """``A @ B + B @ A``."""
    a = _require_square(_as_complex_matrix(A, "A"), "A")
    b = _require_square(_as_complex_matrix(B, "B"), "B")
    if a.shape != b.shape:
        raise DimensionMismatchError(f"shapes differ: {a.shape} vs {b.shape}")
    return a @ b + b @ a
