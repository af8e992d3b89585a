"""Cramér-Rao attainability, minimal total variance, optimal estimators.

The multiparameter quantum Cramér-Rao bound ``Cov >= (M F)^{-1}`` is
asymptotically attainable iff ``Im Tr(rho L_j L_k) = 0`` for all pairs.
When it is, rotating to the eigenbasis of the QFIM decouples the
parameters: with ``lambda = Q phi`` and ``L_lambda = Q L_phi``, the
observables

    O_k = lambda_k I + L_{lambda_k} / F_{lambda_k}

are locally unbiased, mutually uncorrelated, and each reaches variance
``1 / F_{lambda_k}``, so the total variance attains
``sum_mu 1 / F_mu`` (divided by the measurement count ``M``).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .exceptions import (
    DimensionMismatchError,
    NotOrthogonalError,
    SingularInformationError,
)
from .qfim import QFIM, qfim_from_slds
from .sld import SLDSet, sld_closed_form
from .states import WhiteNoiseState

ATTAINABILITY_TOL = 1e-10
ORTHOGONALITY_TOL = 1e-10
SIGN_CONVENTION_TOL = 1e-8


@dataclass(frozen=True)
class CRBReport:
    """Everything the bound analysis produces at one parameter point.

    ``estimators`` is empty and ``estimator_covariance``/``lambda_point``
    are ``None`` when the information matrix is singular;
    ``singular_directions`` then lists an orthonormal basis of the
    (numerical) null space.
    """

    attainable: bool
    max_im_residual: float
    qfim_eigenvalues: np.ndarray
    rotation: np.ndarray
    min_total_variance: float
    measurement_count: int = 1
    estimators: tuple[np.ndarray, ...] = ()
    estimator_covariance: np.ndarray | None = None
    lambda_point: np.ndarray | None = None
    singular_directions: tuple[np.ndarray, ...] = field(default=())


def attainability_check(
    rho: np.ndarray, slds: SLDSet, tol: float = ATTAINABILITY_TOL
) -> tuple[bool, float]:
    """Weak-commutativity test for attainability of the bound.

    Returns ``(attainable, residual)`` with
    ``residual = max_{j<k} |Im Tr(rho L_j L_k)| / max(1, ||F||_F)``.
    A single parameter is always attainable (residual 0).
    """
    rho = np.asarray(rho, dtype=complex)
    ops = slds.operators
    if rho.shape != (slds.d, slds.d):
        raise DimensionMismatchError(
            f"rho shape {rho.shape} does not match SLD dimension {slds.d}"
        )
    n = len(ops)
    if n < 2:
        return True, 0.0
    F_norm = float(np.linalg.norm(qfim_from_slds(rho, slds).matrix))
    worst = 0.0
    for j in range(n):
        rho_L = rho @ ops[j]
        for k in range(j + 1, n):
            worst = max(worst, abs(float(np.trace(rho_L @ ops[k]).imag)))
    residual = worst / max(1.0, F_norm)
    return residual <= tol, residual


def diagonalize_qfim(F: QFIM) -> tuple[np.ndarray, np.ndarray]:
    """Orthogonal ``Q`` with ``Q F Q^T`` diagonal, eigenvalues ascending.

    Rows of ``Q`` are the eigenvectors; each row's sign is fixed so that
    its first component above rounding level is positive, making the
    output deterministic and reproducible.
    """
    w, V = np.linalg.eigh(F.matrix)
    for col in range(V.shape[1]):
        v = V[:, col]
        nz = np.nonzero(np.abs(v) > SIGN_CONVENTION_TOL)[0]
        if nz.size and v[nz[0]] < 0:
            V[:, col] = -v
    return V.T.copy(), w


def information_singular_tol(eigenvalues: np.ndarray) -> float:
    """Cutoff below which an information eigenvalue counts as zero."""
    top = float(np.max(eigenvalues, initial=0.0))
    return 1e-12 * top if top > 0.0 else 1e-300


def singular_directions(F: QFIM, singular_tol: float | None = None) -> tuple[np.ndarray, ...]:
    """Orthonormal basis of the numerical null space of ``F`` (may be empty)."""
    Q, w = diagonalize_qfim(F)
    if singular_tol is None:
        singular_tol = information_singular_tol(w)
    return tuple(Q[i] for i in range(w.size) if w[i] <= singular_tol)


def min_total_variance(F: QFIM, M: int = 1, singular_tol: float | None = None) -> float:
    """Attainable lower bound on the summed phase variances.

    ``(1/M) sum_mu 1/F_mu`` over the QFIM eigenvalues, or ``+inf`` when
    any eigenvalue falls at or below the singular cutoff (an
    unidentifiable direction; see :func:`singular_directions`).
    """
    if M < 1:
        raise ValueError(f"measurement count M must be >= 1, got {M}")
    w = np.linalg.eigvalsh(F.matrix)
    if singular_tol is None:
        singular_tol = information_singular_tol(w)
    if w.min() <= singular_tol:
        return float("inf")
    return float(np.sum(1.0 / w)) / M


def rotated_slds(slds: SLDSet, Q: np.ndarray) -> SLDSet:
    """Recombine the SLD vector: ``L_lambda_i = sum_j Q_ij L_phi_j``."""
    Q = np.asarray(Q, dtype=float)
    n = len(slds.operators)
    if Q.shape != (n, n):
        raise DimensionMismatchError(f"Q must be {n}x{n}, got {Q.shape}")
    if np.linalg.norm(Q @ Q.T - np.eye(n)) > ORTHOGONALITY_TOL * max(1.0, float(n)):
        raise NotOrthogonalError("Q is not orthogonal within tolerance")
    ops = []
    for i in range(n):
        L = sum(Q[i, j] * slds.operators[j] for j in range(n))
        ops.append((L + L.conj().T) / 2.0)
    return SLDSet(d=slds.d, operators=tuple(ops), method=slds.method, point=slds.point)


def optimal_estimators(
    slds_rotated: SLDSet,
    lambda_point: np.ndarray,
    f_lambda: np.ndarray,
    singular_tol: float | None = None,
) -> tuple[np.ndarray, ...]:
    """Observables ``O_k = lambda_k I + L_{lambda_k} / F_{lambda_k}``.

    Requires every information eigenvalue above the singular cutoff;
    raises ``SingularInformationError`` otherwise.
    """
    lam = np.asarray(lambda_point, dtype=float)
    f = np.asarray(f_lambda, dtype=float)
    n = len(slds_rotated.operators)
    if lam.size != n or f.size != n:
        raise DimensionMismatchError(
            f"need {n} lambda values and information eigenvalues, "
            f"got {lam.size} and {f.size}"
        )
    if singular_tol is None:
        singular_tol = information_singular_tol(f)
    if np.any(f <= singular_tol):
        raise SingularInformationError(
            f"information eigenvalue {f.min():.3e} at or below cutoff "
            f"{singular_tol:.3e}; the corresponding phase is unidentifiable"
        )
    d = slds_rotated.d
    eye = np.eye(d, dtype=complex)
    return tuple(
        lam[k] * eye + slds_rotated.operators[k] / f[k] for k in range(n)
    )


def estimator_covariance(
    rho: np.ndarray,
    estimators: tuple[np.ndarray, ...] | list[np.ndarray],
    lambda_point: np.ndarray,
) -> np.ndarray:
    """Symmetrized covariance ``Re Tr[rho (O_j O_k + O_k O_j)/2] - l_j l_k``."""
    rho = np.asarray(rho, dtype=complex)
    lam = np.asarray(lambda_point, dtype=float)
    n = len(estimators)
    if lam.size != n:
        raise DimensionMismatchError(f"need {n} lambda values, got {lam.size}")
    rho_O = [rho @ np.asarray(O, dtype=complex) for O in estimators]
    C = np.empty((n, n))
    for j in range(n):
        for k in range(j, n):
            sym = float(np.trace(rho_O[j] @ estimators[k]).real)
            C[j, k] = C[k, j] = sym - lam[j] * lam[k]
    return C


def crb_report(
    rho: np.ndarray,
    slds: SLDSet,
    phases: np.ndarray,
    M: int = 1,
) -> CRBReport:
    """Full bound analysis for a state, its SLDs, and the true phase point."""
    phases = np.asarray(phases, dtype=float)
    F = qfim_from_slds(rho, slds)
    attainable, residual = attainability_check(rho, slds)
    Q, w = diagonalize_qfim(F)
    mtv = min_total_variance(F, M)
    if not np.isfinite(mtv):
        return CRBReport(
            attainable=attainable,
            max_im_residual=residual,
            qfim_eigenvalues=w,
            rotation=Q,
            min_total_variance=mtv,
            measurement_count=M,
            singular_directions=singular_directions(F),
        )
    lam = Q @ phases
    rotated = rotated_slds(slds, Q)
    estimators = optimal_estimators(rotated, lam, w)
    cov = estimator_covariance(rho, estimators, lam)
    return CRBReport(
        attainable=attainable,
        max_im_residual=residual,
        qfim_eigenvalues=w,
        rotation=Q,
        min_total_variance=mtv,
        measurement_count=M,
        estimators=estimators,
        estimator_covariance=cov,
        lambda_point=lam,
    )


def white_noise_crb_report(state: WhiteNoiseState, M: int = 1) -> CRBReport:
    """Bound analysis of a white-noise state using its closed-form SLDs."""
    return crb_report(state.rho, sld_closed_form(state), state.model.phases, M=M)
