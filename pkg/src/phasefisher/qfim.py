"""Quantum Fisher information matrices by four independent methods.

For the white-noise family the QFIM has the compact closed form

    F_jk = [4 d eta^2 / (2 + (d - 2) eta)] (c_j^2 delta_jk - c_j^2 c_k^2),

proportional to the pure-state QFIM through the ratio
``xi(eta) = d eta^2 / (2 + (d - 2) eta) <= 1``.  The numeric routes
(SLD trace formula, spectral pair sum, fidelity finite differences) apply
to any differentiable family of density matrices and serve as mutual
cross-checks.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Callable, Sequence

import numpy as np

from .exceptions import DimensionMismatchError, StepOutOfRangeError, SupportViolationError
from .linalg import _fidelity_from_sqrt, hermitian_eig, matrix_sqrt_psd
from .sld import SLDSet, default_support_tol
from .states import (
    PhaseModel,
    WhiteNoiseState,
    build_luders_state,
    build_pure_state,
    build_white_noise_state,
    phase_rotated_basis,
)

SYMMETRY_TOL = 1e-10

FD_STEP_MIN = 1e-4
FD_STEP_MAX = 1e-1
FD_RICHARDSON_TRIGGER = 1e-4


@dataclass(frozen=True)
class QFIM:
    """Real symmetric Fisher information matrix with a method tag."""

    matrix: np.ndarray
    method: str

    def __post_init__(self) -> None:
        M = np.asarray(self.matrix, dtype=float)
        if M.ndim != 2 or M.shape[0] != M.shape[1]:
            raise DimensionMismatchError(f"QFIM must be square, got shape {M.shape}")
        dev = float(np.linalg.norm(M - M.T))
        if dev > SYMMETRY_TOL * max(1.0, float(np.linalg.norm(M))):
            raise ValueError(f"QFIM asymmetry {dev:.3e} exceeds tolerance")
        M = (M + M.T) / 2.0
        M.setflags(write=False)
        object.__setattr__(self, "matrix", M)

    @property
    def n(self) -> int:
        return self.matrix.shape[0]


def qfim_from_slds(rho: np.ndarray, slds: SLDSet) -> QFIM:
    """``F_jk = Re Tr[rho L_j L_k]`` (the symmetrized trace formula)."""
    rho = np.asarray(rho, dtype=complex)
    n = len(slds.operators)
    if rho.shape != (slds.d, slds.d):
        raise DimensionMismatchError(
            f"rho shape {rho.shape} does not match SLD dimension {slds.d}"
        )
    rho_L = [rho @ L for L in slds.operators]
    F = np.empty((n, n))
    for j in range(n):
        for k in range(j, n):
            val = float(np.trace(rho_L[j] @ slds.operators[k]).real)
            F[j, k] = F[k, j] = val
    return QFIM(matrix=F, method="from_slds")


def qfim_closed_form(state: WhiteNoiseState) -> QFIM:
    """Closed-form QFIM of the white-noise family (valid on eta in [0, 1])."""
    c2 = state.model.amplitudes[1:] ** 2
    pref = 4.0 * state.d * state.eta**2 / (2.0 + (state.d - 2) * state.eta)
    F = pref * (np.diag(c2) - np.outer(c2, c2))
    return QFIM(matrix=F, method="closed_form")


def qfim_pure(model: PhaseModel) -> QFIM:
    """QFIM of the noiseless pure state from its analytic derivatives.

    ``F_jk = 4 Re(<d_j Psi|d_k Psi> - <d_j Psi|Psi><Psi|d_k Psi>)``; with
    this parametrization it evaluates to ``4 (c_j^2 delta_jk - c_j^2 c_k^2)``.
    """
    psi = build_pure_state(model)
    d = model.d
    dpsi = np.zeros((d - 1, d), dtype=complex)
    for k in range(1, d):
        dpsi[k - 1, k] = 1j * model.amplitudes[k] * np.exp(1j * model.phases[k - 1])
    overlaps = dpsi @ dpsi.conj().T  # <d_k Psi | d_j Psi>
    with_psi = dpsi @ psi.conj()  # <Psi | d_j Psi>
    F = 4.0 * (overlaps.conj() - np.outer(with_psi.conj(), with_psi)).real
    return QFIM(matrix=(F + F.T) / 2.0, method="pure")


def qfim_spectral(
    rho: np.ndarray,
    drho: Sequence[np.ndarray],
    support_tol: float | None = None,
) -> QFIM:
    """Spectral pair-sum QFIM.

    In the eigenbasis of ``rho``,

        F_ab = sum_{m,n} 2 Re[(drho_a)_{mn} (drho_b)_{nm}] / (lambda_m + lambda_n)

    restricted to pairs with ``lambda_m + lambda_n > support_tol``.  This
    needs no eigenvector derivatives, so it is safe through degenerate
    spectra, and it agrees with ``qfim_from_slds`` over ``sld_eigenbasis``
    by construction.
    """
    rho = np.asarray(rho, dtype=complex)
    eig = hermitian_eig(rho)
    w, V = eig.eigenvalues, eig.eigenvectors
    if support_tol is None:
        support_tol = default_support_tol(w)
    denom = w[:, None] + w[None, :]
    on_support = denom > support_tol
    weights = np.zeros_like(denom)
    np.divide(2.0, denom, out=weights, where=on_support)
    dr_eig = []
    for dr in drho:
        dr = np.asarray(dr, dtype=complex)
        if dr.shape != rho.shape:
            raise DimensionMismatchError(
                f"drho shape {dr.shape} does not match rho shape {rho.shape}"
            )
        E = V.conj().T @ dr @ V
        off = np.abs(E[~on_support])
        if off.size and off.max() > 1e-8 * max(1.0, float(np.linalg.norm(dr))):
            raise SupportViolationError(
                "derivative has weight outside the support of rho "
                f"(max |element| = {off.max():.3e})"
            )
        dr_eig.append(E)
    n = len(dr_eig)
    F = np.empty((n, n))
    for a in range(n):
        for b in range(a, n):
            val = float(np.sum(weights * (dr_eig[a] * dr_eig[b].conj()).real))
            F[a, b] = F[b, a] = val
    return QFIM(matrix=F, method="spectral")


def white_noise_family(model: PhaseModel, eta: float) -> Callable[[np.ndarray], np.ndarray]:
    """Map ``phases -> rho`` for the white-noise family at fixed amplitudes."""

    def builder(phases: np.ndarray) -> np.ndarray:
        return build_white_noise_state(replace(model, phases=np.asarray(phases, float)), eta).rho

    return builder


def luders_family(basis: np.ndarray, eta: float) -> Callable[[np.ndarray], np.ndarray]:
    """Map ``phases -> rho`` for a rank-r mixture whose basis rows pick up
    the componentwise phases ``diag(1, e^{i phi_1}, ...)``."""
    basis = np.asarray(basis, dtype=complex)

    def builder(phases: np.ndarray) -> np.ndarray:
        return build_luders_state(phase_rotated_basis(basis, phases), eta).rho

    return builder


def finite_difference_drho(
    builder: Callable[[np.ndarray], np.ndarray],
    phases: np.ndarray,
    step: float = 1e-5,
) -> list[np.ndarray]:
    """Central-difference derivatives of ``builder`` in each phase direction."""
    phases = np.asarray(phases, dtype=float)
    out = []
    for j in range(phases.size):
        e = np.zeros_like(phases)
        e[j] = step
        out.append((builder(phases + e) - builder(phases - e)) / (2.0 * step))
    return out


def _qfim_fd_at_step(
    builder: Callable[[np.ndarray], np.ndarray],
    point: np.ndarray,
    h: float,
) -> np.ndarray:
    """Raw second-difference QFIM estimate at one step size."""
    sqrt_center = matrix_sqrt_psd(builder(point))

    def fid(offset: np.ndarray) -> float:
        return _fidelity_from_sqrt(sqrt_center, builder(point + offset))

    n = point.size
    F = np.empty((n, n))
    for j in range(n):
        e = np.zeros(n)
        e[j] = h
        # F_U(0) = 1 exactly for identical states
        F[j, j] = -2.0 * (fid(e) + fid(-e) - 2.0) / h**2
    for j in range(n):
        for k in range(j + 1, n):
            ej = np.zeros(n)
            ek = np.zeros(n)
            ej[j] = h
            ek[k] = h
            mixed = (
                fid(ej + ek) - fid(ej - ek) - fid(-ej + ek) + fid(-ej - ek)
            ) / (4.0 * h**2)
            F[j, k] = F[k, j] = -2.0 * mixed
    return F


def qfim_fidelity_fd(
    state_builder: Callable[[np.ndarray], np.ndarray],
    point: np.ndarray,
    step: float = 1e-3,
) -> QFIM:
    """QFIM from second finite differences of the Uhlmann fidelity.

    Diagonal entries use the three-point second difference of
    ``F_U(rho(phi), rho(phi + u))`` in each direction scaled by -2;
    off-diagonal entries use the four-point mixed difference.  The
    estimate is refined by Richardson extrapolation against the half-step
    result whenever the two differ by more than ``1e-4`` relative.
    """
    if not (FD_STEP_MIN <= step <= FD_STEP_MAX):
        raise StepOutOfRangeError(
            f"step must lie in [{FD_STEP_MIN:g}, {FD_STEP_MAX:g}], got {step:g}"
        )
    point = np.asarray(point, dtype=float)
    F_h = _qfim_fd_at_step(state_builder, point, step)
    F_half = _qfim_fd_at_step(state_builder, point, step / 2.0)
    scale = max(float(np.linalg.norm(F_half)), 1e-300)
    if float(np.linalg.norm(F_h - F_half)) / scale > FD_RICHARDSON_TRIGGER:
        F = (4.0 * F_half - F_h) / 3.0
    else:
        F = F_half
    return QFIM(matrix=(F + F.T) / 2.0, method="fidelity_fd")


def ratio_xi(eta: float, d: int) -> float:
    """Shrinking ratio ``xi(eta) = d eta^2 / (2 + (d - 2) eta)``.

    Monotonically increasing from 0 at ``eta = 0`` to 1 at ``eta = 1``;
    the white-noise QFIM equals ``xi`` times the pure-state QFIM.
    """
    if d < 2:
        raise ValueError(f"d must be >= 2, got {d}")
    return d * eta**2 / (2.0 + (d - 2) * eta)


def monotonicity_gap(state: WhiteNoiseState) -> float:
    """Smallest eigenvalue of ``eta F_pure - F_noisy`` (>= 0 up to rounding).

    White noise can never amplify information: the noisy QFIM is bounded
    by ``eta`` times the pure-state QFIM as a matrix inequality.
    """
    gap_matrix = state.eta * qfim_pure(state.model).matrix - qfim_closed_form(state).matrix
    return float(np.linalg.eigvalsh((gap_matrix + gap_matrix.T) / 2.0).min())
