"""Parametrized pure states, their white-noise mixtures and derivatives.

The state family is ``|Psi(phi)> = sum_k c_k e^{i phi_k} |k>`` with real
amplitudes ``c_k`` and the gauge ``phi_0 = 0`` (a global phase carries no
information, so only ``phi_1..phi_{d-1}`` are stored).  Mixing with white
noise gives ``rho = eta P + (1 - eta)/d I`` where ``P`` is the projector
onto ``|Psi>`` and ``eta`` is the channel reliability.

For ``eta`` strictly inside (0, 1) the mixture is also an exponential
state ``rho = exp(alpha P + beta I)`` with

    alpha = ln[((d - 1) eta + 1) / (1 - eta)],   beta = ln[(1 - eta) / d],

which is what makes a closed-form symmetric logarithmic derivative
possible (see :mod:`phasefisher.sld`).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .exceptions import (
    EtaOutOfRangeError,
    NotNormalizedError,
    NotOrthonormalError,
)

NORMALIZATION_TOL = 1e-10
ORTHONORMALITY_TOL = 1e-10


def _frozen_array(values, dtype) -> np.ndarray:
    arr = np.array(values, dtype=dtype)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class PhaseModel:
    """Amplitudes and free phases of the pure state.

    ``amplitudes`` has length ``d`` (real, possibly negative, unit sum of
    squares); ``phases`` has length ``d - 1`` and stores
    ``phi_1..phi_{d-1}`` in radians.  ``phi_0`` is fixed at zero and not
    stored.
    """

    amplitudes: np.ndarray
    phases: np.ndarray

    def __post_init__(self) -> None:
        amps = _frozen_array(self.amplitudes, float)
        phases = _frozen_array(self.phases, float)
        if amps.ndim != 1 or amps.size < 2:
            raise ValueError("amplitudes must be a 1-d vector of length >= 2")
        if phases.ndim != 1 or phases.size != amps.size - 1:
            raise ValueError(
                f"phases must have length d - 1 = {amps.size - 1}, got {phases.size}"
            )
        if not np.isfinite(amps).all() or not np.isfinite(phases).all():
            raise ValueError("amplitudes and phases must be finite")
        norm_sq = float(np.sum(amps**2))
        if abs(norm_sq - 1.0) > NORMALIZATION_TOL:
            raise NotNormalizedError(
                f"sum of squared amplitudes is {norm_sq:.12g}, expected 1 "
                f"within {NORMALIZATION_TOL:.1e}"
            )
        object.__setattr__(self, "amplitudes", amps)
        object.__setattr__(self, "phases", phases)

    @property
    def d(self) -> int:
        return self.amplitudes.size


@dataclass(frozen=True)
class WhiteNoiseState:
    """White-noise mixture ``eta P + (1 - eta)/d I`` with cached data.

    ``alpha``/``beta`` are the exponential-form coefficients; ``alpha`` is
    ``+inf`` (and ``beta`` ``-inf``) at ``eta = 1`` where the exponential
    form degenerates.
    """

    model: PhaseModel
    eta: float
    rho: np.ndarray = field(repr=False)
    alpha: float
    beta: float

    @property
    def d(self) -> int:
        return self.model.d


@dataclass(frozen=True)
class LudersState:
    """Rank-``r`` analogue: ``(eta / r) P_tilde + (1 - eta)/d I``.

    ``basis`` holds the ``r`` orthonormal vectors spanning the projector's
    range as rows of an ``(r, d)`` array.  There is no closed-form SLD for
    ``r > 1`` here; these states are handled by the generic numeric routes.
    """

    r: int
    basis: np.ndarray = field(repr=False)
    eta: float
    rho: np.ndarray = field(repr=False)

    @property
    def d(self) -> int:
        return self.basis.shape[1]


def build_pure_state(model: PhaseModel) -> np.ndarray:
    """Complex state vector with components ``c_k e^{i phi_k}`` (phi_0 = 0)."""
    phases = np.concatenate(([0.0], model.phases))
    return model.amplitudes * np.exp(1j * phases)


def build_projector(model: PhaseModel) -> np.ndarray:
    """Rank-1 projector ``|Psi><Psi|``."""
    psi = build_pure_state(model)
    return np.outer(psi, psi.conj())


def _check_eta(eta: float) -> float:
    eta = float(eta)
    if not np.isfinite(eta) or eta < 0.0 or eta > 1.0:
        raise EtaOutOfRangeError(f"eta must lie in [0, 1], got {eta}")
    return eta


def build_white_noise_state(model: PhaseModel, eta: float) -> WhiteNoiseState:
    """Mix the pure state with white noise of reliability ``eta``."""
    eta = _check_eta(eta)
    d = model.d
    rho = eta * build_projector(model) + ((1.0 - eta) / d) * np.eye(d, dtype=complex)
    if eta == 1.0:
        alpha, beta = np.inf, -np.inf
    else:
        alpha = float(np.log(((d - 1) * eta + 1.0) / (1.0 - eta)))
        beta = float(np.log((1.0 - eta) / d))
    rho.setflags(write=False)
    return WhiteNoiseState(model=model, eta=eta, rho=rho, alpha=alpha, beta=beta)


def _check_phase_index(model: PhaseModel, k: int) -> int:
    k = int(k)
    if k < 1 or k > model.d - 1:
        raise IndexError(f"phase index k must lie in 1..{model.d - 1}, got {k}")
    return k


def derivative_operator_A(model: PhaseModel, k: int) -> np.ndarray:
    """Rank-1 operator ``|d Psi / d phi_k><Psi| = i c_k e^{i phi_k} |k><Psi|``."""
    k = _check_phase_index(model, k)
    psi = build_pure_state(model)
    ket_k = np.zeros(model.d, dtype=complex)
    ket_k[k] = 1j * model.amplitudes[k] * np.exp(1j * model.phases[k - 1])
    return np.outer(ket_k, psi.conj())


def projector_derivative(model: PhaseModel, k: int) -> np.ndarray:
    """Derivative of the projector with respect to ``phi_k``: ``A_k + A_k^dag``.

    Hermitian and traceless.
    """
    A = derivative_operator_A(model, k)
    return A + A.conj().T


def white_noise_derivative(state: WhiteNoiseState, k: int) -> np.ndarray:
    """``d rho / d phi_k = eta * dP/dphi_k`` (only the projector part moves)."""
    return state.eta * projector_derivative(state.model, k)


def phase_rotated_basis(basis: np.ndarray, phases: np.ndarray) -> np.ndarray:
    """Apply the diagonal phase unitary ``diag(1, e^{i phi_1}, ...)`` to rows.

    This is how a numerically-given orthonormal family inherits the same
    phase parametrization as the pure-state family; orthonormality is
    preserved for every phase vector.
    """
    basis = np.asarray(basis, dtype=complex)
    phases = np.asarray(phases, dtype=float)
    if phases.size != basis.shape[1] - 1:
        raise ValueError(
            f"phases must have length d - 1 = {basis.shape[1] - 1}, got {phases.size}"
        )
    u = np.exp(1j * np.concatenate(([0.0], phases)))
    return basis * u[np.newaxis, :]


def build_luders_state(basis: np.ndarray, eta: float) -> LudersState:
    """Rank-``r`` mixture from ``r`` orthonormal vectors (rows of ``basis``)."""
    eta = _check_eta(eta)
    B = np.asarray(basis, dtype=complex)
    if B.ndim != 2:
        raise ValueError("basis must be an (r, d) array of row vectors")
    r, d = B.shape
    if r < 1 or r > d:
        raise NotOrthonormalError(f"need 1 <= r <= d, got r={r}, d={d}")
    gram = B @ B.conj().T
    if np.linalg.norm(gram - np.eye(r)) > ORTHONORMALITY_TOL * max(1.0, float(r)):
        raise NotOrthonormalError("basis rows are not orthonormal within tolerance")
    proj = B.T @ B.conj()  # sum of |v_m><v_m|
    rho = (eta / r) * proj + ((1.0 - eta) / d) * np.eye(d, dtype=complex)
    B = B.copy()
    B.setflags(write=False)
    rho.setflags(write=False)
    return LudersState(r=r, basis=B, eta=eta, rho=rho)
