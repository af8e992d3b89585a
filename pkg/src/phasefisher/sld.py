"""Symmetric logarithmic derivatives (SLDs) by three independent routes.

An SLD for parameter ``phi_k`` is a Hermitian ``L_k`` solving

    d rho / d phi_k = (rho L_k + L_k rho) / 2.

Routes implemented:

* ``sld_closed_form``: the analytic solution for the white-noise family,
  ``L_k = [2 d eta / (2 + (d - 2) eta)] dP_k``, equal to
  ``2 tanh(alpha/2) dP_k`` in terms of the exponential-form coefficient.
* ``sld_eigenbasis``: the generic spectral solve, valid for any state
  with the derivative supported where ``lambda_m + lambda_n > 0``.
* ``sld_series``: the nested-commutator series
  ``L = sum_n f_{2n} G^{x 2n}(dG)`` for exponential states
  ``rho = exp(G)``, where ``f(t) = tanh(t/2)/(t/2)``; its even-order
  Taylor coefficients come from Bernoulli numbers.

The series converges only for ``alpha < pi`` (the generating function has
poles at ``t = +/- i pi``); evaluation is refused at ``alpha >= pi - 0.1``.
The closed form is authoritative everywhere, including ``eta = 1``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .exceptions import (
    ConvergenceDomainError,
    DimensionMismatchError,
    EtaEndpointError,
    NMaxTooLargeError,
    SupportViolationError,
)
from .linalg import commutator, hermitian_eig
from .states import PhaseModel, WhiteNoiseState, build_projector, projector_derivative

BERNOULLI_N_MAX = 64
SERIES_N_MAX = 48
SERIES_ALPHA_LIMIT = math.pi - 0.1


@dataclass(frozen=True)
class SLDSet:
    """A family of SLD operators at one parameter point.

    For the phase family there are ``d - 1`` of them and ``operators[i]``
    is the SLD for ``phi_{i+1}``; the generic solver supports any number
    of parameters.  ``method`` records the construction route; ``point``
    is the ``(model, eta)`` pair when the set came from a white-noise
    state, ``None`` for generic numeric input.
    """

    d: int
    operators: tuple[np.ndarray, ...]
    method: str
    point: tuple[PhaseModel, float] | None = None

    def __post_init__(self) -> None:
        for op in self.operators:
            if np.asarray(op).shape != (self.d, self.d):
                raise DimensionMismatchError(
                    f"every SLD must be {self.d}x{self.d}, got {np.asarray(op).shape}"
                )


@dataclass(frozen=True)
class SeriesSpec:
    """Even-order generating-function coefficients ``f_0, f_2, ..``.

    ``n_max`` counts the even-order terms kept; coefficients alternate in
    sign starting from ``f_0 = 1``.
    """

    n_max: int
    coefficients: np.ndarray


def bernoulli_numbers(n_max: int) -> np.ndarray:
    """Bernoulli numbers ``B_0..B_{n_max}`` (convention ``B_1 = -1/2``).

    Computed from the defining recurrence
    ``sum_{k=0}^{n} C(n+1, k) B_k = 0`` in exact rational arithmetic, then
    converted to float.  The recurrence is hopelessly ill-conditioned in
    floating point, hence the ``Fraction`` detour.
    """
    if n_max > BERNOULLI_N_MAX:
        raise NMaxTooLargeError(
            f"n_max must be <= {BERNOULLI_N_MAX} to stay within float precision"
        )
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    B = [Fraction(1)]
    for n in range(1, n_max + 1):
        acc = Fraction(0)
        for k in range(n):
            acc += math.comb(n + 1, k) * B[k]
        B.append(-acc / (n + 1))
    return np.array([float(b) for b in B])


def generating_coefficients(n_max: int) -> SeriesSpec:
    """First ``n_max`` even-order Taylor coefficients of ``tanh(t/2)/(t/2)``.

    ``f_{2n} = 4 (4^{n+1} - 1) B_{2n+2} / (2n+2)!``; evaluated exactly and
    converted to float at the end.
    """
    if n_max > SERIES_N_MAX:
        raise NMaxTooLargeError(f"n_max must be <= {SERIES_N_MAX}")
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    # exact Bernoulli fractions up to B_{2 n_max}
    B = [Fraction(1)]
    for n in range(1, 2 * n_max + 1):
        acc = Fraction(0)
        for k in range(n):
            acc += math.comb(n + 1, k) * B[k]
        B.append(-acc / (n + 1))
    coeffs = []
    for n in range(n_max):
        f = Fraction(4 * (4 ** (n + 1) - 1)) * B[2 * n + 2] / math.factorial(2 * n + 2)
        coeffs.append(float(f))
    return SeriesSpec(n_max=n_max, coefficients=np.array(coeffs))


def sld_closed_form(state: WhiteNoiseState) -> SLDSet:
    """Analytic SLDs ``[2 d eta / (2 + (d - 2) eta)] dP_k``.

    Valid on all of ``eta in [0, 1]``; at ``eta = 1`` the coefficient is 2.
    """
    d = state.d
    coeff = 2.0 * d * state.eta / (2.0 + (d - 2) * state.eta)
    ops = tuple(coeff * projector_derivative(state.model, k) for k in range(1, d))
    return SLDSet(d=d, operators=ops, method="closed_form", point=(state.model, state.eta))


def closed_form_coefficient(state: WhiteNoiseState) -> float:
    """The scalar multiplying ``dP_k`` in the closed-form SLD."""
    return 2.0 * state.d * state.eta / (2.0 + (state.d - 2) * state.eta)


def default_support_tol(eigenvalues: np.ndarray) -> float:
    """Scale-invariant support cutoff: ``1e-12`` times the top eigenvalue."""
    top = float(np.max(eigenvalues)) if eigenvalues.size else 0.0
    return 1e-12 * max(top, 0.0)


def sld_eigenbasis(
    rho: np.ndarray,
    drho: list[np.ndarray] | tuple[np.ndarray, ...],
    support_tol: float | None = None,
) -> SLDSet:
    """Generic SLDs from the spectral decomposition of ``rho``.

    In the eigenbasis, ``(L_k)_{mn} = 2 (drho_k)_{mn} / (lambda_m +
    lambda_n)`` wherever the denominator exceeds ``support_tol``; pairs at
    or below the cutoff contribute zero.  If the derivative has weight on
    such a pair beyond rounding level, the defining equation has no
    solution and ``SupportViolationError`` is raised.
    """
    eig = hermitian_eig(rho)
    w, V = eig.eigenvalues, eig.eigenvectors
    if support_tol is None:
        support_tol = default_support_tol(w)
    denom = w[:, None] + w[None, :]
    on_support = denom > support_tol
    ops = []
    for dr in drho:
        dr = np.asarray(dr, dtype=complex)
        if dr.shape != rho.shape:
            raise DimensionMismatchError(
                f"drho shape {dr.shape} does not match rho shape {rho.shape}"
            )
        dr_eig = V.conj().T @ dr @ V
        off = np.abs(dr_eig[~on_support])
        if off.size and off.max() > 1e-8 * max(1.0, float(np.linalg.norm(dr))):
            raise SupportViolationError(
                "derivative has weight outside the support of rho "
                f"(max |element| = {off.max():.3e}); SLD equation unsolvable"
            )
        L_eig = np.zeros_like(dr_eig)
        np.divide(2.0 * dr_eig, denom, out=L_eig, where=on_support)
        L = V @ L_eig @ V.conj().T
        ops.append((L + L.conj().T) / 2.0)
    return SLDSet(d=rho.shape[0], operators=tuple(ops), method="eigenbasis", point=None)


def sld_series(state: WhiteNoiseState, spec: SeriesSpec) -> SLDSet:
    """Partial sums of the nested-commutator series for the SLD.

    Requires ``eta`` strictly inside (0, 1) and ``alpha < pi - 0.1``.  The
    commutators are applied literally (no scalar shortcut): with
    ``G = alpha P + beta I`` and ``dG_k = alpha dP_k``,

        L_k = sum_{n < n_max} f_{2n} G^{x 2n}(dG_k),

    each step nesting two more commutators with ``G``.
    """
    if state.eta <= 0.0 or state.eta >= 1.0:
        raise EtaEndpointError(
            f"series route needs eta strictly inside (0, 1), got {state.eta}"
        )
    alpha = state.alpha
    if alpha >= SERIES_ALPHA_LIMIT:
        raise ConvergenceDomainError(
            f"alpha = {alpha:.6g} is outside the convergence domain "
            f"(requires alpha < pi - 0.1 ~ {SERIES_ALPHA_LIMIT:.6g})"
        )
    d = state.d
    G = alpha * build_projector(state.model) + state.beta * np.eye(d, dtype=complex)
    f = spec.coefficients
    ops = []
    for k in range(1, d):
        dG = alpha * projector_derivative(state.model, k)
        term = dG
        L = f[0] * term
        for n in range(1, spec.n_max):
            term = commutator(G, commutator(G, term))
            L = L + f[n] * term
        ops.append((L + L.conj().T) / 2.0)
    return SLDSet(d=d, operators=tuple(ops), method="series", point=(state.model, state.eta))


def verify_sld(rho: np.ndarray, drho_k: np.ndarray, L_k: np.ndarray) -> float:
    """Normalized residual of the SLD defining equation.

    Returns ``||drho - (rho L + L rho)/2||_F / max(1, ||drho||_F)``.
    """
    rho = np.asarray(rho, dtype=complex)
    drho_k = np.asarray(drho_k, dtype=complex)
    L_k = np.asarray(L_k, dtype=complex)
    if not (rho.shape == drho_k.shape == L_k.shape):
        raise DimensionMismatchError(
            f"shapes differ: rho {rho.shape}, drho {drho_k.shape}, L {L_k.shape}"
        )
    resid = drho_k - (rho @ L_k + L_k @ rho) / 2.0
    return float(np.linalg.norm(resid) / max(1.0, np.linalg.norm(drho_k)))
