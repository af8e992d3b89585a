"""SLD routes: Bernoulli/series coefficients, closed form, spectral solve."""

from __future__ import annotations

import mpmath as mp
import numpy as np
import pytest
import sympy

from phasefisher import (
    ConvergenceDomainError,
    DimensionMismatchError,
    EtaEndpointError,
    NMaxTooLargeError,
    PhaseModel,
    SupportViolationError,
    bernoulli_numbers,
    build_white_noise_state,
    closed_form_coefficient,
    generating_coefficients,
    projector_derivative,
    sld_closed_form,
    sld_eigenbasis,
    sld_series,
    verify_sld,
    white_noise_derivative,
)
from conftest import random_instances, random_model


def uniform_state(d, eta, phases=None):
    if phases is None:
        phases = np.linspace(0.1, 1.0, d - 1)
    return build_white_noise_state(PhaseModel(np.ones(d) / np.sqrt(d), phases), eta)


# ---------------------------------------------------------------------------
# coefficients


def test_bernoulli_base_cases():
    B = bernoulli_numbers(6)
    assert B[0] == 1.0
    assert B[1] == -0.5
    assert B[2] == pytest.approx(1 / 6, rel=1e-15)
    assert B[4] == pytest.approx(-1 / 30, rel=1e-15)
    assert B[6] == pytest.approx(1 / 42, rel=1e-15)
    assert B[3] == B[5] == 0.0


def test_bernoulli_against_sympy():
    # sympy switched to the B_1 = +1/2 convention; even indices agree
    B = bernoulli_numbers(64)
    for n in range(0, 65, 2):
        expect = float(sympy.bernoulli(n))
        assert B[n] == pytest.approx(expect, rel=1e-14), n
    for n in range(3, 64, 2):
        assert B[n] == 0.0


def test_bernoulli_cap():
    with pytest.raises(NMaxTooLargeError):
        bernoulli_numbers(65)


def test_generating_coefficients_exact_values():
    spec = generating_coefficients(3)
    assert spec.coefficients[0] == 1.0
    assert spec.coefficients[1] == pytest.approx(-1 / 12, abs=1e-14)
    assert spec.coefficients[2] == pytest.approx(1 / 120, abs=1e-14)


def test_generating_coefficients_against_tanh_taylor():
    # independent oracle: Taylor coefficients of tanh(t/2)/(t/2) derived
    # from mpmath's expansion of tanh; f_{2n} = tanh_{2n+1} / 4^n
    mp.mp.dps = 40
    n_terms = 16
    tay = mp.taylor(mp.tanh, 0, 2 * n_terms + 1)
    spec = generating_coefficients(n_terms)
    for n in range(n_terms):
        expect = float(tay[2 * n + 1] / mp.mpf(4) ** n)
        assert spec.coefficients[n] == pytest.approx(expect, rel=1e-14), n
    # odd orders of the generating function vanish (tanh is odd);
    # mpmath's high-precision expansion leaves ~1e-44 noise there
    for m in range(0, 2 * n_terms, 2):
        assert abs(float(tay[m])) <= 1e-30


def test_generating_coefficients_alternate_in_sign():
    spec = generating_coefficients(20)
    signs = np.sign(spec.coefficients)
    assert np.array_equal(signs, (-1.0) ** np.arange(20))


def test_generating_coefficients_cap():
    with pytest.raises(NMaxTooLargeError):
        generating_coefficients(49)


# ---------------------------------------------------------------------------
# closed form


def test_closed_form_zero_noise_floor():
    slds = sld_closed_form(uniform_state(3, 0.0))
    for op in slds.operators:
        assert np.allclose(op, 0.0)


def test_closed_form_golden_coefficient():
    state = uniform_state(3, 0.5)
    coeff = closed_form_coefficient(state)
    assert coeff == pytest.approx(1.2, abs=1e-15)
    assert coeff == pytest.approx(2 * np.tanh(state.alpha / 2), abs=1e-13)
    # the operators are exactly coeff * dP_k
    slds = sld_closed_form(state)
    for k, op in enumerate(slds.operators, start=1):
        assert np.allclose(op, coeff * projector_derivative(state.model, k))


def test_closed_form_pure_limit_coefficient():
    state = uniform_state(2, 1.0)
    assert closed_form_coefficient(state) == pytest.approx(2.0, abs=1e-15)
    # eigenbasis solver at eta just below 1 approaches the same operators
    near = uniform_state(2, 1.0 - 1e-8)
    drho = [white_noise_derivative(near, 1)]
    eigen = sld_eigenbasis(near.rho, drho)
    closed = sld_closed_form(state)
    assert np.linalg.norm(eigen.operators[0] - closed.operators[0]) <= 1e-7


def test_closed_form_satisfies_defining_equation():
    for model, eta in random_instances(seed=101, count=20, d_max=9):
        state = build_white_noise_state(model, eta)
        slds = sld_closed_form(state)
        for k, op in enumerate(slds.operators, start=1):
            drho = white_noise_derivative(state, k)
            assert verify_sld(state.rho, drho, op) <= 1e-12
            assert np.linalg.norm(op - op.conj().T) <= 1e-12
            assert abs(np.trace(state.rho @ op)) <= 1e-10


# ---------------------------------------------------------------------------
# eigenbasis solver


def test_eigenbasis_zero_derivative():
    state = uniform_state(3, 0.4)
    slds = sld_eigenbasis(state.rho, [np.zeros((3, 3)), np.zeros((3, 3))])
    for op in slds.operators:
        assert np.allclose(op, 0.0)


def test_eigenbasis_matches_closed_form():
    # cross-method agreement on 100 seeded random instances
    for model, eta in random_instances(seed=202, count=100, d_min=2, d_max=12):
        state = build_white_noise_state(model, eta)
        drho = [white_noise_derivative(state, k) for k in range(1, model.d)]
        eigen = sld_eigenbasis(state.rho, drho)
        closed = sld_closed_form(state)
        for a, b in zip(eigen.operators, closed.operators):
            assert np.linalg.norm(a - b) <= 1e-9


def test_eigenbasis_rank_one_state():
    state = uniform_state(4, 1.0)
    drho = [white_noise_derivative(state, k) for k in range(1, 4)]
    eigen = sld_eigenbasis(state.rho, drho)
    for k, op in enumerate(eigen.operators, start=1):
        assert np.linalg.norm(op - 2.0 * projector_derivative(state.model, k)) <= 1e-8


def test_eigenbasis_support_violation():
    rho = np.diag([1.0, 0.0, 0.0]).astype(complex)
    bad = np.zeros((3, 3), dtype=complex)
    bad[1, 1], bad[2, 2] = 1.0, -1.0  # weight entirely outside the support
    with pytest.raises(SupportViolationError):
        sld_eigenbasis(rho, [bad])


# ---------------------------------------------------------------------------
# series route


def test_series_single_term_is_alpha_times_derivative():
    state = uniform_state(3, 0.5)
    slds = sld_series(state, generating_coefficients(1))
    for k, op in enumerate(slds.operators, start=1):
        expect = state.alpha * projector_derivative(state.model, k)
        assert np.linalg.norm(op - expect) <= 1e-12
    assert state.alpha == pytest.approx(np.log(4.0))


def test_series_converges_on_golden_instance():
    state = uniform_state(3, 0.5)
    closed = sld_closed_form(state)
    slds = sld_series(state, generating_coefficients(20))
    for a, b in zip(slds.operators, closed.operators):
        assert np.linalg.norm(a - b) <= 1e-10


def test_series_error_decreases_monotonically():
    rng = np.random.default_rng(44)
    for eta, d in [(0.5, 3), (0.8, 4), (0.62, 6)]:
        state = build_white_noise_state(random_model(rng, d), eta)
        assert state.alpha < np.pi - 0.1
        closed = sld_closed_form(state)
        errs = []
        for n_max in range(1, 24):
            slds = sld_series(state, generating_coefficients(n_max))
            errs.append(
                max(
                    np.linalg.norm(a - b)
                    for a, b in zip(slds.operators, closed.operators)
                )
            )
        diffs = np.diff(errs[1:])  # beyond two terms
        assert np.all(diffs <= 1e-15)


def test_series_rejects_alpha_outside_domain():
    # d=16, eta=0.95 puts alpha ~ 5.7, way past pi - 0.1
    state = uniform_state(16, 0.95)
    assert state.alpha >= np.pi - 0.1
    with pytest.raises(ConvergenceDomainError):
        sld_series(state, generating_coefficients(5))


def test_series_rejects_eta_endpoints():
    with pytest.raises(EtaEndpointError):
        sld_series(uniform_state(3, 0.0), generating_coefficients(5))
    with pytest.raises(EtaEndpointError):
        sld_series(uniform_state(3, 1.0), generating_coefficients(5))


# ---------------------------------------------------------------------------
# residual helper


def test_verify_sld_exact_and_perturbed():
    state = uniform_state(4, 0.6)
    slds = sld_closed_form(state)
    drho = white_noise_derivative(state, 1)
    assert verify_sld(state.rho, drho, slds.operators[0]) <= 1e-12
    rng = np.random.default_rng(77)
    G = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    noise = 1e-3 * (G + G.conj().T) / np.linalg.norm(G + G.conj().T)
    assert verify_sld(state.rho, drho, slds.operators[0] + noise) >= 1e-5
    assert verify_sld(np.eye(2) / 2, np.zeros((2, 2)), np.zeros((2, 2))) == 0.0
    with pytest.raises(DimensionMismatchError):
        verify_sld(np.eye(2) / 2, np.zeros((3, 3)), np.zeros((2, 2)))
