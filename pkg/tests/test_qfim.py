"""Information-matrix methods and their mutual agreement."""

from __future__ import annotations

import numpy as np
import pytest

from phasefisher import (
    PhaseModel,
    StepOutOfRangeError,
    build_white_noise_state,
    finite_difference_drho,
    luders_family,
    monotonicity_gap,
    qfim_closed_form,
    qfim_fidelity_fd,
    qfim_from_slds,
    qfim_pure,
    qfim_spectral,
    ratio_xi,
    sld_closed_form,
    sld_eigenbasis,
    white_noise_derivative,
    white_noise_family,
)
from conftest import random_instances, random_model

GOLDEN = np.array([[4 / 15, -2 / 15], [-2 / 15, 4 / 15]])
GOLDEN_PURE = np.array([[8 / 9, -4 / 9], [-4 / 9, 8 / 9]])


def uniform_state(d, eta, phases=None):
    if phases is None:
        phases = np.linspace(0.2, 1.4, d - 1)
    return build_white_noise_state(PhaseModel(np.ones(d) / np.sqrt(d), phases), eta)


def drho_list(state):
    return [white_noise_derivative(state, k) for k in range(1, state.d)]


def test_from_slds_zero_noise():
    state = uniform_state(3, 0.0)
    F = qfim_from_slds(state.rho, sld_closed_form(state))
    assert np.allclose(F.matrix, 0.0)


def test_from_slds_pure_qubit():
    state = uniform_state(2, 1.0)
    F = qfim_from_slds(state.rho, sld_closed_form(state))
    assert F.matrix.shape == (1, 1)
    assert F.matrix[0, 0] == pytest.approx(1.0, abs=1e-12)


def test_from_slds_golden():
    state = uniform_state(3, 0.5)
    F = qfim_from_slds(state.rho, sld_closed_form(state))
    assert np.allclose(F.matrix, GOLDEN, atol=1e-12)


def test_closed_form_examples():
    assert np.allclose(qfim_closed_form(uniform_state(3, 0.0)).matrix, 0.0)
    assert np.allclose(qfim_closed_form(uniform_state(3, 1.0)).matrix, GOLDEN_PURE, atol=1e-12)
    assert np.allclose(qfim_closed_form(uniform_state(3, 0.5)).matrix, GOLDEN, atol=1e-12)


def test_pure_examples():
    no_info = PhaseModel(np.array([1.0, 0.0, 0.0]), np.array([0.5, 0.9]))
    assert np.allclose(qfim_pure(no_info).matrix, 0.0)
    qubit = PhaseModel(np.ones(2) / np.sqrt(2), np.array([0.3]))
    assert qfim_pure(qubit).matrix[0, 0] == pytest.approx(1.0, abs=1e-12)
    m3 = PhaseModel(np.ones(3) / np.sqrt(3), np.array([0.2, 1.4]))
    assert np.allclose(qfim_pure(m3).matrix, GOLDEN_PURE, atol=1e-12)
    assert np.allclose(
        qfim_pure(m3).matrix, qfim_closed_form(uniform_state(3, 1.0)).matrix, atol=1e-12
    )


def test_spectral_examples():
    state = uniform_state(3, 0.5)
    zero = qfim_spectral(state.rho, [np.zeros((3, 3))] * 2)
    assert np.allclose(zero.matrix, 0.0)
    F = qfim_spectral(state.rho, drho_list(state))
    assert np.allclose(F.matrix, GOLDEN, atol=1e-12)


def test_fidelity_fd_zero_noise():
    model = PhaseModel(np.ones(3) / np.sqrt(3), np.array([0.2, 1.4]))
    F = qfim_fidelity_fd(white_noise_family(model, 0.0), model.phases)
    assert np.allclose(F.matrix, 0.0, atol=1e-9)


def test_fidelity_fd_pure_qubit():
    model = PhaseModel(np.ones(2) / np.sqrt(2), np.array([0.3]))
    F = qfim_fidelity_fd(white_noise_family(model, 1.0), model.phases, step=1e-3)
    assert F.matrix[0, 0] == pytest.approx(1.0, abs=1e-6)


def test_fidelity_fd_golden():
    model = PhaseModel(np.ones(3) / np.sqrt(3), np.array([0.2, 1.4]))
    F = qfim_fidelity_fd(white_noise_family(model, 0.5), model.phases, step=1e-3)
    rel = np.linalg.norm(F.matrix - GOLDEN) / np.linalg.norm(GOLDEN)
    assert rel <= 1e-4


def test_fidelity_fd_step_range():
    model = PhaseModel(np.ones(2) / np.sqrt(2), np.array([0.3]))
    builder = white_noise_family(model, 0.5)
    with pytest.raises(StepOutOfRangeError):
        qfim_fidelity_fd(builder, model.phases, step=1e-5)
    with pytest.raises(StepOutOfRangeError):
        qfim_fidelity_fd(builder, model.phases, step=0.5)


def test_ratio_xi_values():
    assert ratio_xi(0.0, 5) == 0.0
    for d in (2, 3, 8, 64):
        assert ratio_xi(1.0, d) == pytest.approx(1.0, abs=1e-15)
    assert ratio_xi(0.5, 3) == 0.3


def test_ratio_xi_strictly_increasing_on_grid():
    etas = np.linspace(0.0, 1.0, 1000)
    for d in (2, 3, 8, 64):
        vals = np.array([ratio_xi(e, d) for e in etas])
        assert np.all(np.diff(vals) > 0)
        assert np.all(vals <= 1.0)


def test_monotonicity_gap_examples():
    assert monotonicity_gap(uniform_state(3, 1.0)) == pytest.approx(0.0, abs=1e-12)
    assert monotonicity_gap(uniform_state(3, 0.0)) == pytest.approx(0.0, abs=1e-12)
    # (eta - xi) * smallest pure eigenvalue = 0.2 * 4/9
    assert monotonicity_gap(uniform_state(3, 0.5)) == pytest.approx(4 / 45, abs=1e-12)


def test_monotonicity_gap_nonnegative_on_random_instances():
    for model, eta in random_instances(seed=303, count=40, d_max=10):
        state = build_white_noise_state(model, eta)
        assert monotonicity_gap(state) >= -1e-10


def test_method_agreement_on_random_instances():
    # pairwise agreement of all four routes: exact methods to 1e-9
    # relative, fidelity differences to 1e-4 relative
    for model, eta in random_instances(seed=404, count=100, d_min=2, d_max=12):
        state = build_white_noise_state(model, eta)
        drho = drho_list(state)
        F_closed = qfim_closed_form(state).matrix
        scale = np.linalg.norm(F_closed)
        F_sld = qfim_from_slds(state.rho, sld_eigenbasis(state.rho, drho)).matrix
        F_spec = qfim_spectral(state.rho, drho).matrix
        assert np.linalg.norm(F_sld - F_closed) / scale <= 1e-9
        assert np.linalg.norm(F_spec - F_closed) / scale <= 1e-9
        assert np.linalg.norm(F_spec - F_sld) / scale <= 1e-9
        F_fd = qfim_fidelity_fd(white_noise_family(model, eta), model.phases).matrix
        assert np.linalg.norm(F_fd - F_closed) / scale <= 1e-4


def test_proportionality_to_pure():
    for model, eta in random_instances(seed=505, count=30, d_max=10):
        state = build_white_noise_state(model, eta)
        expect = ratio_xi(eta, model.d) * qfim_pure(model).matrix
        assert np.allclose(qfim_closed_form(state).matrix, expect, atol=1e-12)


def test_symmetry_and_psd():
    for model, eta in random_instances(seed=606, count=30, d_max=10):
        state = build_white_noise_state(model, eta)
        F = qfim_closed_form(state).matrix
        assert np.allclose(F, F.T, atol=1e-10)
        w = np.linalg.eigvalsh(F)
        assert w.min() >= -1e-9 * max(w.max(), 0.0)


def test_closed_form_independent_of_phases():
    rng = np.random.default_rng(707)
    model = random_model(rng, 6)
    state = build_white_noise_state(model, 0.37)
    F_ref = qfim_closed_form(state).matrix
    for _ in range(5):
        other = PhaseModel(model.amplitudes, rng.uniform(0, 2 * np.pi, size=5))
        F = qfim_closed_form(build_white_noise_state(other, 0.37)).matrix
        assert np.allclose(F, F_ref, atol=1e-12)


def test_row_sum_identity():
    # sum_k F_jk = prefactor * c_j^2 * c_0^2, a consequence of normalization
    for model, eta in random_instances(seed=808, count=30, d_max=10):
        state = build_white_noise_state(model, eta)
        F = qfim_closed_form(state).matrix
        d = model.d
        pref = 4 * d * eta**2 / (2 + (d - 2) * eta)
        expect = pref * model.amplitudes[1:] ** 2 * model.amplitudes[0] ** 2
        assert np.allclose(F.sum(axis=1), expect, atol=1e-12)


def test_luders_spectral_vs_fidelity():
    # rank-2 mixture in d=4 with a phase-dependent basis; there is no
    # closed form, so the two generic routes validate each other
    a = np.array([0.8, 0.6])
    b = np.array([0.6, -0.8])
    basis = np.zeros((2, 4), dtype=complex)
    basis[0, :2] = a
    basis[1, 2:] = b
    builder = luders_family(basis, 0.5)
    phases = np.array([0.4, 1.3, -0.7])
    rho = builder(phases)
    drho = finite_difference_drho(builder, phases)
    F_spec = qfim_spectral(rho, drho).matrix
    F_fd = qfim_fidelity_fd(builder, phases).matrix
    rel = np.linalg.norm(F_spec - F_fd) / max(1.0, np.linalg.norm(F_spec))
    assert rel <= 1e-4
