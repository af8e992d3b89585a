"""Compute the quantum Fisher information matrix four ways.

A three-level system carries two free phases.  Mixing the pure state with
white noise of reliability eta shrinks the information matrix by the
scalar ratio xi(eta) without changing its shape, and all four computation
routes (closed form, SLD trace formula, spectral pair sum, fidelity
finite differences) agree.
"""

import numpy as np

from phasefisher import (
    PhaseModel,
    build_white_noise_state,
    monotonicity_gap,
    qfim_closed_form,
    qfim_fidelity_fd,
    qfim_from_slds,
    qfim_pure,
    qfim_spectral,
    ratio_xi,
    sld_eigenbasis,
    white_noise_derivative,
    white_noise_family,
)

np.set_printoptions(precision=8, suppress=True)

model = PhaseModel(np.ones(3) / np.sqrt(3), np.array([0.3, 1.1]))
eta = 0.5
state = build_white_noise_state(model, eta)

print(f"dimension d = {model.d}, reliability eta = {eta}")
print(f"exponential-form coefficients: alpha = {state.alpha:.6f}, beta = {state.beta:.6f}")
print(f"spectrum of rho: {np.linalg.eigvalsh(state.rho)}")
print()

drho = [white_noise_derivative(state, k) for k in range(1, model.d)]
routes = {
    "closed form": qfim_closed_form(state),
    "SLD trace formula": qfim_from_slds(state.rho, sld_eigenbasis(state.rho, drho)),
    "spectral pair sum": qfim_spectral(state.rho, drho),
    "fidelity finite differences": qfim_fidelity_fd(
        white_noise_family(model, eta), model.phases
    ),
}
reference = routes["closed form"].matrix
for name, F in routes.items():
    dev = np.linalg.norm(F.matrix - reference)
    print(f"{name:>28}:  deviation from closed form {dev:.2e}")
    print(F.matrix)
    print()

F_pure = qfim_pure(model)
xi = ratio_xi(eta, model.d)
print(f"pure-state QFIM scaled by xi({eta}) = {xi}:")
print(xi * F_pure.matrix)
print()
print(f"monotonicity gap (smallest eigenvalue of eta*F_pure - F_noisy): "
      f"{monotonicity_gap(state):.3e}  (never below zero: white noise cannot "
      "amplify information)")
