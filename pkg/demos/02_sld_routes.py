"""Three routes to the symmetric logarithmic derivative.

The white-noise mixture admits a closed-form SLD proportional to the
projector derivative.  The generic eigenbasis solve reproduces it, and so
does the nested-commutator series built from Bernoulli-number
coefficients, term by term, as long as alpha stays inside the
convergence domain (alpha < pi - 0.1).
"""

import numpy as np

from phasefisher import (
    PhaseModel,
    build_white_noise_state,
    closed_form_coefficient,
    generating_coefficients,
    sld_closed_form,
    sld_eigenbasis,
    sld_series,
    verify_sld,
    white_noise_derivative,
)

model = PhaseModel(np.ones(3) / np.sqrt(3), np.array([0.3, 1.1]))
state = build_white_noise_state(model, 0.5)
drho = [white_noise_derivative(state, k) for k in range(1, 3)]

closed = sld_closed_form(state)
eigen = sld_eigenbasis(state.rho, drho)

coeff = closed_form_coefficient(state)
print(f"closed-form coefficient 2*d*eta/(2 + (d-2)*eta) = {coeff}")
print(f"equivalently 2*tanh(alpha/2) = {2 * np.tanh(state.alpha / 2)}")
print()
print("defining-equation residuals ||drho - (rho L + L rho)/2||:")
for k in range(2):
    print(f"  phi_{k + 1}: closed form {verify_sld(state.rho, drho[k], closed.operators[k]):.2e}, "
          f"eigenbasis {verify_sld(state.rho, drho[k], eigen.operators[k]):.2e}")
print()
print(f"zero mean: Tr(rho L_1) = {np.trace(state.rho @ closed.operators[0]):.2e}")
print()

print("series route: error of the n-term partial sum vs the closed form")
print(f"  (alpha = {state.alpha:.4f}, convergence ratio (alpha/pi)^2 = "
      f"{(state.alpha / np.pi) ** 2:.4f})")
spec3 = generating_coefficients(3)
print(f"  leading coefficients: f_0 = {spec3.coefficients[0]}, "
      f"f_2 = {spec3.coefficients[1]:.10f} (= -1/12), "
      f"f_4 = {spec3.coefficients[2]:.10f} (= 1/120)")
for n_max in (1, 2, 4, 8, 12, 16, 20):
    partial = sld_series(state, generating_coefficients(n_max))
    err = max(
        np.linalg.norm(a - b) for a, b in zip(partial.operators, closed.operators)
    )
    print(f"  n_max = {n_max:2d}: max operator error {err:.3e}")
