"""Sweep the channel reliability and watch the information decay.

The shrinking ratio xi(eta) = d eta^2 / (2 + (d - 2) eta) multiplies the
whole pure-state QFIM, so the attainable total variance of all phases
grows by 1/xi.  At eta = 0 the state is maximally mixed and carries no
phase information at all.
"""

import numpy as np

from phasefisher import (
    PhaseModel,
    build_white_noise_state,
    min_total_variance,
    qfim_closed_form,
    ratio_xi,
)

d = 3
model = PhaseModel(np.ones(d) / np.sqrt(d), np.array([0.3, 1.1]))

print(f"uniform-amplitude state, d = {d}")
print(f"{'eta':>6} {'xi(eta)':>10} {'F_11':>10} {'F_12':>10} {'min total variance':>20}")
for eta in np.linspace(0.0, 1.0, 11):
    state = build_white_noise_state(model, float(eta))
    F = qfim_closed_form(state)
    mtv = min_total_variance(F)
    mtv_text = f"{mtv:.6f}" if np.isfinite(mtv) else "inf"
    print(
        f"{eta:6.2f} {ratio_xi(float(eta), d):10.5f} "
        f"{F.matrix[0, 0]:10.6f} {F.matrix[0, 1]:10.6f} {mtv_text:>20}"
    )

print()
print("the same sweep is available as CSV from the command line:")
print("  phasefisher scan problem.json --from 0 --to 1 --steps 11")
