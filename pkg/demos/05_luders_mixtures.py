"""Rank-r mixtures: no closed form, but the numeric routes still work.

Replacing the rank-1 projector with a rank-r one gives states of the form
(eta/r) P + (1 - eta)/d I.  The basis vectors inherit the componentwise
phase parametrization; derivatives come from central finite differences,
and the spectral pair sum cross-checks the fidelity route.
"""

import numpy as np

from phasefisher import (
    build_luders_state,
    finite_difference_drho,
    luders_family,
    min_total_variance,
    qfim_fidelity_fd,
    qfim_spectral,
)

np.set_printoptions(precision=6, suppress=True)

# a generic two-dimensional subspace of a four-level system
rng = np.random.default_rng(99)
G = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
Q, _ = np.linalg.qr(G)
basis = Q[:, :2].T
phases = np.array([0.4, 1.3, -0.7])

for eta in (0.3, 0.7):
    builder = luders_family(basis, eta)
    rho = builder(phases)
    print(f"eta = {eta}: spectrum of the rank-2 mixture {np.linalg.eigvalsh(rho)}")
    drho = finite_difference_drho(builder, phases)
    F_spec = qfim_spectral(rho, drho)
    F_fd = qfim_fidelity_fd(builder, phases)
    dev = np.linalg.norm(F_spec.matrix - F_fd.matrix) / np.linalg.norm(F_spec.matrix)
    print("  spectral pair-sum QFIM:")
    print(np.array2string(F_spec.matrix, prefix="  "))
    print(f"  fidelity route relative deviation: {dev:.2e}")
    print(f"  minimal total variance: {min_total_variance(F_spec):.6f}")
    print()

# sanity: at r = d the projector part is the identity and nothing is estimable
flat = build_luders_state(np.eye(4), 0.9)
print("r = d collapses to the maximally mixed state:")
print(flat.rho.real)
