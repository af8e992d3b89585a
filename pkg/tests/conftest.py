"""Shared generators for seeded random test instances."""

from __future__ import annotations

import numpy as np

from phasefisher import PhaseModel


def random_model(rng: np.random.Generator, d: int) -> PhaseModel:
    """Random normalized amplitudes (bounded away from zero) and phases.

    Squared amplitudes are drawn from a uniform band so that no direction
    becomes nearly unidentifiable; signs are random since negative real
    amplitudes are legal.
    """
    w = rng.uniform(0.5, 1.5, size=d)
    amps = np.sqrt(w / w.sum()) * rng.choice([-1.0, 1.0], size=d)
    phases = rng.uniform(0.0, 2.0 * np.pi, size=d - 1)
    return PhaseModel(amps, phases)


def random_instances(
    seed: int,
    count: int,
    d_min: int = 2,
    d_max: int = 12,
    eta_lo: float = 0.05,
    eta_hi: float = 0.95,
) -> list[tuple[PhaseModel, float]]:
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(count):
        d = int(rng.integers(d_min, d_max + 1))
        eta = float(rng.uniform(eta_lo, eta_hi))
        out.append((random_model(rng, d), eta))
    return out


def random_density(rng: np.random.Generator, d: int) -> np.ndarray:
    """Full-rank random density matrix (Wishart normalized to unit trace)."""
    G = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    rho = G @ G.conj().T
    return rho / np.trace(rho).real
