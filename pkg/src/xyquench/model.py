"""Model definition for the periodic transverse-field XY chain.

The Hamiltonian acting on N spins is

    H(h) = -(J/2) * sum_i [ (1+gamma) sx_i sx_{i+1} + (1-gamma) sy_i sy_{i+1} ]
           - h * sum_i sz_i

with periodic boundary conditions and hbar = 1.  A global quench switches the
transverse field from h0 to h1 at t = 0.  After a Jordan-Wigner map the chain
decouples into independent two-level momentum modes; everything downstream is
built on the mode grid and single-mode dispersion defined here.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = ["ModelParams", "MomentumMode", "dispersion", "build_momentum_grid", "mode_arrays"]


@dataclass(frozen=True)
class ModelParams:
    """Quench protocol parameters.

    n must be even and at least 4 (two-site observables need a real chain),
    j must be positive.  gamma is the anisotropy, h0 the pre-quench and h1
    the post-quench transverse field.  The critical field is h = j.
    """

    n: int
    j: float
    gamma: float
    h0: float
    h1: float

    def __post_init__(self) -> None:
        if not isinstance(self.n, (int, np.integer)):
            raise ValueError(f"n must be an integer, got {self.n!r}")
        if self.n < 4:
            raise ValueError(f"n must be >= 4, got {self.n}")
        if self.n % 2 != 0:
            raise ValueError(f"n must be even, got {self.n}")
        if not self.j > 0:
            raise ValueError(f"j must be positive, got {self.j}")
        for name in ("j", "gamma", "h0", "h1"):
            v = getattr(self, name)
            if not math.isfinite(v):
                raise ValueError(f"{name} must be finite, got {v!r}")


@dataclass(frozen=True)
class MomentumMode:
    """One decoupled momentum mode of the quenched chain.

    phi is the mode momentum, delta = 2*gamma*sin(phi) the pairing amplitude,
    gamma0 and gamma1 the single-mode energies before and after the quench.
    """

    p: int
    phi: float
    delta: float
    gamma0: float
    gamma1: float


def dispersion(j: float, gamma: float, h: float, phi):
    """Single-mode energy Gamma_h(phi) = sqrt((j cos phi + h)^2 + gamma^2 j^2 sin^2 phi).

    Accepts scalar or array phi.  Vanishes only at the critical field h = j
    for phi = pi (and at h = -j for phi = 0).
    """
    return np.hypot(j * np.cos(phi) + h, gamma * j * np.sin(phi))


def mode_arrays(params: ModelParams):
    """Vectorised mode grid: arrays (phi, delta, gamma0, gamma1), ascending phi.

    The grid holds the n/2 independent momenta phi_p = 2 pi p / n for
    p = 1 .. n/2; the remaining momenta are related by phi -> -phi symmetry.
    """
    p = np.arange(1, params.n // 2 + 1)
    phi = 2.0 * np.pi * p / params.n
    delta = 2.0 * params.gamma * np.sin(phi)
    g0 = dispersion(params.j, params.gamma, params.h0, phi)
    g1 = dispersion(params.j, params.gamma, params.h1, phi)
    return phi, delta, g0, g1


def build_momentum_grid(params: ModelParams) -> list[MomentumMode]:
    """Momentum modes of the quench problem, strictly increasing in phi."""
    phi, delta, g0, g1 = mode_arrays(params)
    return [
        MomentumMode(p=int(i + 1), phi=float(phi[i]), delta=float(delta[i]),
                     gamma0=float(g0[i]), gamma1=float(g1[i]))
        for i in range(phi.size)
    ]
