"""Single-particle Gaussian wave packets in reduced units.

All dynamics in this package is expressed in dimensionless coordinates
X = sqrt(G) x, K = p / (hbar sqrt(G)), tau = hbar G t / M, where G is the
inverse squared width of the initial Gaussian.  In these variables every
coherent state has unit width and the free propagator depends on no
parameters at all.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

_QUARTIC_PI = (1.0 / np.pi) ** 0.25


@dataclass(frozen=True)
class ReducedUnits:
    """Conversion between laboratory and reduced coordinates.

    gamma_width is the inverse squared spatial width of the packets, mass
    the particle mass, hbar the action scale.  All must be positive.
    """

    gamma_width: float
    mass: float
    hbar: float = 1.0

    def __post_init__(self):
        for name in ("gamma_width", "mass", "hbar"):
            v = getattr(self, name)
            if not (np.isfinite(v) and v > 0.0):
                raise ValueError(f"{name} must be positive and finite, got {v!r}")

    def to_reduced(self, x, p, t):
        s = np.sqrt(self.gamma_width)
        return x * s, p / (self.hbar * s), self.hbar * self.gamma_width * t / self.mass

    def to_physical(self, big_x, big_k, tau):
        s = np.sqrt(self.gamma_width)
        return big_x / s, big_k * self.hbar * s, tau * self.mass / (self.hbar * self.gamma_width)


@dataclass(frozen=True)
class CoherentState:
    """Unit-width Gaussian centered at (center_x, center_k) in reduced phase space."""

    center_x: float
    center_k: float

    def __post_init__(self):
        if not (np.isfinite(self.center_x) and np.isfinite(self.center_k)):
            raise ValueError("coherent-state center must be finite")


def _check_tau(tau):
    t = np.asarray(tau, dtype=float)
    if np.any(t < 0.0) or not np.all(np.isfinite(t)):
        raise ValueError("tau must be finite and non-negative")
    return t


def free_psi(state: CoherentState, x, tau):
    """Freely evolved coherent-state wavefunction.

    Closed form with the spreading factor 1 + i tau on the principal
    branch; broadcastable over x and tau.
    """
    t = _check_tau(tau)
    a = 1.0 + 1j * t
    u = (np.asarray(x, dtype=float) - state.center_x) - 1j * state.center_k
    return (
        _QUARTIC_PI
        / np.sqrt(a)
        * np.exp(-0.5 * u * u / a - 0.5 * state.center_k**2)
    )


def free_density(state: CoherentState, x, tau):
    """|free_psi|^2 in closed form: a unit-norm Gaussian drifting at K
    with variance (1 + tau^2) / 2."""
    t = _check_tau(tau)
    w = 1.0 + t * t
    dx = np.asarray(x, dtype=float) - state.center_x - state.center_k * t
    return np.exp(-dx * dx / w) / np.sqrt(np.pi * w)


def free_psi_grad(state: CoherentState, x, tau):
    """(psi, d psi / dX) for the free packet; the gradient is analytic."""
    t = _check_tau(tau)
    a = 1.0 + 1j * t
    u = (np.asarray(x, dtype=float) - state.center_x) - 1j * state.center_k
    psi = _QUARTIC_PI / np.sqrt(a) * np.exp(-0.5 * u * u / a - 0.5 * state.center_k**2)
    return psi, -u / a * psi


def survival_single(state: CoherentState, tau):
    """Overlap <psi(0)|psi(tau)> of one packet with its initial state."""
    t = _check_tau(tau)
    d = 2.0 + 1j * t
    return np.sqrt(2.0 / d) * np.exp(-1j * t * state.center_k**2 / d)
