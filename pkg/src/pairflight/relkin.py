"""Free relativistic propagation: photons and spin-1/2 wave packets.

Photons translate rigidly at the reduced light speed kappa.  Electrons are
described by a steepest-descent Gaussian whose envelope moves at the group
velocity kappa*beta and broadens on the gamma^2-stretched clock, carrying a
two-component spinor; exchange cross terms between electrons of different
speeds are weighted by the squared spinor inner product.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .pairstats import ExchangeStatistics

_QUARTIC_PI = (1.0 / np.pi) ** 0.25


@dataclass(frozen=True)
class RelativisticState:
    """Gaussian packet of a relativistic particle in reduced coordinates.

    kappa is the reduced speed of light (Compton ratio); the wavenumber and
    spinor follow from the speed.  Massless packets use beta=1 semantics via
    photon_density and never touch the spinor.
    """

    center_x: float
    speed_beta: float
    compton_ratio: float = 1.0

    def __post_init__(self):
        if not 0.0 < self.speed_beta < 1.0:
            raise ValueError("speed_beta must lie strictly between 0 and 1")
        if self.compton_ratio <= 0.0:
            raise ValueError("compton_ratio must be positive")

    @property
    def lorentz_gamma(self) -> float:
        return 1.0 / np.sqrt(1.0 - self.speed_beta**2)

    @property
    def wavenumber_k(self) -> float:
        return self.lorentz_gamma * self.speed_beta * self.compton_ratio

    @property
    def spinor(self) -> np.ndarray:
        """Unit-normalized spin-up spinor (1, gamma*beta/(1+gamma))."""
        g = self.lorentz_gamma
        u = np.array([1.0, g * self.speed_beta / (1.0 + g)])
        return u / np.linalg.norm(u)


def spinor_overlap(s1: RelativisticState, s2: RelativisticState) -> float:
    return float(s1.spinor @ s2.spinor)


def _dispersion(s: RelativisticState, tau):
    return 1.0 + 1j * np.asarray(tau, dtype=float) / s.lorentz_gamma**2


def _envelope(s: RelativisticState, x, tau):
    a = _dispersion(s, tau)
    xi = np.asarray(x, dtype=float) - s.center_x - s.compton_ratio * s.speed_beta * np.asarray(
        tau, dtype=float
    )
    return _QUARTIC_PI / np.sqrt(a) * np.exp(-0.5 * xi * xi / a)


def _carrier(s: RelativisticState, x, tau):
    k = s.wavenumber_k
    kap = s.compton_ratio
    omega = kap * np.sqrt(kap * kap + k * k)
    return np.exp(1j * k * (np.asarray(x, dtype=float) - s.center_x) - 1j * omega * np.asarray(tau))


def electron_psi(s: RelativisticState, x, tau):
    """Two-component steepest-descent amplitude (spinor times scalar packet)."""
    t = np.asarray(tau, dtype=float)
    if np.any(t < 0.0):
        raise ValueError("tau must be non-negative")
    scalar = _envelope(s, x, tau) * _carrier(s, x, tau)
    u = s.spinor
    return np.stack([u[0] * scalar, u[1] * scalar])


def electron_density(s: RelativisticState, x, tau):
    """Squared spinor norm of electron_psi; a drifting Gaussian whose width
    grows on the tau/gamma^2 clock."""
    t = np.asarray(tau, dtype=float)
    if np.any(t < 0.0):
        raise ValueError("tau must be non-negative")
    w = 1.0 + (t / s.lorentz_gamma**2) ** 2
    xi = np.asarray(x, dtype=float) - s.center_x - s.compton_ratio * s.speed_beta * t
    return np.exp(-xi * xi / w) / np.sqrt(np.pi * w)


def photon_density(s: RelativisticState, x, tau):
    """Rigid translate of the initial Gaussian at the reduced light speed."""
    xi = np.asarray(x, dtype=float) - s.center_x - s.compton_ratio * np.asarray(tau, dtype=float)
    return np.exp(-xi * xi) / np.sqrt(np.pi)


def lightfront_reference_density(s: RelativisticState, x, tau):
    """The electron's initial density translated dispersion-free at light speed."""
    xi = np.asarray(x, dtype=float) - s.center_x - s.compton_ratio * np.asarray(tau, dtype=float)
    return np.exp(-xi * xi) / np.sqrt(np.pi)


def _pair_overlap(s1, s2, tau):
    """Companion-coordinate overlap integral of the two evolving envelopes."""
    a1 = _dispersion(s1, tau)
    a2 = _dispersion(s2, tau)
    t = np.asarray(tau, dtype=float)
    mu1 = s1.center_x + s1.compton_ratio * s1.speed_beta * t
    mu2 = s2.center_x + s2.compton_ratio * s2.speed_beta * t
    k1, k2 = s1.wavenumber_k, s2.wavenumber_k
    kap = s1.compton_ratio
    om1 = kap * np.sqrt(kap**2 + k1**2)
    om2 = kap * np.sqrt(kap**2 + k2**2)
    # integrand exp(-A z^2 + B z + C); phases of the carriers ride along
    alpha = 0.5 / a2 + 0.5 / np.conj(a1)
    beta = mu2 / a2 + mu1 / np.conj(a1) + 1j * (k2 - k1)
    cc = (
        -0.5 * mu2 * mu2 / a2
        - 0.5 * mu1 * mu1 / np.conj(a1)
        - 1j * (k2 * s2.center_x - k1 * s1.center_x)
        - 1j * (om2 - om1) * t
    )
    pref = (1.0 / np.sqrt(np.pi)) / np.sqrt(a2 * np.conj(a1))
    return pref * np.sqrt(np.pi / alpha) * np.exp(0.25 * beta * beta / alpha + cc)


def rel_pair_screen_density(
    s1: RelativisticState,
    s2: RelativisticState,
    stats: ExchangeStatistics,
    x,
    tau,
    massless: bool = False,
):
    """Symmetrized one-particle density for a relativistic pair at the screen.

    Electron (fermion) cross terms are weighted by the squared spinor inner
    product; photons use boson statistics with unit weight and rigid packets.
    """
    if s1.compton_ratio != s2.compton_ratio:
        raise ValueError("both particles must share the reduced light speed kappa")
    h = stats.exchange_factor
    if massless:
        # rigid packets keep their initial overlap and accumulate no relative phase
        rho1 = photon_density(s1, x, tau)
        rho2 = photon_density(s2, x, tau)
        dx = s2.center_x - s1.center_x
        ov0 = np.exp(-0.25 * dx * dx)
        cross = 2.0 * h * ov0 * np.sqrt(rho1 * rho2)
        nsq = 2.0 * (1.0 + h * ov0 * ov0)
        return (rho1 + rho2 + cross) / nsq
    rho1 = electron_density(s1, x, tau)
    rho2 = electron_density(s2, x, tau)
    if h == 0:
        return 0.5 * (rho1 + rho2)
    w_spin = spinor_overlap(s1, s2) ** 2
    ov = _pair_overlap(s1, s2, tau)
    psi1 = _envelope(s1, x, tau) * _carrier(s1, x, tau)
    psi2 = _envelope(s2, x, tau) * _carrier(s2, x, tau)
    cross = 2.0 * h * w_spin * np.real(psi1 * np.conj(psi2) * ov)
    ov0 = _pair_overlap(s1, s2, 0.0)
    nsq = 2.0 * (1.0 + h * w_spin * float(np.abs(ov0)) ** 2)
    return (rho1 + rho2 + cross) / nsq
