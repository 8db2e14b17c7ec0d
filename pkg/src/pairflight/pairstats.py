"""Exchange-symmetrized pairs of coherent states.

A pair of non-interacting identical particles is described by the
symmetrized product of two single-particle packets with an exchange factor
h = +1 (bosons), -1 (fermions) or 0 (distinguishable).  This module holds
the pair normalization, the one-particle density after free evolution
(general form plus the closed-form special cases kept as independent
oracles), and the exchange part of the two-particle survival probability
with its small-separation limit forms.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .wavepacket import CoherentState, free_density, free_psi

DEGENERACY_THRESHOLD = 1e-12


class ExchangeStatistics(Enum):
    DISTINGUISHABLE = "distinguishable"
    BOSON = "boson"
    FERMION = "fermion"

    @property
    def exchange_factor(self) -> int:
        return {"distinguishable": 0, "boson": 1, "fermion": -1}[self.value]

    @property
    def short_tag(self) -> str:
        return {"distinguishable": "D", "boson": "B", "fermion": "F"}[self.value]


class DegeneratePairError(ValueError):
    """Fermion pair with coincident phase-space centers; use the coincident-limit path."""


@dataclass(frozen=True)
class ParticlePair:
    state1: CoherentState
    state2: CoherentState
    stats: ExchangeStatistics

    @property
    def delta_x(self) -> float:
        return self.state2.center_x - self.state1.center_x

    @property
    def delta_k(self) -> float:
        return self.state2.center_k - self.state1.center_k

    @property
    def mean_x(self) -> float:
        return 0.5 * (self.state1.center_x + self.state2.center_x)

    @property
    def mean_k(self) -> float:
        return 0.5 * (self.state1.center_k + self.state2.center_k)

    @property
    def separation_sq(self) -> float:
        """Squared phase-space separation delta_x^2 + delta_k^2."""
        return self.delta_x**2 + self.delta_k**2

    @property
    def is_degenerate(self) -> bool:
        return self.separation_sq < DEGENERACY_THRESHOLD

    def swapped(self) -> "ParticlePair":
        return ParticlePair(self.state2, self.state1, self.stats)


def _check_fermion_degeneracy(pair: ParticlePair):
    if pair.stats is ExchangeStatistics.FERMION and pair.is_degenerate:
        raise DegeneratePairError(
            "degenerate fermion pair; use fermion_coincident_density / the limit forms"
        )


def normalization_sq(pair: ParticlePair) -> float:
    """Squared norm of the symmetrized two-particle amplitude.

    2[1 + h exp(-(dX^2+dK^2)/2)] for bosons and fermions; unity for
    distinguishable particles, whose state is a plain product.
    """
    if pair.stats is ExchangeStatistics.DISTINGUISHABLE:
        return 1.0
    _check_fermion_degeneracy(pair)
    h = pair.stats.exchange_factor
    return 2.0 * (1.0 + h * np.exp(-0.5 * pair.separation_sq))


def density_divisor(pair: ParticlePair) -> float:
    """Divisor making the one-particle density integrate to 1.

    For bosons and fermions this is the squared norm; for distinguishable
    particles the one-particle density is the average over the two packets,
    hence the divisor is 2 even though the state norm is 1.
    """
    h = pair.stats.exchange_factor
    if h == 0:
        return 2.0
    return normalization_sq(pair)


def state_overlap(s1: CoherentState, s2: CoherentState) -> complex:
    """<s1|s2> for two coherent states; invariant under free evolution."""
    dx = s2.center_x - s1.center_x
    dk = s2.center_k - s1.center_k
    ksum = s1.center_k + s2.center_k
    return np.exp(-0.25 * (dx * dx + dk * dk) - 0.5j * ksum * dx)


def pair_density_free(pair: ParticlePair, x, tau):
    """One-particle density of the freely evolving pair at position x.

    The companion coordinate is already integrated out: the cross term
    carries the (time-independent) overlap of the two packets.  Moduli are
    taken from the closed-form single-particle densities, never from the
    complex amplitudes, so no spurious phase can leak into them.
    """
    _check_fermion_degeneracy(pair)
    h = pair.stats.exchange_factor
    rho1 = free_density(pair.state1, x, tau)
    rho2 = free_density(pair.state2, x, tau)
    direct = rho1 + rho2
    if h == 0:
        cross = 0.0
    else:
        psi1 = free_psi(pair.state1, x, tau)
        psi2 = free_psi(pair.state2, x, tau)
        # phase of psi1 conj(psi2) <psi1|psi2>, modulus rebuilt from densities
        phase = np.angle(psi1 * np.conj(psi2) * state_overlap(pair.state1, pair.state2))
        cross = (
            2.0
            * h
            * np.exp(-0.25 * pair.separation_sq)
            * np.sqrt(rho1 * rho2)
            * np.cos(phase)
        )
    return (direct + cross) / density_divisor(pair)


def pair_amplitude_free(pair: ParticlePair, x1, x2, tau):
    """Symmetrized two-particle amplitude Psi(x1, x2; tau).

    Reference implementation used by normalization and node checks; the
    densities above never go through it.
    """
    h = pair.stats.exchange_factor
    a = free_psi(pair.state1, x1, tau) * free_psi(pair.state2, x2, tau)
    if h == 0:
        return a
    b = free_psi(pair.state2, x1, tau) * free_psi(pair.state1, x2, tau)
    return (a + h * b) / np.sqrt(normalization_sq(pair))


def boson_density_dx(pair: ParticlePair, x, tau):
    """Closed form for two bosons with equal momenta (delta_k = 0)."""
    if pair.stats is not ExchangeStatistics.BOSON:
        raise ValueError("boson_density_dx requires boson statistics")
    if pair.delta_k != 0.0:
        raise ValueError("boson_density_dx requires delta_k = 0")
    return _equal_momentum_density(pair, x, tau, h=1)


def fermion_density_dx(pair: ParticlePair, x, tau):
    """Closed form for two fermions with equal momenta and delta_x != 0.

    The sinh(dX^2/4) normalization and the growing exp(tau^2 dX^2 / (4(1+tau^2)))
    factor compensate; the result integrates to 1.
    """
    if pair.stats is not ExchangeStatistics.FERMION:
        raise ValueError("fermion_density_dx requires fermion statistics")
    if pair.delta_k != 0.0:
        raise ValueError("fermion_density_dx requires delta_k = 0")
    if pair.delta_x == 0.0:
        raise DegeneratePairError("delta_x = 0: use fermion_coincident_density")
    t = np.asarray(tau, dtype=float)
    w = 1.0 + t * t
    d = pair.delta_x
    xi = np.asarray(x, dtype=float) - pair.mean_x - pair.mean_k * t
    # growing prefactor exp(tau^2 d^2/(4w)) folded into each exponent so the
    # cosh never overflows; every combined exponent is bounded by d^2/4
    common = 0.25 * d * d * t * t / w - xi * xi / w
    bracket = 0.5 * (
        np.exp(common + d * xi / w) + np.exp(common - d * xi / w)
    ) - np.exp(common - 0.25 * d * d) * np.cos(d * t * xi / w)
    return bracket / (2.0 * np.sqrt(np.pi * w) * np.sinh(0.25 * d * d))


def _equal_momentum_density(pair: ParticlePair, x, tau, h: int):
    t = np.asarray(tau, dtype=float)
    w = 1.0 + t * t
    d = pair.delta_x
    xi = np.asarray(x, dtype=float) - pair.mean_x - pair.mean_k * t
    direct = 0.5 * (
        np.exp(-((xi - 0.5 * d) ** 2) / w) + np.exp(-((xi + 0.5 * d) ** 2) / w)
    )
    cross = h * np.exp(-0.25 * d * d - (xi * xi + 0.25 * d * d) / w) * np.cos(
        d * t * xi / w
    )
    norm = 1.0 + h * np.exp(-0.5 * d * d)
    return (direct + cross) / (np.sqrt(np.pi * w) * norm)


def boson_density_dk(pair: ParticlePair, x, tau):
    """Closed form for two bosons launched from the same point (delta_x = 0)."""
    if pair.stats is not ExchangeStatistics.BOSON:
        raise ValueError("boson_density_dk requires boson statistics")
    if pair.delta_x != 0.0:
        raise ValueError("boson_density_dk requires delta_x = 0")
    t = np.asarray(tau, dtype=float)
    w = 1.0 + t * t
    dk = pair.delta_k
    eta = np.asarray(x, dtype=float) - pair.state1.center_x - pair.mean_k * t
    direct = 0.5 * (
        np.exp(-((eta - 0.5 * dk * t) ** 2) / w) + np.exp(-((eta + 0.5 * dk * t) ** 2) / w)
    )
    cross = np.exp(
        -0.25 * dk * dk - (eta * eta + 0.25 * dk * dk * t * t) / w
    ) * np.cos(dk * eta / w)
    norm = 1.0 + np.exp(-0.5 * dk * dk)
    return (direct + cross) / (np.sqrt(np.pi * w) * norm)


def fermion_coincident_density(s: CoherentState, x, tau):
    """Fermion pair density in the limit of coincident centers.

    The antisymmetric amplitude vanishes linearly in the separation; the
    normalized density survives as |psi_0|^2 [(X - X_i - K tau)^2/(1+tau^2) + 1/2].
    """
    t = np.asarray(tau, dtype=float)
    if np.any(t < 0.0):
        raise ValueError("tau must be non-negative")
    w = 1.0 + t * t
    xi = np.asarray(x, dtype=float) - s.center_x - s.center_k * t
    return free_density(s, x, tau) * (xi * xi / w + 0.5)


def _log_cross_survival(s1: CoherentState, s2: CoherentState, tau):
    """log <s1(0)|s2(tau)> via the complex Gaussian integral, vectorized in tau."""
    t = np.asarray(tau, dtype=float)
    a = 1.0 + 1j * t
    # integrand exp(-alpha z^2 + beta z + gamma)
    alpha = 0.5 + 0.5 / a
    beta = (s1.center_x - 1j * s1.center_k) + (s2.center_x + 1j * s2.center_k) / a
    gamma = (
        -0.5 * s1.center_x**2
        + 1j * s1.center_k * s1.center_x
        - 0.5 * (s2.center_x + 1j * s2.center_k) ** 2 / a
        - 0.5 * s2.center_k**2
    )
    return -0.5 * np.log(a * alpha) + 0.25 * beta * beta / alpha + gamma


def overlap_pair(pair: ParticlePair, tau):
    """Exchange factor O_k(tau) of the two-particle survival probability.

    The full survival probability is |S_1 S_2|^2 O_k; O_k isolates what the
    statistics contribute.  Identically 1 for distinguishable pairs.  Worked
    in log space: the single-particle survival factors decay like
    exp(-K^2 tau^2) and their ratio against the cross overlaps must be formed
    before exponentiating, or it underflows for fast packets.
    """
    t = np.asarray(tau, dtype=float)
    h = pair.stats.exchange_factor
    if h == 0:
        return np.ones_like(t) if t.ndim else 1.0
    _check_fermion_degeneracy(pair)
    log_direct = _log_cross_survival(pair.state1, pair.state1, t) + _log_cross_survival(
        pair.state2, pair.state2, t
    )
    log_cross = _log_cross_survival(pair.state1, pair.state2, t) + _log_cross_survival(
        pair.state2, pair.state1, t
    )
    nsq = normalization_sq(pair)
    out = (2.0 / nsq) ** 2 * np.abs(1.0 + h * np.exp(log_cross - log_direct)) ** 2
    return out if t.ndim else float(out)


def overlap_limits(stats: ExchangeStatistics, delta_x, delta_k, tau, short_time=False):
    """Leading small-separation forms of O_k(tau).

    Bosons: 1 + D^2 tau^2 / (2 (4 + tau^2)) with D^2 = delta_x^2 + delta_k^2;
    fermions: 4 / (4 + tau^2), separation-independent at leading order.  With
    short_time=True the quadratic-in-tau forms are returned instead.
    """
    t = np.asarray(tau, dtype=float)
    dsq = float(delta_x) ** 2 + float(delta_k) ** 2
    if stats is ExchangeStatistics.DISTINGUISHABLE:
        out = np.ones_like(t)
    elif stats is ExchangeStatistics.BOSON:
        out = 1.0 + dsq * t * t / 8.0 if short_time else 1.0 + dsq * t * t / (2.0 * (4.0 + t * t))
    else:
        out = 1.0 - t * t / 4.0 if short_time else 4.0 / (4.0 + t * t)
    return out if t.ndim else float(out)
