import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from pairflight.wavepacket import CoherentState, free_density
from pairflight.pairstats import (
    DEGENERACY_THRESHOLD,
    DegeneratePairError,
    ExchangeStatistics,
    ParticlePair,
    boson_density_dk,
    boson_density_dx,
    density_divisor,
    fermion_coincident_density,
    fermion_density_dx,
    normalization_sq,
    overlap_limits,
    overlap_pair,
    pair_amplitude_free,
    pair_density_free,
)

D, B, F = (
    ExchangeStatistics.DISTINGUISHABLE,
    ExchangeStatistics.BOSON,
    ExchangeStatistics.FERMION,
)


def pair(x1, k1, x2, k2, stats):
    return ParticlePair(CoherentState(x1, k1), CoherentState(x2, k2), stats)


CASE_I_LIKE = {s: pair(-301, 10, -299, 10, s) for s in (D, B, F)}
CASE_II_LIKE = {s: pair(-300, 10.1, -300, 9.9, s) for s in (D, B, F)}


class TestNormalization:
    def test_distinguishable_unity(self):
        assert normalization_sq(pair(-301, 10, -299, 10, D)) == 1.0

    def test_boson_coincident(self):
        assert normalization_sq(pair(0, 0, 0, 0, B)) == pytest.approx(4.0, abs=1e-15)

    def test_fermion_offset(self):
        # 2 (1 - e^-2) for a position offset of 2
        assert normalization_sq(pair(0, 0, 2, 0, F)) == pytest.approx(
            1.7293294335267746, rel=1e-14
        )

    def test_fermion_degenerate_rejected(self):
        with pytest.raises(DegeneratePairError):
            normalization_sq(pair(0, 0, 0, 0, F))
        with pytest.raises(DegeneratePairError):
            normalization_sq(pair(0, 0, np.sqrt(DEGENERACY_THRESHOLD) / 2, 0, F))

    def test_two_particle_norm(self):
        # the symmetrized amplitude integrates to 1 over both coordinates
        x = np.linspace(-12, 12, 501)
        x1, x2 = np.meshgrid(x, x, indexing="ij")
        for p in (pair(-2, 1, 2, -1, B), pair(-2, 1, 2, -1, F), pair(-2, 1, 2, -1, D)):
            amp = pair_amplitude_free(p, x1, x2, 0.0)
            total = np.trapezoid(np.trapezoid(np.abs(amp) ** 2, x, axis=1), x)
            assert total == pytest.approx(1.0, abs=1e-8)


class TestFreeDensity:
    def test_distinguishable_is_two_gaussian_average(self):
        p = CASE_I_LIKE[D]
        x = np.linspace(350, 550, 300)
        expected = 0.5 * (
            free_density(p.state1, x, 75.0) + free_density(p.state2, x, 75.0)
        )
        assert np.allclose(pair_density_free(p, x, 75.0), expected, rtol=0, atol=1e-15)

    @pytest.mark.parametrize("tau", [0.0, 20.0, 75.0])
    @pytest.mark.parametrize("stats", [D, B, F])
    def test_normalized(self, stats, tau):
        p = CASE_I_LIKE[stats]
        center = p.mean_x + p.mean_k * tau
        half = 14 * np.sqrt(1 + tau * tau)
        x = np.linspace(center - half, center + half, 120001)
        assert np.trapezoid(pair_density_free(p, x, tau), x) == pytest.approx(
            1.0, abs=1e-8
        )

    @pytest.mark.parametrize("stats", [D, B, F])
    def test_nonnegative(self, stats):
        p = CASE_II_LIKE[stats]
        x = np.linspace(-400, 500, 4000)
        for tau in (0.0, 30.0, 75.0):
            assert np.min(pair_density_free(p, x, tau)) >= -1e-12

    def test_exchange_symmetry(self):
        x = np.linspace(-350, -250, 500)
        for stats in (D, B, F):
            p = pair(-310, 9.5, -290, 10.5, stats)
            a = pair_density_free(p, x, 3.0)
            b = pair_density_free(p.swapped(), x, 3.0)
            assert np.allclose(a, b, rtol=1e-12, atol=1e-300)

    def test_degenerate_fermion_rejected(self):
        with pytest.raises(DegeneratePairError):
            pair_density_free(pair(0, 0, 0, 0, F), 0.0, 1.0)

    def test_fermion_node_at_coincidence(self):
        p = pair(-1, 0.3, 1, -0.3, F)
        for x in (-2.0, 0.0, 3.0):
            assert abs(pair_amplitude_free(p, x, x, 0.0)) ** 2 < 1e-20

    def test_divisor_matches_statistics(self):
        assert density_divisor(CASE_I_LIKE[D]) == 2.0
        assert density_divisor(CASE_I_LIKE[B]) == pytest.approx(
            normalization_sq(CASE_I_LIKE[B])
        )


class TestClosedForms:
    x = np.linspace(-800, 800, 4001)

    @pytest.mark.parametrize("tau", [0.0, 5.0, 75.0])
    def test_boson_dx_equals_general(self, tau):
        p = CASE_I_LIKE[B]
        assert np.max(
            np.abs(boson_density_dx(p, self.x, tau) - pair_density_free(p, self.x, tau))
        ) < 1e-10

    @pytest.mark.parametrize("tau", [0.0, 5.0, 75.0])
    def test_fermion_dx_equals_general(self, tau):
        p = CASE_I_LIKE[F]
        assert np.max(
            np.abs(fermion_density_dx(p, self.x, tau) - pair_density_free(p, self.x, tau))
        ) < 1e-10

    @pytest.mark.parametrize("tau", [0.0, 5.0, 75.0])
    def test_boson_dk_equals_general(self, tau):
        p = CASE_II_LIKE[B]
        assert np.max(
            np.abs(boson_density_dk(p, self.x, tau) - pair_density_free(p, self.x, tau))
        ) < 1e-10

    def test_boson_dx_zero_offset_reduces_to_single(self):
        p = pair(-5, 2, -5, 2, B)
        x = np.linspace(-30, 30, 500)
        assert np.allclose(
            boson_density_dx(p, x, 4.0), free_density(p.state1, x, 4.0), rtol=1e-12
        )

    def test_long_time_limits(self):
        # evaluated at the initial centroid so subleading terms are O(1/tau^2)
        tau = 1e4
        for stats, fn, h in ((B, boson_density_dx, 1), (F, fermion_density_dx, -1)):
            p = CASE_I_LIKE[stats]
            d, k = p.delta_x, p.mean_k
            predicted = (1 + h * np.exp(-d * d / 4) * np.cos(d * k)) / (
                1 + h * np.exp(-d * d / 2)
            )
            ref = free_density(CoherentState(p.mean_x, k), p.mean_x, tau)
            assert fn(p, p.mean_x, tau) / ref == pytest.approx(predicted, abs=1e-4)

    def test_dk_tail_goes_like_inverse_tau(self):
        from pairflight.analysis import tail_exponent

        p = pair(0, 0.1, 0, -0.1, B)
        taus = np.geomspace(1e3, 1e5, 50)
        slope = tail_exponent(taus, boson_density_dk(p, 3.0, taus))
        assert slope == pytest.approx(-1.0, abs=0.02)

    def test_wrong_statistics_rejected(self):
        with pytest.raises(ValueError):
            boson_density_dx(CASE_I_LIKE[F], 0.0, 1.0)
        with pytest.raises(ValueError):
            boson_density_dx(CASE_II_LIKE[B], 0.0, 1.0)
        with pytest.raises(ValueError):
            fermion_density_dx(CASE_II_LIKE[F], 0.0, 1.0)
        with pytest.raises(DegeneratePairError):
            fermion_density_dx(pair(0, 0, 0, 0, F), 0.0, 1.0)


class TestCoincidentFermion:
    def test_point_value(self):
        # 0.5 / sqrt(pi) at the center at tau = 0
        s = CoherentState(1.5, 2.0)
        assert fermion_coincident_density(s, 1.5, 0.0) == pytest.approx(
            0.28209479177387814, rel=1e-13
        )

    @pytest.mark.parametrize("tau", [0.0, 10.0])
    def test_normalized(self, tau):
        s = CoherentState(0.0, 1.0)
        half = 20 * np.sqrt(1 + tau * tau)
        c = s.center_x + s.center_k * tau
        x = np.linspace(c - half, c + half, 100001)
        assert np.trapezoid(fermion_coincident_density(s, x, tau), x) == pytest.approx(
            1.0, abs=1e-8
        )

    def test_small_offset_continuation(self):
        s = CoherentState(0.0, 1.0)
        p = pair(-5e-4, 1, 5e-4, 1, F)
        x = np.linspace(-8, 12, 400)
        for tau in (0.0, 2.0, 8.0):
            a = fermion_density_dx(p, x, tau)
            b = fermion_coincident_density(s, x, tau)
            assert np.max(np.abs(a - b)) < 1e-5


class TestOverlap:
    def test_distinguishable_identity(self):
        taus = np.linspace(0, 20, 50)
        assert np.all(overlap_pair(CASE_I_LIKE[D], taus) == 1.0)

    def test_boson_coincident_identity(self):
        p = pair(0, 0, 0, 0, B)
        taus = np.linspace(0, 20, 50)
        assert np.allclose(overlap_pair(p, taus), 1.0, atol=1e-12)

    def test_fermion_small_separation_limit(self):
        p = pair(0, 0, 1e-4, 0, F)
        assert overlap_pair(p, 2.0) == pytest.approx(0.5, abs=1e-6)

    def test_degenerate_fermion_rejected(self):
        with pytest.raises(DegeneratePairError):
            overlap_pair(pair(0, 0, 0, 0, F), 1.0)

    def test_limit_forms_match_full_overlap(self):
        taus = np.linspace(0, 10, 101)
        delta = 1e-2
        for stats in (B, F):
            p = pair(0, 1, delta, 1, stats)
            full = overlap_pair(p, taus)
            lim = overlap_limits(stats, delta, 0.0, taus)
            assert np.max(np.abs(full - lim) / lim) < 10 * delta * delta

    def test_short_time_forms(self):
        assert overlap_limits(F, 1e-3, 0, 0.1, short_time=True) == pytest.approx(0.9975)
        taus = np.linspace(0, 0.3, 30)
        bos = overlap_limits(B, 0.01, 0.02, taus, short_time=True)
        assert np.all(bos >= 1.0)
        # short-time forms agree with the limit forms to O(tau^4)
        for stats in (B, F):
            a = overlap_limits(stats, 0.01, 0.02, taus, short_time=True)
            b = overlap_limits(stats, 0.01, 0.02, taus)
            assert np.max(np.abs(a - b)) < 0.3**4

    def test_statistics_ordering(self):
        taus = np.linspace(0, 10, 101)
        delta = 1e-2
        o_b = overlap_pair(pair(0, 0, delta, 0, B), taus)
        o_f = overlap_pair(pair(0, 0, delta, 0, F), taus)
        assert np.all(o_f <= 1.0 + 1e-12)
        assert np.all(o_b >= 1.0 - 1e-12)
        assert np.all(o_f <= o_b)


coords = st.floats(-20, 20, allow_nan=False)
momenta = st.floats(-5, 5, allow_nan=False)


@settings(max_examples=40, deadline=None)
@given(coords, momenta, coords, momenta, st.floats(0, 30), st.floats(-100, 100))
def test_density_symmetric_under_swap(x1, k1, x2, k2, tau, x):
    for stats in (D, B, F):
        p = pair(x1, k1, x2, k2, stats)
        if stats is F and p.is_degenerate:
            continue
        a = pair_density_free(p, x, tau)
        b = pair_density_free(p.swapped(), x, tau)
        assert a == pytest.approx(b, rel=1e-10, abs=1e-300)
        assert a >= -1e-12
