"""Tests for benchmark configurations, width scans, and fitting helpers."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pairflight.analysis import (
    CASE_I,
    CASE_II,
    SCAN_GAMMAS,
    CaseConfig,
    case_by_name,
    linear_fit,
    predicted_intercept,
    scaled_case,
    tail_exponent,
)
from pairflight.barrier import EpsilonConvention
from pairflight.pairstats import ExchangeStatistics


class TestCases:
    def test_benchmark_geometry(self):
        assert CASE_I.positions == (-301.0, -299.0)
        assert CASE_I.momenta == (10.0, 10.0)
        assert CASE_II.positions == (-300.0, -300.0)
        assert CASE_II.momenta == (10.1, 9.9)
        for case in (CASE_I, CASE_II):
            assert case.mean_k == pytest.approx(10.0)
            assert case.mean_x == pytest.approx(-300.0)
            assert case.free_flight_time == pytest.approx(75.0)
            assert case.epsilon == 1.0
            assert case.screen_abs == 450.0

    def test_case_lookup(self):
        assert case_by_name("i") is CASE_I
        assert case_by_name("II") is CASE_II
        with pytest.raises(ValueError):
            case_by_name("III")

    def test_pair_uses_requested_statistics(self):
        pair = CASE_II.pair(ExchangeStatistics.FERMION)
        assert pair.stats is ExchangeStatistics.FERMION
        assert pair.state1.center_k == 10.1


class TestScaledCase:
    def test_identity_at_baseline_width(self):
        sc = scaled_case(CASE_I, CASE_I.gamma_width)
        assert sc.positions == CASE_I.positions
        assert sc.momenta == CASE_I.momenta
        assert sc.epsilon == CASE_I.epsilon

    def test_round_trip(self):
        sc = scaled_case(CASE_I, 1e-4)
        back = scaled_case(sc, CASE_I.gamma_width)
        assert back.positions == pytest.approx(CASE_I.positions)
        assert back.momenta == pytest.approx(CASE_I.momenta)
        assert back.epsilon == pytest.approx(CASE_I.epsilon)
        assert back.screen_abs == pytest.approx(CASE_I.screen_abs)

    def test_free_flight_time_scales_with_width(self):
        # reduced free flight time picks up the factor gamma/gamma0
        sc = scaled_case(CASE_I, 1e-4)
        ratio = sc.free_flight_time / CASE_I.free_flight_time
        assert ratio == pytest.approx(1e-4 / CASE_I.gamma_width)

    def test_scan_gammas_sorted_and_distinct(self):
        gs = list(SCAN_GAMMAS)
        assert gs == sorted(gs)
        assert len(set(gs)) == len(gs)


class TestPredictedIntercept:
    def test_momentum_scaled_convention(self):
        # 75 + eps_i/(K^2(1+eps_i^2)) with eps_i = 0.1 at K = 10
        got = predicted_intercept(CASE_I)
        assert got == pytest.approx(75.0 + 9.90099009900990e-4, abs=1e-15)

    def test_reduced_coupling_convention(self):
        got = predicted_intercept(CASE_I, EpsilonConvention.REDUCED_COUPLING)
        assert got == pytest.approx(75.005, abs=1e-15)


class TestLinearFit:
    def test_recovers_exact_line(self):
        x = np.array([0.0, 1.0, 2.0, 3.0])
        fit = linear_fit(x, 2.0 * x + 1.0)
        assert fit.slope_b == pytest.approx(2.0, abs=1e-14)
        assert fit.intercept_c == pytest.approx(1.0, abs=1e-14)
        assert fit.r_squared == pytest.approx(1.0, abs=1e-14)

    def test_stderr_on_known_noise(self):
        rng = np.random.default_rng(0)
        x = np.linspace(0.0, 1.0, 200)
        y = 3.0 * x - 2.0 + 0.01 * rng.standard_normal(len(x))
        fit = linear_fit(x, y)
        assert abs(fit.slope_b - 3.0) < 5.0 * fit.slope_stderr
        assert abs(fit.intercept_c + 2.0) < 5.0 * fit.intercept_stderr
        assert fit.r_squared > 0.999

    def test_rejects_short_input(self):
        with pytest.raises(ValueError):
            linear_fit([0.0, 1.0], [0.0, 1.0])

    def test_rejects_degenerate_abscissae(self):
        with pytest.raises(ValueError):
            linear_fit([1.0, 1.0, 1.0], [0.0, 1.0, 2.0])

    @given(
        scale=st.floats(min_value=0.01, max_value=100.0),
        shift=st.floats(min_value=-50.0, max_value=50.0),
    )
    @settings(max_examples=50, deadline=None)
    def test_affine_equivariance(self, scale, shift):
        x = np.array([0.0, 0.7, 1.3, 2.9, 4.1])
        y = np.array([0.2, 1.1, 1.9, 4.4, 6.0])
        base = linear_fit(x, y)
        moved = linear_fit(scale * x + shift, y)
        # x -> s x + d maps the slope to b/s and the intercept to c - (b/s) d
        assert moved.slope_b * scale == pytest.approx(base.slope_b, rel=1e-9)
        assert moved.intercept_c + moved.slope_b * shift == pytest.approx(
            base.intercept_c, rel=1e-9, abs=1e-9
        )


class TestTailExponent:
    def test_recovers_synthetic_power_law(self):
        tau = np.geomspace(1e3, 1e5, 40)
        rho = 2.7 / tau**3
        assert tail_exponent(tau, rho) == pytest.approx(-3.0, abs=1e-9)

    def test_rejects_nonpositive_samples(self):
        with pytest.raises(ValueError):
            tail_exponent([1.0, 2.0, 3.0], [1.0, 0.0, 1.0])
        with pytest.raises(ValueError):
            tail_exponent([0.0, 2.0, 3.0], [1.0, 1.0, 1.0])
