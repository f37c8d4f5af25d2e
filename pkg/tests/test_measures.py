from __future__ import annotations

import math
import random
from datetime import timedelta

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fundroll import (
    DataGapError,
    InsufficientDataError,
    PredictorParams,
    ShiftForecast,
    alpha_grid,
    cav,
    constant_provider,
    ewma_gradient,
    ewma_provider,
    pi_provider,
    q_provider,
    realized_cost,
    refine_gradient,
    zero_rate,
)
from fundroll.synthetic import flat_history, random_walk_history, two_regime_history

from .conftest import AS_OF, flat_curve, linear_spot
from .oracles import ewma_expanded


def weekly_series(rates, start=AS_OF):
    return [(start + timedelta(weeks=i), r) for i, r in enumerate(rates)]


class TestQProvider:
    def test_flat(self):
        p = q_provider(flat_curve(0.02))
        assert p.forward(0.3, 0.7) == pytest.approx(0.02, abs=1e-15)

    def test_linear_forward(self):
        p = q_provider(linear_spot(0.01, 0.02))
        assert p.forward(0.5, 1.0) == pytest.approx(0.04, abs=1e-14)

    def test_spot_starting(self):
        curve = linear_spot(0.01, 0.02)
        p = q_provider(curve)
        assert p.forward(0.0, 1.0) == zero_rate(curve, 1.0)

    def test_beyond_curve_domain(self):
        p = q_provider(flat_curve(0.02))
        with pytest.raises(ValueError):
            p.forward(0.5, 1.4)


class TestConstantProvider:
    def test_flat(self):
        p = constant_provider(flat_curve(0.02))
        assert p.forward(0.9, 0.95) == 0.02

    def test_shape_persistence(self):
        p = constant_provider(linear_spot(0.01, 0.02))
        # a future 6M purchase costs today's 6M rate
        assert p.forward(0.5, 1.0) == pytest.approx(0.02, abs=1e-15)

    def test_agrees_with_q_on_spot_starting(self):
        curve = linear_spot(0.015, 0.025)
        pq, pc = q_provider(curve), constant_provider(curve)
        for tau in (1 / 12, 0.2, 0.5, 1.0):
            assert pc.forward(0.0, tau) == pytest.approx(pq.forward(0.0, tau), abs=1e-15)


class TestEwmaGradient:
    def test_constant_series_is_zero(self):
        assert ewma_gradient(weekly_series([0.02] * 30), lam=90 / 365) == 0.0

    def test_steady_rise_recovers_rate(self):
        g = 2e-4  # per day
        series = weekly_series([0.01 + g * 7 * i for i in range(200)])
        for lam in (7 / 365, 30 / 365, 90 / 365, 1.0, 5.0):
            assert ewma_gradient(series, lam) == pytest.approx(g, abs=1e-9)

    def test_lambda_zero_passthrough(self):
        series = [(AS_OF, 0.02), (AS_OF + timedelta(days=7), 0.027)]
        assert ewma_gradient(series, 0.0) == pytest.approx(0.001, abs=1e-15)

    def test_insufficient_data(self):
        with pytest.raises(InsufficientDataError):
            ewma_gradient([(AS_OF, 0.02)], 0.25)

    def test_non_ascending_dates_rejected(self):
        series = [(AS_OF, 0.02), (AS_OF, 0.021)]
        with pytest.raises(ValueError):
            ewma_gradient(series, 0.25)

    def test_matches_weight_expansion_oracle(self):
        rng = random.Random(5)
        rates = [0.03]
        for _ in range(40):
            rates.append(max(rates[-1] + rng.gauss(0, 0.002), 0.0))
        series = weekly_series(rates)
        for lam in (30 / 365, 90 / 365, 2.0):
            assert ewma_gradient(series, lam) == pytest.approx(
                ewma_expanded(series, lam), abs=1e-12
            )

    def test_irregular_gaps(self):
        days = [0, 7, 21, 22, 50]
        rates = [0.02, 0.021, 0.019, 0.0195, 0.022]
        series = [(AS_OF + timedelta(days=d), r) for d, r in zip(days, rates)]
        value = ewma_gradient(series, 90 / 365)
        assert math.isfinite(value)
        assert value == pytest.approx(ewma_expanded(series, 90 / 365), abs=1e-12)


class TestRefineGradient:
    def test_sub_threshold_zeroed(self):
        params = PredictorParams(lam=90 / 365, theta=0.005, omega=0.3)
        fc = refine_gradient(0.0001, params, short_rate_now=0.02, horizon_days=365)
        assert fc.gradient_effective == 0.0
        assert fc.gradient_raw == 0.0001

    def test_threshold_passed_and_scaled(self):
        params = PredictorParams(lam=90 / 365, theta=0.005, omega=0.3)
        fc = refine_gradient(0.01, params, short_rate_now=0.05, horizon_days=365)
        assert fc.gradient_effective == pytest.approx(0.003, abs=1e-15)

    def test_zero_floor_binds(self):
        params = PredictorParams(lam=90 / 365, theta=0.005, omega=0.3)
        fc = refine_gradient(-0.01, params, short_rate_now=0.001, horizon_days=365)
        # projected short rate hits exactly zero at the horizon
        assert fc.gradient_effective == pytest.approx(-0.001 / 365, abs=1e-18)
        assert fc.short_rate_now + fc.gradient_effective * 365 == pytest.approx(
            0.0, abs=1e-15
        )

    @settings(max_examples=200)
    @given(
        st.floats(-0.05, 0.05),
        st.floats(0.0, 0.02),
        st.floats(0.0, 1.0),
        st.floats(0.0, 0.15),
    )
    def test_invariants(self, g_raw, theta, omega, short):
        params = PredictorParams(lam=0.5, theta=theta, omega=omega)
        fc = refine_gradient(g_raw, params, short_rate_now=short, horizon_days=365)
        assert abs(fc.gradient_effective) <= omega * abs(g_raw) + 1e-18
        if abs(g_raw) < theta:
            assert fc.gradient_effective == 0.0
        assert short + fc.gradient_effective * 365 >= -1e-15


class TestEwmaProvider:
    def test_zero_gradient_degenerates_to_constant(self):
        curve = linear_spot(0.02, 0.015)
        fc = ShiftForecast(0.004, 0.0, curve.short_rate)
        pe = ewma_provider(curve, fc)
        pc = constant_provider(curve)
        for t1 in (0.0, 0.25, 0.6):
            for tau in (1 / 12, 0.3):
                assert pe.forward(t1, t1 + tau) == pc.forward(t1, t1 + tau)

    def test_parallel_shift_value(self):
        curve = flat_curve(0.02)
        pe = ewma_provider(curve, ShiftForecast(0.0001, 0.0001, 0.02))
        # 0.5y ahead = 182.5 days of drift
        assert pe.forward(0.5, 0.75) == pytest.approx(0.02 + 0.01825, abs=1e-14)

    def test_zero_floor_binds_pointwise(self):
        curve = flat_curve(0.005)
        pe = ewma_provider(curve, ShiftForecast(-0.0001, -0.0001, 0.005))
        assert pe.forward(0.5, 0.75) == pytest.approx(0.0, abs=1e-15)
        # before the floor binds the drift applies linearly
        t1 = 0.1  # shift -0.00365 > -0.005
        assert pe.forward(t1, t1 + 0.25) == pytest.approx(
            0.005 - 0.0001 * 36.5, abs=1e-14
        )

    def test_projected_short_never_negative(self):
        curve = flat_curve(0.004)
        pe = ewma_provider(curve, ShiftForecast(-0.001, -0.001, 0.004))
        for k in range(1, 40):
            t1 = k * 0.025
            projected = pe.forward(t1, t1 + 1 / 12)
            assert projected >= -1e-15

    def test_omega_zero_and_huge_theta_degenerate(self, std_setup):
        curve = linear_spot(0.02, 0.01)
        series = weekly_series([0.02 - 0.0005 * i for i in range(30)])
        g_raw = ewma_gradient(series, 90 / 365)
        pc = constant_provider(curve)
        for params in (
            PredictorParams(lam=90 / 365, theta=0.0, omega=0.0),
            PredictorParams(lam=90 / 365, theta=math.inf, omega=0.7),
        ):
            fc = refine_gradient(g_raw, params, curve.short_rate, 365)
            pe = ewma_provider(curve, fc)
            for alpha in (0.1, 0.4, 1.0):
                assert (
                    cav(pe, std_setup, alpha).cav == cav(pc, std_setup, alpha).cav
                )


class TestPiProvider:
    def test_stationary_history_equals_constant(self):
        hist = flat_history(AS_OF, weeks=80, rate=0.02)
        pp = pi_provider(hist, AS_OF)
        pc = constant_provider(hist.entries[0])
        for t1 in (0.0, 0.3, 0.7):
            for tau in (1 / 12, 0.25):
                assert pp.forward(t1, t1 + tau) == pc.forward(t1, t1 + tau)

    def test_reflects_post_jump_rates(self):
        hist = two_regime_history(
            start=AS_OF,
            weeks=120,
            level_high=0.02,
            level_low=0.04,
            drop_start_week=20,
            drop_weeks=1,
            slope=0.0,
        )
        pp = pi_provider(hist, AS_OF)
        before = pp.forward(0.1, 0.1 + 1 / 12)  # ~week 5
        after = pp.forward(0.6, 0.6 + 1 / 12)  # ~week 31
        assert before == pytest.approx(0.02, abs=1e-12)
        assert after == pytest.approx(0.04, abs=1e-12)

    def test_beyond_history_is_data_gap(self):
        hist = flat_history(AS_OF, weeks=10, rate=0.02)
        pp = pi_provider(hist, AS_OF)
        with pytest.raises(DataGapError):
            pp.forward(0.5, 0.75)

    def test_cav_equals_realized_cost(self, std_setup):
        hist = random_walk_history(seed=11, weeks=80)
        start = hist.dates[3]
        pp = pi_provider(hist, start)
        for alpha in alpha_grid(std_setup)[::41]:
            expected = realized_cost(hist, std_setup, alpha, start).cav
            assert cav(pp, std_setup, alpha).cav == pytest.approx(expected, abs=1e-12)


class TestProviderAgreementOnSpot:
    def test_all_measures_agree_at_time_zero(self):
        hist = random_walk_history(seed=2, weeks=80)
        start = hist.dates[0]
        curve = hist.entries[0]
        providers = [
            q_provider(curve),
            constant_provider(curve),
            ewma_provider(curve, ShiftForecast(0.001, 0.0003, curve.short_rate)),
            pi_provider(hist, start),
        ]
        for tau in (1 / 12, 0.25, 0.5, 1.0):
            values = {p.forward(0.0, tau) for p in providers}
            assert max(values) - min(values) <= 1e-14


class TestPredictorParamsValidation:
    def test_bounds(self):
        with pytest.raises(ValueError):
            PredictorParams(lam=-0.1, theta=0.005, omega=0.3)
        with pytest.raises(ValueError):
            PredictorParams(lam=11.0, theta=0.005, omega=0.3)
        with pytest.raises(ValueError):
            PredictorParams(lam=0.25, theta=-0.001, omega=0.3)
        with pytest.raises(ValueError):
            PredictorParams(lam=0.25, theta=0.005, omega=1.2)
