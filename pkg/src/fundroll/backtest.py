"""Walk-forward backtest of roll strategies with significance statistics.

At each weekly sample date the Q strategy re-optimizes on that day's curve,
the EWMA strategy re-optimizes on the drift-adjusted curve using only data
available at the date, and the perfect-information benchmark picks the roll
that realizes cheapest. Every choice is held unchanged to the horizon and
costed by replaying the observed curves.

The reported t-test is a plain paired test. Overlapping one-year windows
autocorrelate the cost differences, so a Newey-West variant is available via
`hac_lags`; it is deliberately not the default reported statistic.
"""

from __future__ import annotations

import math
import sys
from dataclasses import dataclass
from datetime import date
from typing import Sequence

from scipy.stats import t as _student_t

from .cost import realized_cost
from .curves import CurveHistory, add_years
from .errors import DataGapError, DegenerateSampleError, InsufficientDataError
from .measures import PredictorParams, ewma_gradient, ewma_provider, q_provider, refine_gradient
from .optimize import TIE_TOL, evpi_roll, optimal_roll
from .schedule import FundingSetup, alpha_grid


@dataclass(frozen=True)
class TTestResult:
    t_stat: float
    p_value: float
    df: int


@dataclass(frozen=True)
class BacktestSummary:
    """Out-of-sample comparison of the three strategies.

    Means are in basis points; efficiency is the share of the perfect-
    information improvement captured by the EWMA strategy, None when the
    benchmark gap is not positive. t_stat/p_value are None when the cost
    differences are degenerate (zero variance).
    """

    n_dates: int
    mean_q_vs_ewma_bps: float
    mean_ewma_vs_evpi_bps: float
    t_stat: float | None
    p_value: float | None
    efficiency_pct: float | None


@dataclass(frozen=True)
class BacktestReport:
    dates: tuple[date, ...]
    q_cost: tuple[float, ...]
    ewma_cost: tuple[float, ...]
    evpi_cost: tuple[float, ...]
    ewma_alpha: tuple[float, ...]
    q_vs_ewma_bps: tuple[float, ...]
    summary: BacktestSummary


def paired_t_test(diffs: Sequence[float]) -> TTestResult:
    """Two-sided paired t-test of mean zero on a difference series."""
    n = len(diffs)
    if n < 2:
        raise InsufficientDataError(f"t-test needs >= 2 observations, got {n}")
    mean = sum(diffs) / n
    var = sum((d - mean) ** 2 for d in diffs) / (n - 1)
    if var <= 0.0:
        raise DegenerateSampleError("zero variance in difference series")
    t_stat = mean / math.sqrt(var / n)
    p_value = 2.0 * float(_student_t.sf(abs(t_stat), n - 1))
    p_value = min(1.0, max(sys.float_info.min, p_value))
    return TTestResult(t_stat, p_value, n - 1)


def newey_west_t_test(diffs: Sequence[float], lags: int) -> TTestResult:
    """Paired t-test with a Bartlett-kernel autocorrelation-robust variance.

    Suitable when consecutive differences overlap (e.g. one-year windows
    sampled weekly). Degrees of freedom are kept at n - 1 as a conservative
    approximation.
    """
    n = len(diffs)
    if n < 2:
        raise InsufficientDataError(f"t-test needs >= 2 observations, got {n}")
    if lags < 0:
        raise ValueError("lags must be >= 0")
    mean = sum(diffs) / n
    centered = [d - mean for d in diffs]
    gamma0 = sum(c * c for c in centered) / n
    lrv = gamma0
    for lag in range(1, min(lags, n - 1) + 1):
        cov = sum(centered[i] * centered[i - lag] for i in range(lag, n)) / n
        lrv += 2.0 * (1.0 - lag / (lags + 1.0)) * cov
    if lrv <= 0.0:
        raise DegenerateSampleError("non-positive long-run variance")
    t_stat = mean / math.sqrt(lrv / n)
    p_value = 2.0 * float(_student_t.sf(abs(t_stat), n - 1))
    p_value = min(1.0, max(sys.float_info.min, p_value))
    return TTestResult(t_stat, p_value, n - 1)


def efficiency(mean_q_minus_ewma: float, mean_q_minus_evpi: float) -> float | None:
    """Share (percent) of the perfect-information improvement achieved.

    Returns None when the perfect-information gap is not positive, so the
    ratio never blows up on degenerate runs.
    """
    if mean_q_minus_evpi <= 0.0:
        return None
    return 100.0 * mean_q_minus_ewma / mean_q_minus_evpi


def run_backtest(
    history: CurveHistory,
    setup: FundingSetup,
    params: PredictorParams,
    window: tuple[date, date],
    *,
    alphas: Sequence[float] | None = None,
    hac_lags: int | None = None,
) -> BacktestReport:
    """Replay the history weekly and compare Q, EWMA, and EVPI strategies.

    Sample dates are the history's own observation dates inside `window`
    that leave a full horizon of data ahead and at least one observation
    behind (the gradient needs two points). Forecasts at a date never see
    curves recorded after it.
    """
    if alphas is None:
        alphas = alpha_grid(setup)
    horizon_days = round(365.0 * setup.h)
    w_start, w_end = window
    sample_idx = [
        i
        for i, d in enumerate(history.dates)
        if w_start <= d <= w_end and i >= 1 and add_years(d, setup.h) <= history.end
    ]
    if not sample_idx:
        raise DataGapError(
            f"no usable sample dates in window {w_start.isoformat()}..{w_end.isoformat()}"
        )
    short_series = history.short_rates()
    dates: list[date] = []
    q_costs: list[float] = []
    e_costs: list[float] = []
    v_costs: list[float] = []
    e_alphas: list[float] = []
    for i in sample_idx:
        curve = history.entries[i]
        day = curve.as_of
        q_star = optimal_roll(q_provider(curve), setup, alphas).alpha_star
        g_raw = ewma_gradient(short_series[: i + 1], params.lam)
        forecast = refine_gradient(g_raw, params, curve.short_rate, horizon_days)
        e_star = optimal_roll(ewma_provider(curve, forecast), setup, alphas).alpha_star
        dates.append(day)
        q_costs.append(realized_cost(history, setup, q_star, day).cav)
        e_costs.append(realized_cost(history, setup, e_star, day).cav)
        e_alphas.append(e_star)
        v_costs.append(evpi_roll(history, setup, day, alphas).cost)
    n = len(dates)
    diffs = [q - e for q, e in zip(q_costs, e_costs)]
    mean_q_e = sum(diffs) / n
    mean_e_v = sum(e - v for e, v in zip(e_costs, v_costs)) / n
    mean_q_v = sum(q - v for q, v in zip(q_costs, v_costs)) / n
    try:
        if hac_lags is None:
            ttest = paired_t_test(diffs)
        else:
            ttest = newey_west_t_test(diffs, hac_lags)
        t_stat, p_value = ttest.t_stat, ttest.p_value
    except DegenerateSampleError:
        t_stat, p_value = None, None
    # A perfect-information gap inside the tie tolerance is float noise from
    # minimizing over equivalent rolls, not a real benchmark; report n/a.
    eff = efficiency(mean_q_e, mean_q_v) if mean_q_v > TIE_TOL else None
    summary = BacktestSummary(
        n_dates=n,
        mean_q_vs_ewma_bps=mean_q_e * 1e4,
        mean_ewma_vs_evpi_bps=mean_e_v * 1e4,
        t_stat=t_stat,
        p_value=p_value,
        efficiency_pct=eff,
    )
    return BacktestReport(
        dates=tuple(dates),
        q_cost=tuple(q_costs),
        ewma_cost=tuple(e_costs),
        evpi_cost=tuple(v_costs),
        ewma_alpha=tuple(e_alphas),
        q_vs_ewma_bps=tuple(d * 1e4 for d in diffs),
        summary=summary,
    )
