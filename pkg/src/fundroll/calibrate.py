"""Joint calibration of the momentum predictor over currencies.

The objective for a parameter triple is the average, over currencies and
weekly sample dates, of the realized cost of the Q-optimal roll minus the
realized cost of the EWMA-optimal roll. Calibration is an exhaustive grid
search: the objective is noisy and non-smooth, the grid is modest, and grid
search is exactly reproducible.

The EWMA cost surface over the roll grid decomposes into a shape-persistence
part plus a term linear in the (floored) drift, so each date's surface is
evaluated for all distinct effective gradients with flattened leg arrays
instead of re-walking schedules per parameter triple. A unit test pins this
evaluator to the generic cost function.
"""

from __future__ import annotations

from dataclasses import dataclass
from datetime import date
from typing import Mapping, Sequence

import numpy as np

from .cost import realized_cost
from .curves import CurveHistory, SpotCurve, add_years
from .errors import ConfigError, DataGapError
from .measures import PredictorParams, ewma_gradient, q_provider, refine_gradient
from .optimize import TIE_TOL, optimal_roll
from .schedule import FundingSetup, alpha_grid, n_rolls

WindowArg = tuple[date, date] | Mapping[str, tuple[date, date]]


@dataclass(frozen=True)
class ParameterGrid:
    """Search grid for the predictor parameters, in fixed iteration order."""

    lam: tuple[float, ...]
    theta: tuple[float, ...]
    omega: tuple[float, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "lam", tuple(float(v) for v in self.lam))
        object.__setattr__(self, "theta", tuple(float(v) for v in self.theta))
        object.__setattr__(self, "omega", tuple(float(v) for v in self.omega))
        if not (self.lam and self.theta and self.omega):
            raise ConfigError("parameter grid must be non-empty in every dimension")
        if any(not 0.0 <= v <= 10.0 for v in self.lam):
            raise ConfigError("lam grid values must lie in [0, 10] years")
        if any(not 0.0 <= v <= 1.0 for v in self.theta):
            raise ConfigError("theta grid values must lie in [0, 1]")
        if any(not 0.0 <= v <= 1.0 for v in self.omega):
            raise ConfigError("omega grid values must lie in [0, 1]")

    @classmethod
    def default(cls) -> "ParameterGrid":
        return cls(
            lam=tuple(days / 365.0 for days in (30, 60, 90, 180, 365, 730)),
            theta=(0.0, 0.001, 0.0025, 0.005, 0.01),
            omega=tuple(round(0.1 * k, 1) for k in range(11)),
        )

    def points(self) -> list[PredictorParams]:
        return [
            PredictorParams(lam=l, theta=t, omega=o)
            for l in self.lam
            for t in self.theta
            for o in self.omega
        ]

    def __len__(self) -> int:
        return len(self.lam) * len(self.theta) * len(self.omega)


@dataclass(frozen=True)
class CalibrationResult:
    params: PredictorParams
    objective: float
    per_currency: dict[str, float]
    grid_evaluations: int


class _FlatGrid:
    """Roll-schedule legs for every grid alpha, flattened into arrays.

    For grid point k the cost under a shape-persisting curve drifting at g
    per day is A_k + (1/h) * sum over k's legs of w * max(g*D, -S), where
    w = purchase_tenor - phi*delta, D is the roll date in days, and S floors
    the projected short rate at zero.
    """

    __slots__ = ("alphas", "h", "delta", "phi", "e0", "counts", "seg", "t_start", "q", "w", "D")

    def __init__(self, setup: FundingSetup, alphas: Sequence[float]) -> None:
        h, d, phi = setup.h, setup.delta, setup.phi
        self.alphas = tuple(alphas)
        self.h, self.delta, self.phi = h, d, phi
        seg: list[int] = []
        t_start: list[float] = []
        q_list: list[float] = []
        counts = np.zeros(len(self.alphas))
        e0 = np.empty(len(self.alphas))
        for k, a in enumerate(self.alphas):
            e0[k] = min(a, h)
            rolls = n_rolls(h / d, a / d)
            counts[k] = rolls
            spacing = a - d
            for i in range(1, rolls + 1):
                t = i * spacing
                seg.append(k)
                t_start.append(t)
                q_list.append(min(a, h - t))
        self.e0 = e0
        self.seg = np.asarray(seg, dtype=np.intp)
        self.t_start = np.asarray(t_start)
        self.q = np.asarray(q_list)
        self.w = self.q - phi * d
        self.D = 365.0 * self.t_start
        self.counts = counts

    def day_eval(self, curve: SpotCurve) -> "_DayEval":
        if self.h > curve.max_tenor + 1e-9:
            raise ValueError(
                f"curve ends at tenor {curve.max_tenor}, horizon {self.h} not covered"
            )
        tenors = np.asarray(curve.tenors)
        rates = np.asarray(curve.rates)
        y_q = np.interp(self.q, tenors, rates)
        y_e0 = np.interp(self.e0, tenors, rates)
        y_d = float(np.interp(self.delta, tenors, rates))
        k = len(self.alphas)
        purchase = np.bincount(self.seg, weights=self.q * y_q, minlength=k)
        base = (
            self.e0 * y_e0 + purchase - self.counts * (self.phi * self.delta * y_d)
        ) / self.h
        return _DayEval(self, base, max(curve.short_rate, 0.0))


class _DayEval:
    """Cost-vs-roll surface for one curve, reusable across drift values."""

    __slots__ = ("grid", "base", "short_floor")

    def __init__(self, grid: _FlatGrid, base: np.ndarray, short_floor: float) -> None:
        self.grid = grid
        self.base = base
        self.short_floor = short_floor

    def costs(self, gradient_per_day: float) -> np.ndarray:
        if gradient_per_day == 0.0:
            return self.base
        g = self.grid
        shift = np.maximum(gradient_per_day * g.D, -self.short_floor)
        drift_part = np.bincount(g.seg, weights=g.w * shift, minlength=len(g.alphas))
        return self.base + drift_part / g.h

    def argmin_alpha(self, gradient_per_day: float) -> float:
        costs = self.costs(gradient_per_day)
        c_min = costs.min()
        idx = int(np.nonzero(costs <= c_min + TIE_TOL)[0][-1])
        return self.grid.alphas[idx]


def _resolve_window(window: WindowArg, currency: str) -> tuple[date, date]:
    if isinstance(window, Mapping):
        if currency not in window:
            raise ConfigError(f"no calibration window for currency {currency}")
        return window[currency]
    return window


def calibrate(
    histories: Mapping[str, CurveHistory],
    setup: FundingSetup,
    window: WindowArg,
    grid: ParameterGrid | None = None,
    *,
    alpha_step_days: int = 1,
) -> CalibrationResult:
    """Pick the predictor parameters maximizing the mean improvement of the
    EWMA strategy over the Q strategy across all supplied currencies.

    `window` is either one (start, end) date pair applied to every currency
    or a per-currency mapping; each history must extend a full horizon past
    its window end. Sample dates are the histories' own observation dates in
    the window that have at least one earlier observation (the gradient
    needs two points). Objective ties prefer the least-active predictor:
    smallest omega, then largest theta, then smallest lam.
    """
    if not histories:
        raise ConfigError("calibration needs at least one currency history")
    if grid is None:
        grid = ParameterGrid.default()
    points = grid.points()
    alphas = alpha_grid(setup, alpha_step_days)
    flat = _FlatGrid(setup, alphas)
    horizon_days = round(365.0 * setup.h)
    currencies = sorted(histories)
    per_currency_means: dict[str, list[float]] = {}
    for ccy in currencies:
        hist = histories[ccy]
        w_start, w_end = _resolve_window(window, ccy)
        if hist.end < add_years(w_end, setup.h):
            raise DataGapError(
                f"{ccy}: history ends {hist.end.isoformat()}, needs a full horizon "
                f"past the window end {w_end.isoformat()}"
            )
        usable = [
            i for i, d in enumerate(hist.dates) if w_start <= d <= w_end and i >= 1
        ]
        if not usable:
            raise DataGapError(f"{ccy}: no usable sample dates in calibration window")
        short_series = hist.short_rates()
        sums = [0.0] * len(points)
        for i in usable:
            curve = hist.entries[i]
            day = curve.as_of
            day_eval = flat.day_eval(curve)
            realized_memo: dict[float, float] = {}

            def realized_at(a: float) -> float:
                value = realized_memo.get(a)
                if value is None:
                    value = realized_cost(hist, setup, a, day).cav
                    realized_memo[a] = value
                return value

            q_star = optimal_roll(q_provider(curve), setup, alphas).alpha_star
            q_real = realized_at(q_star)
            g_raws = {
                lam: ewma_gradient(short_series[: i + 1], lam) for lam in grid.lam
            }
            astar_by_gradient: dict[float, float] = {}
            for p_idx, p in enumerate(points):
                forecast = refine_gradient(
                    g_raws[p.lam], p, curve.short_rate, horizon_days
                )
                g_eff = forecast.gradient_effective
                a_star = astar_by_gradient.get(g_eff)
                if a_star is None:
                    a_star = day_eval.argmin_alpha(g_eff)
                    astar_by_gradient[g_eff] = a_star
                sums[p_idx] += q_real - realized_at(a_star)
        n = len(usable)
        per_currency_means[ccy] = [s / n for s in sums]
    best_idx: int | None = None
    best_obj = 0.0
    best_pref: tuple[float, float, float] = (0.0, 0.0, 0.0)
    objectives: list[float] = []
    for p_idx, p in enumerate(points):
        obj = sum(per_currency_means[c][p_idx] for c in currencies) / len(currencies)
        objectives.append(obj)
        pref = (p.omega, -p.theta, p.lam)
        if best_idx is None or obj > best_obj or (obj == best_obj and pref < best_pref):
            best_idx, best_obj, best_pref = p_idx, obj, pref
    assert best_idx is not None
    per_currency = {c: per_currency_means[c][best_idx] for c in currencies}
    return CalibrationResult(
        params=points[best_idx],
        objective=sum(per_currency.values()) / len(currencies),
        per_currency=per_currency,
        grid_evaluations=len(points),
    )
