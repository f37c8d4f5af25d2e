"""Forward-rate providers for the four funding measures.

- Q: today's curve prices future funding via its own forward rates.
- P-Const: the curve shape persists, so a future purchase of tenor tau costs
  today's spot tau rate.
- P-EWMA: shape persists but the whole curve drifts by a predicted per-day
  gradient; the projected short end is floored at zero.
- PI (perfect information): future funding is priced off the curves actually
  observed later in the history.

All providers expose `forward(t1, t2)` and agree on spot-starting rates
F(0, tau) by construction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from datetime import date
from typing import Sequence

from .curves import (
    DAYS_PER_YEAR,
    CurveHistory,
    SpotCurve,
    add_years,
    zero_rate,
)
from .errors import DataGapError, InsufficientDataError


@dataclass(frozen=True)
class PredictorParams:
    """Momentum predictor parameters.

    lam:   EWMA decay constant in years (0 means "latest change wins").
    theta: gradient threshold in rate per day; smaller moves are noise.
    omega: scaling applied to gradients that clear the threshold.
    """

    lam: float
    theta: float
    omega: float

    def __post_init__(self) -> None:
        if not 0.0 <= self.lam <= 10.0:
            raise ValueError("lam must lie in [0, 10] years")
        if not self.theta >= 0.0:
            raise ValueError("theta must be >= 0")
        if not 0.0 <= self.omega <= 1.0:
            raise ValueError("omega must lie in [0, 1]")


@dataclass(frozen=True)
class ShiftForecast:
    """Filtered short-rate gradient driving the parallel-shift prediction."""

    gradient_raw: float
    gradient_effective: float
    short_rate_now: float


class _QProvider:
    """Forwards read off today's curve.

    Roll evaluation queries the sale and purchase legs with the same start
    time, so the last (t1, y(t1)) pair is memoized; the memo is a single
    tuple assignment and therefore safe under concurrent reads.
    """

    __slots__ = ("curve", "_memo")
    label = "Q"

    def __init__(self, curve: SpotCurve) -> None:
        self.curve = curve
        self._memo = (0.0, 0.0)

    def forward(self, t1: float, t2: float) -> float:
        if t1 < 0.0:
            raise ValueError(f"t1 must be >= 0, got {t1}")
        if t2 <= t1:
            raise ValueError(f"need t1 < t2, got t1={t1}, t2={t2}")
        curve = self.curve
        y2 = zero_rate(curve, t2)
        if t1 == 0.0:
            return y2
        memo_t, memo_y = self._memo
        if memo_t == t1:
            y1 = memo_y
        else:
            y1 = zero_rate(curve, t1)
            self._memo = (t1, y1)
        return (y2 * t2 - y1 * t1) / (t2 - t1)


class _ConstantProvider:
    """Today's curve shape persists: F(t1, t2) = spot rate at tenor t2 - t1."""

    __slots__ = ("curve",)
    label = "P-Const"

    def __init__(self, curve: SpotCurve) -> None:
        self.curve = curve

    def forward(self, t1: float, t2: float) -> float:
        if t1 < 0.0:
            raise ValueError(f"t1 must be >= 0, got {t1}")
        if t2 <= t1:
            raise ValueError(f"need t1 < t2, got t1={t1}, t2={t2}")
        return zero_rate(self.curve, t2 - t1)


class _EwmaProvider:
    """Shape persistence plus a predicted parallel drift.

    The shift applied at future time t1 is gradient * days(t1), floored so
    the projected short end never drops below zero (a short rate already at
    or below zero floors the shift at zero immediately).
    """

    __slots__ = ("curve", "gradient", "_short_floor")
    label = "P-EWMA"

    def __init__(self, curve: SpotCurve, gradient_per_day: float) -> None:
        self.curve = curve
        self.gradient = gradient_per_day
        self._short_floor = max(curve.short_rate, 0.0)

    def forward(self, t1: float, t2: float) -> float:
        if t1 < 0.0:
            raise ValueError(f"t1 must be >= 0, got {t1}")
        if t2 <= t1:
            raise ValueError(f"need t1 < t2, got t1={t1}, t2={t2}")
        shift = self.gradient * (DAYS_PER_YEAR * t1)
        floor = -self._short_floor
        if shift < floor:
            shift = floor
        return zero_rate(self.curve, t2 - t1) + shift


class _PiProvider:
    """Future funding priced off the curves actually observed later."""

    __slots__ = ("history", "start")
    label = "PI"

    def __init__(self, history: CurveHistory, start: date) -> None:
        self.history = history
        self.start = start

    def forward(self, t1: float, t2: float) -> float:
        if t1 < 0.0:
            raise ValueError(f"t1 must be >= 0, got {t1}")
        if t2 <= t1:
            raise ValueError(f"need t1 < t2, got t1={t1}, t2={t2}")
        target = add_years(self.start, t1)
        if target > self.history.end:
            raise DataGapError(
                f"history ends {self.history.end.isoformat()}, "
                f"needed a curve for {target.isoformat()}"
            )
        curve = self.history.curve_at_or_before(target)
        return zero_rate(curve, t2 - t1)


def q_provider(curve: SpotCurve) -> _QProvider:
    """Measure in which today's curve perfectly predicts future curves."""
    return _QProvider(curve)


def constant_provider(curve: SpotCurve) -> _ConstantProvider:
    """Measure in which future curves keep exactly today's shape."""
    return _ConstantProvider(curve)


def ewma_gradient(observations: Sequence[tuple[date, float]], lam: float) -> float:
    """Exponentially weighted average of day-over-day short-rate changes.

    Each observed change is expressed per day over its calendar gap and
    blended with weight exp(-gap/lam); lam = 0 returns the latest change.
    Needs at least two date-ascending observations.
    """
    if lam < 0.0:
        raise ValueError("lam must be >= 0")
    if len(observations) < 2:
        raise InsufficientDataError(
            f"gradient needs >= 2 observations, got {len(observations)}"
        )
    grad: float | None = None
    prev_day, prev_rate = observations[0]
    for day, rate in observations[1:]:
        gap_days = (day - prev_day).days
        if gap_days <= 0:
            raise ValueError("observation dates must be strictly ascending")
        change = (rate - prev_rate) / gap_days
        if grad is None or lam == 0.0:
            grad = change
        else:
            w = math.exp(-(gap_days / DAYS_PER_YEAR) / lam)
            grad = w * grad + (1.0 - w) * change
        prev_day, prev_rate = day, rate
    assert grad is not None
    return grad


def refine_gradient(
    g_raw: float,
    params: PredictorParams,
    short_rate_now: float,
    horizon_days: int,
) -> ShiftForecast:
    """Threshold, scale, and floor a raw gradient into an effective one.

    Gradients below theta in magnitude are treated as noise and zeroed;
    survivors are scaled by omega; negative gradients are then floored so
    the short rate projected `horizon_days` ahead stays non-negative.
    """
    g = 0.0 if abs(g_raw) < params.theta else params.omega * g_raw
    if g < 0.0 and horizon_days > 0:
        floor = -max(short_rate_now, 0.0) / horizon_days
        if g < floor:
            g = floor
    return ShiftForecast(g_raw, g, short_rate_now)


def ewma_provider(curve: SpotCurve, forecast: ShiftForecast) -> _EwmaProvider:
    """Measure in which the curve keeps its shape but drifts as forecast."""
    return _EwmaProvider(curve, forecast.gradient_effective)


def pi_provider(history: CurveHistory, start: date) -> _PiProvider:
    """Measure with complete knowledge of the curves observed after `start`."""
    return _PiProvider(history, start)
