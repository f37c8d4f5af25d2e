"""Synthetic weekly curve histories for fixtures, demos, and stress tests.

Real interbank-rate histories are licensed and not bundled; these generators
produce deterministic (or seed-reproducible) stand-ins with the same shape:
weekly observations on a fixed monthly tenor grid.
"""

from __future__ import annotations

import random
from datetime import date, timedelta

from .curves import CurveHistory, SpotCurve

DEFAULT_TENOR_MONTHS = (1, 2, 3, 6, 9, 12)


def _tenor_years(tenor_months: tuple[int, ...]) -> tuple[float, ...]:
    return tuple(m / 12.0 for m in tenor_months)


def flat_history(
    start: date,
    weeks: int,
    rate: float,
    tenor_months: tuple[int, ...] = DEFAULT_TENOR_MONTHS,
) -> CurveHistory:
    """Identical flat curves every week."""
    tenors = _tenor_years(tenor_months)
    rates = tuple(rate for _ in tenors)
    return CurveHistory(
        tuple(
            SpotCurve(start + timedelta(weeks=w), tenors, rates)
            for w in range(weeks)
        )
    )


def linear_history(
    start: date,
    weeks: int,
    a: float,
    b: float,
    tenor_months: tuple[int, ...] = DEFAULT_TENOR_MONTHS,
) -> CurveHistory:
    """Identical straight-line curves a + b*tenor every week."""
    tenors = _tenor_years(tenor_months)
    rates = tuple(a + b * t for t in tenors)
    return CurveHistory(
        tuple(
            SpotCurve(start + timedelta(weeks=w), tenors, rates)
            for w in range(weeks)
        )
    )


def trend_history(
    start: date,
    weeks: int,
    level0: float,
    trend_per_year: float,
    slope: float,
    tenor_months: tuple[int, ...] = DEFAULT_TENOR_MONTHS,
    floor: float = 0.0,
) -> CurveHistory:
    """Straight-line curves whose level drifts steadily through time."""
    tenors = _tenor_years(tenor_months)
    entries = []
    for w in range(weeks):
        level = max(level0 + trend_per_year * (7.0 * w / 365.0), floor)
        rates = tuple(max(level + slope * t, floor) for t in tenors)
        entries.append(SpotCurve(start + timedelta(weeks=w), tenors, rates))
    return CurveHistory(tuple(entries))


def two_regime_history(
    start: date = date(2001, 1, 5),
    weeks: int = 416,
    level_high: float = 0.05,
    level_low: float = 0.025,
    drop_start_week: int = 200,
    drop_weeks: int = 40,
    slope: float = 0.015,
    tenor_months: tuple[int, ...] = DEFAULT_TENOR_MONTHS,
) -> CurveHistory:
    """Upward-sloping curves whose level halves over a mid-sample window.

    Shipped as the standard stress fixture: a strategy locking long funding
    precisely before the drop pays the old level for a full horizon, while a
    momentum-aware roller adapts within weeks.
    """
    tenors = _tenor_years(tenor_months)
    entries = []
    for w in range(weeks):
        if w < drop_start_week:
            level = level_high
        elif w < drop_start_week + drop_weeks:
            frac = (w - drop_start_week) / drop_weeks
            level = level_high + (level_low - level_high) * frac
        else:
            level = level_low
        rates = tuple(level + slope * t for t in tenors)
        entries.append(SpotCurve(start + timedelta(weeks=w), tenors, rates))
    return CurveHistory(tuple(entries))


def random_walk_history(
    seed: int,
    weeks: int,
    start: date = date(2000, 1, 7),
    level0: float = 0.04,
    slope0: float = 0.01,
    level_vol: float = 0.002,
    slope_vol: float = 0.0005,
    floor: float = 0.0005,
    tenor_months: tuple[int, ...] = DEFAULT_TENOR_MONTHS,
) -> CurveHistory:
    """Seeded random-walk level and slope, floored away from zero."""
    rng = random.Random(seed)
    tenors = _tenor_years(tenor_months)
    level, slope = level0, slope0
    entries = []
    for w in range(weeks):
        rates = tuple(max(level + slope * t, floor) for t in tenors)
        entries.append(SpotCurve(start + timedelta(weeks=w), tenors, rates))
        level = max(level + rng.gauss(0.0, level_vol), floor)
        slope += rng.gauss(0.0, slope_vol)
        slope = min(max(slope, -0.02), 0.04)
    return CurveHistory(tuple(entries))
