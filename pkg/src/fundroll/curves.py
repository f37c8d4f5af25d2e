"""Dated zero-rate curves: interpolation, forward rates, and straight-line fits.

Conventions used throughout the package:

- Tenors and times are **year fractions**, with one day equal to 1/365 years
  (so a 1M buffer is 1/12 and a 1Y horizon is 1.0).
- Rates are **continuously compounded zero rates** per year.
- Interpolation between tenor nodes is linear in the zero rate. Below the
  shortest node the curve extrapolates flat; queries beyond the longest node
  are rejected (nothing downstream ever needs tenors past the horizon).
"""

from __future__ import annotations

import math
import sys
from bisect import bisect_right
from dataclasses import dataclass, field
from datetime import date, timedelta

from scipy.stats import t as _student_t

from .errors import DataGapError, InsufficientDataError

DAYS_PER_YEAR = 365.0

# Grace window for queries that land a hair past the last node through float
# round-off (e.g. t1 + (h - t1) overshooting h by one ulp).
_NODE_GRACE = 1e-9


def add_years(day: date, years: float) -> date:
    """Shift a date by a year fraction under the 1y = 365d convention."""
    return day + timedelta(days=round(years * DAYS_PER_YEAR))


def years_between(d0: date, d1: date) -> float:
    """Year fraction from d0 to d1 (negative if d1 precedes d0)."""
    return (d1 - d0).days / DAYS_PER_YEAR


@dataclass(frozen=True)
class SpotCurve:
    """Zero-rate curve observed on a single date.

    tenors: strictly ascending year fractions, all > 0.
    rates:  continuously compounded zero rates, one per tenor.
    """

    as_of: date
    tenors: tuple[float, ...]
    rates: tuple[float, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "tenors", tuple(float(t) for t in self.tenors))
        object.__setattr__(self, "rates", tuple(float(r) for r in self.rates))
        if not self.tenors:
            raise ValueError("curve needs at least one tenor node")
        if len(self.tenors) != len(self.rates):
            raise ValueError("tenors and rates must have the same length")
        prev = 0.0
        for t in self.tenors:
            if not t > prev:
                raise ValueError("tenors must be strictly ascending and > 0")
            prev = t
        if not all(math.isfinite(r) for r in self.rates):
            raise ValueError("rates must be finite")

    @property
    def max_tenor(self) -> float:
        return self.tenors[-1]

    @property
    def short_rate(self) -> float:
        """Rate at the shortest quoted tenor."""
        return self.rates[0]


@dataclass(frozen=True)
class LinearCurve:
    """Straight-line zero curve y(T) = a + b*T (continuous compounding)."""

    a: float
    b: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.a) and math.isfinite(self.b)):
            raise ValueError("linear curve coefficients must be finite")

    def rate(self, tenor: float) -> float:
        return self.a + self.b * tenor


@dataclass(frozen=True)
class FitDiagnostics:
    """Goodness-of-fit summary for a straight-line curve fit."""

    r_squared: float
    p_value: float

    def __post_init__(self) -> None:
        if not 0.0 <= self.r_squared <= 1.0:
            raise ValueError("r_squared must lie in [0, 1]")
        if not 0.0 < self.p_value <= 1.0:
            raise ValueError("p_value must lie in (0, 1]")


@dataclass(frozen=True)
class CurveHistory:
    """Date-ordered weekly curve observations for one currency.

    All entries must share the same tenor grid so that historical replays and
    forecasts compare like with like.
    """

    entries: tuple[SpotCurve, ...]
    _ordinals: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "entries", tuple(self.entries))
        if not self.entries:
            raise ValueError("history needs at least one curve")
        grid = self.entries[0].tenors
        prev = None
        for c in self.entries:
            if prev is not None and c.as_of <= prev:
                raise ValueError("history dates must be strictly ascending")
            if c.tenors != grid:
                raise ValueError("all curves in a history must share one tenor grid")
            prev = c.as_of
        object.__setattr__(self, "_ordinals", tuple(c.as_of.toordinal() for c in self.entries))

    def __len__(self) -> int:
        return len(self.entries)

    @property
    def dates(self) -> tuple[date, ...]:
        return tuple(c.as_of for c in self.entries)

    @property
    def start(self) -> date:
        return self.entries[0].as_of

    @property
    def end(self) -> date:
        return self.entries[-1].as_of

    @property
    def tenor_grid(self) -> tuple[float, ...]:
        return self.entries[0].tenors

    def index_at_or_before(self, day: date) -> int:
        idx = bisect_right(self._ordinals, day.toordinal()) - 1
        if idx < 0:
            raise DataGapError(f"no curve observed at or before {day.isoformat()}")
        return idx

    def curve_at_or_before(self, day: date) -> SpotCurve:
        """Most recent curve observed at or before `day` (execution-time info)."""
        return self.entries[self.index_at_or_before(day)]

    def curve_at(self, day: date) -> SpotCurve:
        """Curve observed exactly on `day`."""
        idx = bisect_right(self._ordinals, day.toordinal()) - 1
        if idx < 0 or self.entries[idx].as_of != day:
            raise DataGapError(f"no curve observed on {day.isoformat()}")
        return self.entries[idx]

    def truncated(self, through: date) -> "CurveHistory":
        """History restricted to entries observed at or before `through`."""
        idx = self.index_at_or_before(through)
        return CurveHistory(self.entries[: idx + 1])

    def short_rates(self) -> list[tuple[date, float]]:
        """Dated series of the shortest-tenor rate, the momentum filter input."""
        return [(c.as_of, c.short_rate) for c in self.entries]


def zero_rate(curve: SpotCurve, tenor: float) -> float:
    """Zero rate at a year-fraction tenor.

    Exact node values at grid tenors, linear interpolation between nodes,
    flat extrapolation below the shortest node. Tenors must be positive and
    not exceed the longest node (a ~1e-9 grace absorbs float round-off).
    """
    tenors = curve.tenors
    if tenor <= tenors[0]:
        if tenor <= 0.0:
            raise ValueError(f"tenor must be > 0, got {tenor}")
        return curve.rates[0]
    if tenor >= tenors[-1]:
        if tenor > tenors[-1] + _NODE_GRACE:
            raise ValueError(f"tenor {tenor} beyond last curve node {tenors[-1]}")
        return curve.rates[-1]
    j = bisect_right(tenors, tenor)
    rates = curve.rates
    lo, hi = tenors[j - 1], tenors[j]
    r_lo, r_hi = rates[j - 1], rates[j]
    return r_lo + (r_hi - r_lo) * (tenor - lo) / (hi - lo)


def forward_rate(curve: SpotCurve, t1: float, t2: float) -> float:
    """Continuously compounded forward rate between t1 and t2.

    Computed as (y(t2)*t2 - y(t1)*t1) / (t2 - t1) with y(0)*0 taken as 0,
    so a spot-starting forward equals the zero rate.
    """
    if t1 < 0.0:
        raise ValueError(f"t1 must be >= 0, got {t1}")
    if t2 <= t1:
        raise ValueError(f"need t1 < t2, got t1={t1}, t2={t2}")
    y2 = zero_rate(curve, t2)
    if t1 == 0.0:
        return y2
    y1 = zero_rate(curve, t1)
    return (y2 * t2 - y1 * t1) / (t2 - t1)


def fit_linear(curve: SpotCurve) -> tuple[LinearCurve, FitDiagnostics]:
    """Ordinary least squares of zero rates on tenors.

    Returns the fitted line plus r-squared and the two-sided p-value of the
    slope. A flat input (zero rate variance) is a perfect constant fit and is
    reported as r_squared = 1 with an uninformative p_value = 1.
    """
    n = len(curve.tenors)
    if n < 3:
        raise InsufficientDataError(f"linear fit needs >= 3 nodes, got {n}")
    x = curve.tenors
    y = curve.rates
    x_bar = sum(x) / n
    y_bar = sum(y) / n
    sxx = sum((xi - x_bar) ** 2 for xi in x)
    sxy = sum((xi - x_bar) * (yi - y_bar) for xi, yi in zip(x, y))
    tss = sum((yi - y_bar) ** 2 for yi in y)
    if max(y) == min(y) or tss == 0.0:
        # Flat input (to float precision): a constant fits exactly and the
        # slope test says nothing.
        return LinearCurve(y[0], 0.0), FitDiagnostics(1.0, 1.0)
    b = sxy / sxx
    a = y_bar - b * x_bar
    rss = sum((yi - (a + b * xi)) ** 2 for xi, yi in zip(x, y))
    r_squared = min(1.0, max(0.0, 1.0 - rss / tss))
    se_b = math.sqrt((rss / (n - 2)) / sxx)
    if se_b == 0.0:
        # Exact fit (to float precision): the slope test statistic diverges;
        # report the smallest positive probability, not an out-of-range zero.
        return LinearCurve(a, b), FitDiagnostics(1.0, sys.float_info.min)
    t_stat = b / se_b
    p_value = 2.0 * float(_student_t.sf(abs(t_stat), n - 2))
    p_value = min(1.0, max(sys.float_info.min, p_value))
    return LinearCurve(a, b), FitDiagnostics(r_squared, p_value)
