"""Expected and realized average funding cost of a roll choice.

The cost of running a roll of length alpha over horizon h is the initial
purchase plus, per roll i at t_i = i*(alpha - delta):

    - a sale of the delta stub, crediting  phi * delta * F(t_i, t_i + delta)
    - a purchase of tenor q_i = min(alpha, h - t_i), costing q_i * F(t_i, t_i + q_i)

all divided by h. Costs are undiscounted. F(t1, t2) is supplied by a
measure-specific provider: the rate at which funding from t1 to t2 is
expected to be obtainable, as assessed at evaluation start.
"""

from __future__ import annotations

from dataclasses import dataclass
from datetime import date
from typing import Protocol, runtime_checkable

from .curves import CurveHistory, LinearCurve, add_years, zero_rate
from .errors import BufferViolationError, DataGapError, MeasureError
from .schedule import FundingSetup, n_rolls


@runtime_checkable
class CurveProvider(Protocol):
    """Forward-rate source under one measure.

    `forward(t1, t2)` must return a finite rate for 0 <= t1 < t2 <= h and be
    safe for concurrent read-only use after construction.
    """

    label: str

    def forward(self, t1: float, t2: float) -> float: ...


@dataclass(frozen=True)
class CostResult:
    """Average funding cost of one roll choice under one measure."""

    alpha: float
    cav: float
    measure_label: str


def _cost_value(provider: CurveProvider, setup: FundingSetup, alpha: float) -> float:
    """Average cost as a bare float; shared by `cav` and the optimizer."""
    h, d, phi = setup.h, setup.delta, setup.phi
    rolls = n_rolls(h / d, alpha / d)
    fwd = provider.forward
    e0 = min(alpha, h)
    try:
        total = e0 * fwd(0.0, e0)
        if rolls:
            spacing = alpha - d
            sale_weight = phi * d
            for i in range(1, rolls + 1):
                t = i * spacing
                q = h - t
                if alpha < q:
                    q = alpha
                total += q * fwd(t, min(t + q, h)) - sale_weight * fwd(t, t + d)
    except (BufferViolationError, DataGapError):
        raise
    except (ValueError, ArithmeticError) as exc:
        raise MeasureError(f"provider query failed for alpha={alpha}: {exc}") from exc
    return total / h


def cav(provider: CurveProvider, setup: FundingSetup, alpha: float) -> CostResult:
    """Expected average undiscounted funding cost of roll length `alpha`."""
    value = _cost_value(provider, setup, alpha)
    return CostResult(alpha, value, getattr(provider, "label", "?"))


def cav_linear(lin: LinearCurve, setup: FundingSetup, alpha: float) -> CostResult:
    """Closed form of the average cost on a straight-line curve whose shape
    persists: every future purchase of tenor q costs a + b*q, and every stub
    sale credits phi * delta * (a + b*delta).
    """
    h, d, phi = setup.h, setup.delta, setup.phi
    rolls = n_rolls(h / d, alpha / d)
    a, b = lin.a, lin.b
    e0 = min(alpha, h)
    total = e0 * (a + b * e0)
    if rolls:
        spacing = alpha - d
        sale = phi * d * (a + b * d)
        for i in range(1, rolls + 1):
            t = i * spacing
            q = h - t
            if alpha < q:
                q = alpha
            total += q * (a + b * q) - sale
    return CostResult(alpha, total / h, "P-Const")


def realized_cost(
    history: CurveHistory, setup: FundingSetup, alpha: float, start: date
) -> CostResult:
    """Average cost actually paid executing the schedule through history.

    Each leg is priced off the most recent curve observed at or before its
    roll date (the information available at execution); the stub sale is
    credited at phi times the then-current buffer-tenor rate. The history
    must cover [start, start + h]; staleness past its final observation is a
    data gap, never silently bridged.
    """
    h, d, phi = setup.h, setup.delta, setup.phi
    if history.start > start or history.end < add_years(start, h):
        raise DataGapError(
            f"history [{history.start}..{history.end}] does not cover "
            f"{start} plus the {setup.h}y horizon"
        )
    rolls = n_rolls(h / d, alpha / d)
    curve0 = history.curve_at_or_before(start)
    e0 = min(alpha, h)
    total = e0 * zero_rate(curve0, e0)
    if rolls:
        spacing = alpha - d
        sale_weight = phi * d
        for i in range(1, rolls + 1):
            t = i * spacing
            curve = history.curve_at_or_before(add_years(start, t))
            q = h - t
            if alpha < q:
                q = alpha
            total += q * zero_rate(curve, q) - sale_weight * zero_rate(curve, d)
    return CostResult(alpha, total / h, "Realized")
