"""Deterministic roll schedules implied by a roll length under a buffer.

A funding requirement of horizon h must always be covered with at least
`delta` (the regulatory buffer) of remaining maturity. Buying funding of
tenor `alpha > delta` therefore forces a repurchase every `alpha - delta`,
with the stub of the old position (exactly `delta` long) sold at each roll.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import BufferViolationError

# Absolute slack used when deciding whether a roll count lands exactly on an
# integer; covers float noise in alpha/delta ratios without misclassifying
# genuinely fractional cases (grid ratios sit >= ~1e-4 from integers).
_CEIL_TOL = 1e-9


@dataclass(frozen=True)
class FundingSetup:
    """Problem constants: horizon h, buffer delta, bid-ask fraction phi.

    All times are year fractions; phi is the fraction of funding value
    recovered when selling a position shorter than the buffer.
    """

    h: float
    delta: float
    phi: float

    def __post_init__(self) -> None:
        if not self.h > 0.0:
            raise ValueError("horizon h must be > 0")
        if not 0.0 < self.delta <= self.h:
            raise ValueError("buffer delta must satisfy 0 < delta <= h")
        if not 0.0 < self.phi <= 1.0:
            raise ValueError("bid-ask fraction phi must lie in (0, 1]")


@dataclass(frozen=True)
class RollEvent:
    """One purchase (and, after the first event, one stub sale) at `start`."""

    index: int
    start: float
    sale_tenor: float | None
    purchase_tenor: float


@dataclass(frozen=True)
class RollSchedule:
    """Full event sequence for one roll length over the horizon."""

    alpha: float
    n_rolls: int
    events: tuple[RollEvent, ...]


def n_rolls(h_n: float, alpha_n: float) -> int:
    """Number of rolls needed to fund a horizon of h_n buffer units with
    rolls of alpha_n buffer units.

    Zero when a single purchase spans the horizon; otherwise the ceiling of
    (h_n - alpha_n) / (alpha_n - 1). Roll lengths at or below one buffer
    unit can never progress and raise BufferViolationError.
    """
    if not h_n > 0.0:
        raise ValueError("h_n must be > 0")
    if alpha_n >= h_n - _CEIL_TOL:
        return 0
    if alpha_n <= 1.0:
        raise BufferViolationError(
            f"roll of {alpha_n} buffer units cannot progress (needs > 1 unit)"
        )
    ratio = (h_n - alpha_n) / (alpha_n - 1.0)
    return max(1, math.ceil(ratio - _CEIL_TOL))


def gross_excess(h_n: float, alpha_n: float) -> float:
    """Percentage of horizon time funded by sub-buffer overlap positions."""
    return 100.0 * n_rolls(h_n, alpha_n) / h_n


def build_schedule(setup: FundingSetup, alpha: float) -> RollSchedule:
    """Event-by-event roll schedule for roll length `alpha`.

    Event i starts at i*(alpha - delta); every event after the first sells
    the delta stub of the previous purchase; purchase tenors are truncated
    so the final purchase matures exactly at the horizon.
    """
    h, d = setup.h, setup.delta
    rolls = n_rolls(h / d, alpha / d)
    events = [RollEvent(0, 0.0, None, min(alpha, h))]
    spacing = alpha - d
    for i in range(1, rolls + 1):
        start = i * spacing
        events.append(RollEvent(i, start, d, min(alpha, h - start)))
    return RollSchedule(alpha=alpha, n_rolls=rolls, events=tuple(events))


def alpha_grid(setup: FundingSetup, step_days: int = 1) -> tuple[float, ...]:
    """Admissible roll lengths: delta + k steps of `step_days`, capped at h.

    The shortest admissible roll is one step past the buffer; the grid always
    ends exactly at the horizon (term funding).
    """
    if step_days < 1:
        raise ValueError("step_days must be >= 1")
    step = step_days / 365.0
    out: list[float] = []
    k = 1
    while True:
        a = setup.delta + k * step
        if a >= setup.h - 1e-12:
            break
        out.append(a)
        k += 1
    out.append(setup.h)
    return tuple(out)
