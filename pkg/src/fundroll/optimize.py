"""Myopic roll-length optimization by exhaustive search over the daily grid.

The objective is piecewise-defined and non-convex in alpha (roll counts jump
at integer boundaries), so the optimizer evaluates every admissible grid
point rather than attempting analytic minimization; the grid is small.
"""

from __future__ import annotations

from dataclasses import dataclass
from datetime import date
from typing import Sequence

from .cost import CostResult, CurveProvider, _cost_value, cav, realized_cost
from .curves import CurveHistory
from .schedule import FundingSetup, alpha_grid

# Cost differences at or below this are analytic ties, not real structure.
TIE_TOL = 1e-12


@dataclass(frozen=True)
class OptimalRoll:
    """Grid argmin of the average funding cost.

    alpha_star is the largest roll length among ties (fewest rolls, same
    cost); cost is the grid minimum; classification tags the boundary
    structure of the optimum.
    """

    alpha_star: float
    cost: float
    tie_set: tuple[float, ...]
    classification: str


def roll_cost_curve(
    provider: CurveProvider,
    setup: FundingSetup,
    alphas: Sequence[float] | None = None,
) -> list[CostResult]:
    """Average cost at every grid roll length (the data behind cost-vs-roll
    plots)."""
    if alphas is None:
        alphas = alpha_grid(setup)
    return [cav(provider, setup, a) for a in alphas]


def _reduce(alphas: Sequence[float], values: Sequence[float]) -> OptimalRoll:
    c_min = min(values)
    c_max = max(values)
    ties = tuple(a for a, v in zip(alphas, values) if v <= c_min + TIE_TOL)
    alpha_star = ties[-1]
    if c_max - c_min <= TIE_TOL:
        classification = "AllEquivalent"
    elif alpha_star == alphas[-1]:
        classification = "Term"
    elif alpha_star == alphas[0]:
        classification = "Shortest"
    else:
        classification = "Interior"
    return OptimalRoll(alpha_star, c_min, ties, classification)


def optimal_roll(
    provider: CurveProvider,
    setup: FundingSetup,
    alphas: Sequence[float] | None = None,
) -> OptimalRoll:
    """Exhaustively minimize the expected cost over the roll-length grid."""
    if alphas is None:
        alphas = alpha_grid(setup)
    values = [_cost_value(provider, setup, a) for a in alphas]
    return _reduce(alphas, values)


def evpi_roll(
    history: CurveHistory,
    setup: FundingSetup,
    start: date,
    alphas: Sequence[float] | None = None,
) -> OptimalRoll:
    """Best roll length achievable with perfect knowledge of the history.

    Minimizes the realized cost over the grid; equivalent to optimizing
    under the perfect-information provider.
    """
    if alphas is None:
        alphas = alpha_grid(setup)
    values = [realized_cost(history, setup, a, start).cav for a in alphas]
    return _reduce(alphas, values)
