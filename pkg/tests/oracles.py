"""Independent oracles used to cross-check the library implementations.

Everything here is deliberately written from scratch against first
principles (event simulation, discount factors, normal equations, weight
expansion) and must stay decoupled from the package internals it checks.
"""

from __future__ import annotations

import math

import numpy as np


def simulate_roll_events(h: float, delta: float, alpha: float, tol: float = 1e-9):
    """Brute-force schedule enumeration.

    Walk time forward: buy cover, and whenever the live position is down to
    `delta` remaining, sell the stub and buy again. Returns a list of
    (start, sale_tenor_or_None, purchase_tenor) tuples.
    """
    if alpha >= h - tol:
        return [(0.0, None, h)]
    if alpha - delta <= tol:
        raise ValueError("roll cannot progress")
    events = [(0.0, None, min(alpha, h))]
    end = min(alpha, h)
    while end < h - tol:
        start = end - delta
        purchase = min(alpha, h - start)
        events.append((start, delta, purchase))
        end = min(start + alpha, h)
    return events


def enumerate_cost(forward_fn, h: float, delta: float, phi: float, alpha: float) -> float:
    """Average cost from the brute-force event list and a forward function."""
    total = 0.0
    for start, sale, purchase in simulate_roll_events(h, delta, alpha):
        if sale is not None:
            total -= phi * sale * forward_fn(start, start + sale)
        total += purchase * forward_fn(start, start + purchase)
    return total / h


def discount_factor_forward(curve_fn, t1: float, t2: float) -> float:
    """Forward rate from discount factors exp(-y(t)*t)."""
    df1 = 1.0 if t1 == 0.0 else math.exp(-curve_fn(t1) * t1)
    df2 = math.exp(-curve_fn(t2) * t2)
    return math.log(df1 / df2) / (t2 - t1)


def ols_fit(x, y):
    """Least-squares line via numpy's lstsq (independent of manual sums)."""
    design = np.column_stack([np.ones(len(x)), np.asarray(x, dtype=float)])
    coef, *_ = np.linalg.lstsq(design, np.asarray(y, dtype=float), rcond=None)
    return float(coef[0]), float(coef[1])


def ewma_expanded(observations, lam: float) -> float:
    """Non-recursive expansion of the gap-decayed change average.

    The recursive filter g_k = w_k g_{k-1} + (1 - w_k) c_k unrolls to a
    weighted sum where change j carries weight (1 - w_j) * prod_{k>j} w_k
    and the first change absorbs the remaining tail weight.
    """
    days = [d for d, _ in observations]
    rates = [r for _, r in observations]
    changes = []
    weights = []
    for j in range(1, len(observations)):
        gap = (days[j] - days[j - 1]).days
        changes.append((rates[j] - rates[j - 1]) / gap)
        weights.append(math.exp(-(gap / 365.0) / lam))
    total = 0.0
    for j, change in enumerate(changes):
        if j == 0:
            w = 1.0
        else:
            w = 1.0 - weights[j]
        for k in range(j + 1, len(changes)):
            w *= weights[k]
        total += w * change
    return total
