"""Numeric side of the doubling-strategy analysis.

Implements the quadratic profit-gap inequality, the closed-form asymptotic
ratio, the interval recurrence that tabulates absolute-ratio bounds per phase,
its linearized tail, and the three-case lower-bound formula for the doubling
construction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .strategies import GAMMA_STAR, PRESETS, X_STAR

__all__ = [
    "GAMMA_STAR",
    "X_STAR",
    "PRESETS",
    "RecurrenceRow",
    "profvalue_gap",
    "asymptotic_ratio",
    "recurrence_table",
    "tail_bound",
    "occ_lb_formula",
    "occ_lb_minimum",
    "asymptotic_ratio_grid_min",
]


def profvalue_gap(a: int, b: int, x: float) -> float:
    """Gap of the pairwise-profit inequality, scaled by 2x.

    Equals (b - a*x)^2 + a*x*(2 - x) - b; non-negative for all non-negative
    integers a, b and 0 < x <= 1, which is what splitting a clique of a+b
    vertices into an a-part and a b-part costs at most.
    """
    if a < 0 or b < 0:
        raise ValueError("a and b must be non-negative integers")
    if not 0 < x <= 1:
        raise ValueError("x must lie in (0, 1]")
    return (b - a * x) ** 2 + a * x * (2 - x) - b


def asymptotic_ratio(gamma: float, x: float) -> float:
    """Closed-form limit ratio gamma*(gamma*x + x + gamma - 1)/(x*(gamma-x-1)).

    Only meaningful in the contraction region x + 1 < gamma (with x > 0).
    """
    if x <= 0 or x + 1 >= gamma:
        raise ValueError("need gamma > x + 1 > 1")
    return gamma * (gamma * x + x + gamma - 1) / (x * (gamma - x - 1))


def _delta_bounds(gamma: float, j: int) -> tuple[int, int]:
    """Integer range for the profit committed in phase j."""
    if j == 0:
        return 1, 1
    gj = gamma**j
    return math.ceil(gj), math.floor(gj + (math.sqrt(8 * gj + 1) + 1) / 2)


@dataclass(frozen=True)
class RecurrenceRow:
    j: int
    delta_min: int
    delta_max: int
    s_min: int
    s_max: int
    rprime: float  # upper bound on the phase's absolute ratio


def recurrence_table(gamma: float, x: float, max_phase: int, r1: float = 10.0) -> list[RecurrenceRow]:
    """Phase table of cumulative-profit ranges and absolute-ratio bounds.

    S_j accumulates the integer bounds on the committed profits (S_0 = 1).
    The ratio bound follows the recurrence
        R'_j <= (x+1)/(x * S_{j-1}) * (x * S_{j-2} * R'_{j-1} + Delta_j) + 2
    evaluated at the safe corner of the intervals: Delta_j and S_{j-2} at
    their maxima, S_{j-1} at its minimum.  R'_0 is 1 (one edge each side) and
    R'_1 is the seeded constant `r1` from the first-phase case analysis, which
    holds for gamma around 3.3.
    """
    if max_phase < 1:
        raise ValueError("need max_phase >= 1")
    if x <= 0 or x + 1 >= gamma:
        raise ValueError("need gamma > x + 1 > 1")
    rows = [RecurrenceRow(0, 1, 1, 1, 1, 1.0)]
    s_min, s_max = 1, 1
    prev, prev2 = rows[0], None
    for j in range(1, max_phase + 1):
        d_min, d_max = _delta_bounds(gamma, j)
        s_min += d_min
        s_max += d_max
        if j == 1:
            rp = r1
        else:
            rp = (x + 1) / (x * prev.s_min) * (x * prev2.s_max * prev.rprime + d_max) + 2
        prev2, prev = prev, RecurrenceRow(j, d_min, d_max, s_min, s_max, rp)
        rows.append(prev)
    return rows


def tail_bound(gamma: float, x: float, from_j: int = 8, horizon: int = 60) -> tuple[float, float, float]:
    """Suprema of the linearized recurrence R'_j <= alpha_j R'_{j-1} + beta_j.

    alpha_j = (x+1) S_max_{j-2} / S_min_{j-1} and
    beta_j = (x+1) Delta_max_j / (x S_min_{j-1}) + 2, maximized over
    j >= from_j (checked on a finite window against the j->infinity limits).
    Returns (alpha_sup, beta_sup, beta_sup/(1-alpha_sup)); the fixed point is
    the limit of the dominating geometric tail and must converge.
    """
    if from_j < 2:
        raise ValueError("tail starts at from_j >= 2")
    rows = recurrence_table(gamma, x, from_j + horizon)
    alphas, betas = [], []
    for j in range(from_j, from_j + horizon + 1):
        r, r1, r2 = rows[j], rows[j - 1], rows[j - 2]
        alphas.append((x + 1) * r2.s_max / r1.s_min)
        betas.append((x + 1) * r.delta_max / (x * r1.s_min) + 2)
    # the sequences decrease toward their limits; fold the limits in anyway
    alpha_sup = max(max(alphas), (x + 1) / gamma)
    beta_sup = max(max(betas), (x + 1) * (gamma - 1) / x + 2)
    if alpha_sup >= 1:
        raise ValueError("tail does not contract: alpha >= 1")
    return alpha_sup, beta_sup, beta_sup / (1 - alpha_sup)


SQRT3 = math.sqrt(3)


def occ_lb_formula(gamma: float) -> float:
    """Lower bound forced on the doubling strategy with parameter gamma.

    Three regimes of the batch construction: for gamma >= 3 the triangle
    variant reaches (g^2+5g-2)/(g-1); between sqrt(3) and 3 it reaches
    (5g^3+5g^2+8g-6)/(3g(g-1)); at sqrt(3) and below the plain construction's
    g(g+3)/(g-1) applies.
    """
    if gamma <= 1:
        raise ValueError("gamma must exceed 1")
    if gamma >= 3:
        return (gamma * gamma + 5 * gamma - 2) / (gamma - 1)
    if gamma > SQRT3:
        return (5 * gamma**3 + 5 * gamma**2 + 8 * gamma - 6) / (3 * gamma * (gamma - 1))
    return gamma * (gamma + 3) / (gamma - 1)


def occ_lb_minimum(step: float = 1e-6) -> tuple[float, float]:
    """Grid-minimize the middle-regime bound over [sqrt(3), 3]."""
    gs = np.arange(SQRT3, 3.0 + step, step)
    vals = (5 * gs**3 + 5 * gs**2 + 8 * gs - 6) / (3 * gs * (gs - 1))
    i = int(np.argmin(vals))
    return float(gs[i]), float(vals[i])


def asymptotic_ratio_grid_min(step: float = 1e-3,
                              gamma_range: tuple[float, float] = (1.5, 6.0),
                              x_range: tuple[float, float] = (0.05, 1.0)) -> tuple[float, float, float]:
    """Grid search for the minimizer of the asymptotic ratio; returns (gamma, x, value)."""
    gs = np.arange(gamma_range[0], gamma_range[1] + step / 2, step)
    xs = np.arange(x_range[0], x_range[1] + step / 2, step)
    g, x = np.meshgrid(gs, xs, indexing="ij")
    denom = x * (g - x - 1)
    vals = np.where(denom > 1e-12, g * (g * x + x + g - 1) / np.where(denom > 1e-12, denom, 1.0), np.inf)
    i, j = np.unravel_index(int(np.argmin(vals)), vals.shape)
    return float(gs[i]), float(xs[j]), float(vals[i, j])
