"""Adaptive sampling rule on the two-line count lattice.

A state after m sampled units is (x1, x2, x3) = (units on line 1, successes
on line 1, successes on line 2); line 2 holds m - x1 units. The rule
estimates both success rates from the state, scores a one-step lookahead of
the approximate long-run value, and samples line 1 next with probability
gamma, 1/2, or 1 - gamma.

The scalar functions are the reference path (used by the simulator and the
live session service); ``level_decisions`` is the identical arithmetic
vectorized over all states of one level (used by the exact-distribution
enumeration). Arithmetic is ordered so that exchanging the two lines maps
every intermediate to its mirror bitwise; the exact engine's symmetry
guarantees rely on this.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

import numpy as np

from .model import WCoefficients

__all__ = [
    "LatticeState",
    "SamplingDecision",
    "estimate_thetas",
    "u_hat",
    "lookahead_values",
    "sampling_probability",
    "level_decisions",
    "decision_probabilities",
]

# Relative tolerance deciding v1 = v2 (symmetric states hit 0 exactly).
V_TIE_REL_TOL = 1e-12

LookaheadUnits = Literal["next", "current"]


@dataclass(frozen=True)
class LatticeState:
    """Counts after m units: x1 = N1, x2 = S1, x3 = S2 (N2 = m - x1)."""

    x1: int
    x2: int
    x3: int
    m: int

    def __post_init__(self) -> None:
        if not 1 <= self.x1 <= self.m - 1:
            raise ValueError(
                f"x1 must lie in [1, m-1] (first two units are blocked), "
                f"got x1={self.x1}, m={self.m}"
            )
        if not 0 <= self.x2 <= self.x1:
            raise ValueError(f"x2 must lie in [0, x1], got x2={self.x2}, x1={self.x1}")
        if not 0 <= self.x3 <= self.m - self.x1:
            raise ValueError(
                f"x3 must lie in [0, m-x1], got x3={self.x3}, m-x1={self.m - self.x1}"
            )

    @property
    def n1(self) -> int:
        return self.x1

    @property
    def n2(self) -> int:
        return self.m - self.x1

    @property
    def s1(self) -> int:
        return self.x2

    @property
    def s2(self) -> int:
        return self.x3

    def key(self) -> tuple[int, int, int]:
        return (self.x1, self.x2, self.x3)

    def mirror(self) -> "LatticeState":
        """The same state with the two lines exchanged."""
        return LatticeState(self.m - self.x1, self.x3, self.x2, self.m)

    def after(self, line: int, outcome: int) -> "LatticeState":
        """Successor state once one more unit on `line` yields `outcome`."""
        if line not in (1, 2):
            raise ValueError(f"line must be 1 or 2, got {line!r}")
        if outcome not in (0, 1):
            raise ValueError(f"outcome must be 0 or 1, got {outcome!r}")
        if line == 1:
            return LatticeState(self.x1 + 1, self.x2 + outcome, self.x3, self.m + 1)
        return LatticeState(self.x1, self.x2, self.x3 + outcome, self.m + 1)


@dataclass(frozen=True)
class SamplingDecision:
    """Probability of sampling line 1 next, plus both lookahead scores."""

    pi1: float
    v1: float
    v2: float


def estimate_thetas(state: LatticeState) -> tuple[float, float]:
    """Plug-in success-rate estimates (sample proportions) for both lines."""
    if state.x1 < 1 or state.m - state.x1 < 1:
        raise ValueError("both lines need at least one sampled unit")
    return state.x2 / state.x1, state.x3 / (state.m - state.x1)


def _w_gap_sign(x1: int, x2: int, x3: int, m: int, c: WCoefficients) -> int:
    """Sign of W1 - W2; the tie is decided on the integer lattice."""
    if x2 == x3 and 2 * x1 == m:
        return 0
    gap = (x2 - x3) * c.a + (2 * x1 - m) * c.b
    return 1 if gap > 0 else -1


def u_hat(
    state: LatticeState,
    gamma: float,
    c: WCoefficients,
    level: int | None = None,
) -> float:
    """Approximate long-run value at `state`: level * (weighted mean reward).

    The better line by current W gets weight 1 - gamma, the other gamma
    (equal split on a tie). `level` defaults to the state's own unit count;
    the lookahead passes the level it integrates at.
    """
    th1, th2 = estimate_thetas(state)
    r1 = th1 * c.a + c.b
    r2 = th2 * c.a + c.b
    sign = _w_gap_sign(state.x1, state.x2, state.x3, state.m, c)
    if sign > 0:
        combo = (1.0 - gamma) * r1 + gamma * r2
    elif sign < 0:
        combo = gamma * r1 + (1.0 - gamma) * r2
    else:
        combo = 0.5 * r1 + 0.5 * r2
    return (state.m if level is None else level) * combo


def lookahead_values(
    state: LatticeState,
    gamma: float,
    c: WCoefficients,
    lookahead_units: LookaheadUnits = "next",
) -> tuple[float, float]:
    """One-step lookahead scores (v1, v2) for sampling each line next.

    v_j = r_hat(j) + E[u_hat(successor)] with the outcome law Bernoulli of
    the line's current estimate. Successor values use the successor's own
    counts and indicators; `lookahead_units="current"` keeps the current
    unit count as the value multiplier instead of advancing it.
    """
    th1, th2 = estimate_thetas(state)
    level = state.m + 1 if lookahead_units == "next" else state.m
    u1s = u_hat(state.after(1, 1), gamma, c, level=level)
    u1f = u_hat(state.after(1, 0), gamma, c, level=level)
    u2s = u_hat(state.after(2, 1), gamma, c, level=level)
    u2f = u_hat(state.after(2, 0), gamma, c, level=level)
    v1 = (th1 * c.a + c.b) + (th1 * u1s + (1.0 - th1) * u1f)
    v2 = (th2 * c.a + c.b) + (th2 * u2s + (1.0 - th2) * u2f)
    return v1, v2


def sampling_probability(
    state: LatticeState,
    gamma: float,
    c: WCoefficients,
    lookahead_units: LookaheadUnits = "next",
) -> SamplingDecision:
    """Probability of sampling line 1 next: 1-gamma, gamma, or 1/2 on a tie."""
    v1, v2 = lookahead_values(state, gamma, c, lookahead_units)
    tol = V_TIE_REL_TOL * max(1.0, abs(v1), abs(v2))
    if abs(v1 - v2) <= tol:
        pi1 = 0.5
    elif v1 > v2:
        pi1 = 1.0 - gamma
    else:
        pi1 = gamma
    return SamplingDecision(pi1=pi1, v1=v1, v2=v2)


# ---------------------------------------------------------------------------
# Vectorized path: one level of states at a time.
# ---------------------------------------------------------------------------


def _u_hat_arrays(x1, x2, x3, m, level, gamma: float, c: WCoefficients):
    """u_hat over parallel coordinate arrays; mirrors the scalar arithmetic."""
    th1 = x2 / x1
    th2 = x3 / (m - x1)
    r1 = th1 * c.a + c.b
    r2 = th2 * c.a + c.b
    tie = (x2 == x3) & (2 * x1 == m)
    gap = (x2 - x3) * c.a + (2 * x1 - m) * c.b
    combo = np.where(
        tie,
        0.5 * r1 + 0.5 * r2,
        np.where(gap > 0, (1.0 - gamma) * r1 + gamma * r2, gamma * r1 + (1.0 - gamma) * r2),
    )
    return level * combo


def level_decisions(
    x1: np.ndarray,
    x2: np.ndarray,
    x3: np.ndarray,
    m: int,
    gamma: float,
    c: WCoefficients,
    lookahead_units: LookaheadUnits = "next",
) -> np.ndarray:
    """Lookahead decisions for every state of one level.

    Returns int8 codes: +1 favor line 1 (pi1 = 1-gamma), -1 favor line 2
    (pi1 = gamma), 0 tie (pi1 = 1/2).
    """
    th1 = x2 / x1
    th2 = x3 / (m - x1)
    level = m + 1 if lookahead_units == "next" else m
    u1s = _u_hat_arrays(x1 + 1, x2 + 1, x3, m + 1, level, gamma, c)
    u1f = _u_hat_arrays(x1 + 1, x2, x3, m + 1, level, gamma, c)
    u2s = _u_hat_arrays(x1, x2, x3 + 1, m + 1, level, gamma, c)
    u2f = _u_hat_arrays(x1, x2, x3, m + 1, level, gamma, c)
    v1 = (th1 * c.a + c.b) + (th1 * u1s + (1.0 - th1) * u1f)
    v2 = (th2 * c.a + c.b) + (th2 * u2s + (1.0 - th2) * u2f)
    tol = V_TIE_REL_TOL * np.maximum(1.0, np.maximum(np.abs(v1), np.abs(v2)))
    codes = np.where(v1 > v2, np.int8(1), np.int8(-1))
    codes = np.where(np.abs(v1 - v2) <= tol, np.int8(0), codes)
    return codes


def decision_probabilities(
    codes: np.ndarray, gamma: float
) -> tuple[np.ndarray, np.ndarray]:
    """Map decision codes to (pi1, pi2) drawn from {gamma, 1/2, 1-gamma}.

    Both probabilities are selected from the same constant set (never via
    1 - pi subtraction) so mirrored states carry bitwise-equal weights.
    """
    lo, mid, hi = gamma, 0.5, 1.0 - gamma
    table1 = np.array([lo, mid, hi])
    table2 = np.array([hi, mid, lo])
    idx = codes.astype(np.int64) + 1
    return table1[idx], table2[idx]
