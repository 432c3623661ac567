"""Exact forward enumeration of the sampling process on the count lattice.

Each level m holds every reachable state (x1, x2, x3) with a path weight g:
the sum over all sampling paths reaching the state of the product of
realized sampling probabilities. g is free of the outcome probabilities;
hypothesized success rates (theta1, theta2) enter only when a level is
evaluated, so one enumeration serves the in-control bounds and every
out-of-control power column.

P(state) = g * theta1^x2 (1-theta1)^(x1-x2) * theta2^x3 (1-theta2)^(m-x1-x3).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import TYPE_CHECKING, Iterator

import numpy as np

from .model import DetectionConfig, WCoefficients
from .policy import LatticeState, LookaheadUnits, decision_probabilities, level_decisions

if TYPE_CHECKING:  # pragma: no cover
    from .bounds import ControlBounds

__all__ = [
    "WeightedState",
    "LevelDistribution",
    "WDistribution",
    "initial_states",
    "advance",
    "enumerate_levels",
    "iter_levels",
    "state_probability",
    "w_marginal",
    "expected_allocation",
    "alarm_probabilities",
    "joint_alarm_probability",
]

# Enumeration refuses budgets beyond this (O(n^3) states per level).
DEFAULT_BUDGET_CAP = 200


def _require_theta(name: str, value: float) -> None:
    if not (0.0 < value < 1.0):
        raise ValueError(f"{name} must lie strictly in (0, 1), got {value!r}")


@dataclass(frozen=True)
class WeightedState:
    """One lattice state with its theta-free path weight."""

    state: LatticeState
    g: float


@dataclass(frozen=True)
class LevelDistribution:
    """All states of one level m with path weights, sorted by (x1, x2, x3)."""

    m: int
    x1: np.ndarray
    x2: np.ndarray
    x3: np.ndarray
    g: np.ndarray

    def __post_init__(self) -> None:
        for arr in (self.x1, self.x2, self.x3, self.g):
            arr.setflags(write=False)

    def __len__(self) -> int:
        return len(self.g)

    def states(self) -> Iterator[WeightedState]:
        for i in range(len(self.g)):
            yield WeightedState(
                LatticeState(int(self.x1[i]), int(self.x2[i]), int(self.x3[i]), self.m),
                float(self.g[i]),
            )

    def as_dict(self) -> dict[tuple[int, int, int], float]:
        return {
            (int(a), int(b), int(c)): float(w)
            for a, b, c, w in zip(self.x1, self.x2, self.x3, self.g)
        }

    def evaluate(self, theta1: float, theta2: float) -> np.ndarray:
        """Per-state probabilities under hypothesized success rates."""
        _require_theta("theta1", theta1)
        _require_theta("theta2", theta2)
        # Grouped as g * (line-1 factor * line-2 factor): exchanging the lines
        # permutes commutative operands only, keeping mirror states bitwise
        # equal when theta1 == theta2.
        f1 = theta1**self.x2 * (1.0 - theta1) ** (self.x1 - self.x2)
        f2 = theta2**self.x3 * (1.0 - theta2) ** (self.m - self.x1 - self.x3)
        return self.g * (f1 * f2)

    def total_probability(self, theta1: float, theta2: float) -> float:
        return math.fsum(self.evaluate(theta1, theta2))

    def w_values(self, c: WCoefficients, line: int) -> np.ndarray:
        """Per-state W statistic of one line."""
        if line == 1:
            return self.x2 * c.a + self.x1 * c.b
        if line == 2:
            return self.x3 * c.a + (self.m - self.x1) * c.b
        raise ValueError(f"line must be 1 or 2, got {line!r}")

    def to_csv(self, path) -> None:
        """Dump as x1,x2,x3,g rows in ascending state order (full precision)."""
        with open(path, "w", encoding="utf-8") as fh:
            fh.write("x1,x2,x3,g\n")
            for a, b, c, w in zip(self.x1, self.x2, self.x3, self.g):
                fh.write(f"{int(a)},{int(b)},{int(c)},{float(w)!r}\n")


def initial_states() -> LevelDistribution:
    """Level 2 after the blocked first pair: four states, each with g = 1."""
    x1 = np.array([1, 1, 1, 1], dtype=np.int64)
    x2 = np.array([0, 0, 1, 1], dtype=np.int64)
    x3 = np.array([0, 1, 0, 1], dtype=np.int64)
    return LevelDistribution(m=2, x1=x1, x2=x2, x3=x3, g=np.ones(4))


def advance(
    d: LevelDistribution,
    gamma: float,
    c: WCoefficients,
    lookahead_units: LookaheadUnits = "next",
) -> LevelDistribution:
    """One sampling step: expand every state through the four transitions.

    Successors sharing a key are merged by summing their weights. Each
    successor has at most one predecessor per transition arrow, so the merge
    is a fixed four-term tree; pairing each arrow with its line-exchange
    image keeps the H0 mirror symmetry of g exact.
    """
    codes = level_decisions(d.x1, d.x2, d.x3, d.m, gamma, c, lookahead_units)
    pi1, pi2 = decision_probabilities(codes, gamma)

    new_m = d.m + 1
    size = new_m**3
    lin = (d.x1 * new_m + d.x2) * new_m + d.x3

    line1_succ = np.zeros(size)
    line1_fail = np.zeros(size)
    line2_succ = np.zeros(size)
    line2_fail = np.zeros(size)
    line1_succ[lin + new_m * new_m + new_m] = d.g * pi1
    line1_fail[lin + new_m * new_m] = d.g * pi1
    line2_succ[lin + 1] = d.g * pi2
    line2_fail[lin] = d.g * pi2

    merged = (line1_succ + line2_succ) + (line1_fail + line2_fail)
    (idx,) = np.nonzero(merged)
    x1, rem = np.divmod(idx, new_m * new_m)
    x2, x3 = np.divmod(rem, new_m)
    return LevelDistribution(m=new_m, x1=x1, x2=x2, x3=x3, g=merged[idx])


def iter_levels(
    config: DetectionConfig,
    lookahead_units: LookaheadUnits = "next",
    cap: int = DEFAULT_BUDGET_CAP,
) -> Iterator[LevelDistribution]:
    """Yield the level distributions for m = 2, ..., config.n in order."""
    if config.n > cap:
        raise ValueError(
            f"budget n={config.n} exceeds the enumeration cap {cap}; "
            f"raise `cap` explicitly if you really want this"
        )
    c = config.coefficients()
    d = initial_states()
    yield d
    while d.m < config.n:
        d = advance(d, config.gamma, c, lookahead_units)
        yield d


def enumerate_levels(
    config: DetectionConfig,
    lookahead_units: LookaheadUnits = "next",
    cap: int = DEFAULT_BUDGET_CAP,
) -> LevelDistribution:
    """The full-budget level distribution (m = config.n)."""
    for d in iter_levels(config, lookahead_units, cap):
        pass
    return d


def state_probability(ws: WeightedState, theta1: float, theta2: float) -> float:
    """Probability of one weighted state under hypothesized success rates."""
    _require_theta("theta1", theta1)
    _require_theta("theta2", theta2)
    s = ws.state
    f1 = theta1**s.x2 * (1.0 - theta1) ** (s.x1 - s.x2)
    f2 = theta2**s.x3 * (1.0 - theta2) ** (s.m - s.x1 - s.x3)
    return ws.g * (f1 * f2)


@dataclass(frozen=True)
class WDistribution:
    """Exact law of one line's W statistic: atoms keyed by (successes, samples).

    W values are derived on demand as s*a + n*b; probabilities are stored on
    the integer lattice so tail sums never compare perturbed floats.
    """

    coeffs: WCoefficients
    s: np.ndarray
    n: np.ndarray
    p: np.ndarray

    def __post_init__(self) -> None:
        for arr in (self.s, self.n, self.p):
            arr.setflags(write=False)

    def __len__(self) -> int:
        return len(self.p)

    def w_values(self) -> np.ndarray:
        return self.s * self.coeffs.a + self.n * self.coeffs.b

    def as_dict(self) -> dict[tuple[int, int], float]:
        return {
            (int(a), int(b)): float(q) for a, b, q in zip(self.s, self.n, self.p)
        }

    def total_probability(self) -> float:
        return math.fsum(self.p)

    def mean(self) -> float:
        return math.fsum(self.p * self.w_values())

    def sd(self) -> float:
        mu = self.mean()
        return math.sqrt(math.fsum(self.p * (self.w_values() - mu) ** 2))


def w_marginal(
    d: LevelDistribution,
    theta1: float,
    theta2: float,
    line: int,
    c: WCoefficients,
) -> WDistribution:
    """Exact marginal law of W for one line under (theta1, theta2).

    Aggregates state probabilities over the line's (successes, samples)
    pair: (x2, x1) for line 1, (x3, m - x1) for line 2. The level's weights
    are theta-free, so the statistic's coefficients are supplied here.
    """
    if line == 1:
        s, n = d.x2, d.x1
    elif line == 2:
        s, n = d.x3, d.m - d.x1
    else:
        raise ValueError(f"line must be 1 or 2, got {line!r}")
    p = d.evaluate(theta1, theta2)
    side = d.m + 1
    dense = np.zeros(side * side)
    np.add.at(dense, s * side + n, p)
    (idx,) = np.nonzero(dense)
    s_out, n_out = np.divmod(idx, side)
    return WDistribution(coeffs=c, s=s_out, n=n_out, p=dense[idx])


def expected_allocation(d: LevelDistribution, theta1: float, theta2: float) -> float:
    """E(N1 / m) under hypothesized success rates."""
    p = d.evaluate(theta1, theta2)
    return float(p @ d.x1) / d.m


def alarm_probabilities(
    d: LevelDistribution,
    bounds: "ControlBounds",
    theta1: float,
    theta2: float,
) -> tuple[float, float, float]:
    """(line-1 alarm, line-2 alarm, union) probabilities at the level.

    A line alarms when its W statistic falls at or outside a finite bound;
    sentinel bounds never alarm. Both W statistics are functions of the same
    terminal state, so the union needs no independence assumption.
    """
    c = bounds.coeffs
    w1 = d.w_values(c, 1)
    w2 = d.w_values(c, 2)
    out1 = (w1 <= bounds.lcb) | (w1 >= bounds.ucb)
    out2 = (w2 <= bounds.lcb) | (w2 >= bounds.ucb)
    p = d.evaluate(theta1, theta2)
    p1 = math.fsum(p[out1])
    p2 = math.fsum(p[out2])
    union = math.fsum(p[out1 | out2])
    return p1, p2, union


def joint_alarm_probability(
    d: LevelDistribution,
    bounds: "ControlBounds",
    theta1: float,
    theta2: float,
) -> float:
    """P(either line's W exits the bounds) at the level."""
    return alarm_probabilities(d, bounds, theta1, theta2)[2]
