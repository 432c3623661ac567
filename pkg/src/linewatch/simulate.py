"""Monte Carlo replication of the sequential adaptive sampling process.

Single trajectories run through the scalar policy path and carry a full
per-step record (the session UI replays these); `monte_carlo` advances
whole blocks of replications in lockstep through the vectorized policy.

Randomness is counter-based: replications are grouped into fixed-size
blocks, block b draws from Philox seeded with (seed, b), and replication r
always consumes row r mod BLOCK_SIZE of its block's uniform matrix — so
(seed, replication index) fully determines a trajectory regardless of the
total replication count or processing order.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import TYPE_CHECKING, Optional

import numpy as np

from .model import DetectionConfig
from .policy import (
    LatticeState,
    LookaheadUnits,
    decision_probabilities,
    level_decisions,
    sampling_probability,
)

if TYPE_CHECKING:  # pragma: no cover
    from .bounds import ControlBounds

__all__ = [
    "TrajectoryStep",
    "Trajectory",
    "MonteCarloEstimate",
    "MonteCarloResult",
    "simulate_run",
    "monte_carlo",
]

BLOCK_SIZE = 1 << 16


def _rng(*entropy: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(list(entropy))))


def _require_rate(name: str, value: float) -> None:
    if not (0.0 <= value <= 1.0):
        raise ValueError(f"{name} must lie in [0, 1], got {value!r}")


@dataclass(frozen=True)
class TrajectoryStep:
    """One sampled unit: decision, outcome, and the state it produced."""

    index: int
    line: int
    outcome: int
    pi1: float | None  # None for the blocked first pair
    x1: int
    x2: int
    x3: int
    m: int
    w1: float
    w2: float


@dataclass(frozen=True)
class Trajectory:
    """Full record of one simulated run."""

    steps: tuple[TrajectoryStep, ...]
    final: LatticeState
    theta1: float
    theta2: float
    seed: int
    alarm: bool | None

    def to_jsonl(self) -> str:
        """Line-delimited JSON, one record per step (UI replay format)."""
        lines = []
        for s in self.steps:
            lines.append(
                json.dumps(
                    {
                        "step": s.index,
                        "line": s.line,
                        "outcome": s.outcome,
                        "pi1": s.pi1,
                        "x1": s.x1,
                        "x2": s.x2,
                        "x3": s.x3,
                        "m": s.m,
                        "w1": s.w1,
                        "w2": s.w2,
                    }
                )
            )
        return "\n".join(lines) + "\n"


def simulate_run(
    config: DetectionConfig,
    theta1: float,
    theta2: float,
    seed: int,
    bounds: Optional["ControlBounds"] = None,
    lookahead_units: LookaheadUnits = "next",
) -> Trajectory:
    """One sequential run: blocked pair, then n-2 adaptive draws.

    Deterministic given the seed. When bounds are supplied the terminal
    alarm flag is evaluated (W1 or W2 at or outside a finite bound).
    """
    _require_rate("theta1", theta1)
    _require_rate("theta2", theta2)
    rng = _rng(seed)
    c = config.coefficients()

    steps: list[TrajectoryStep] = []
    y1 = int(rng.random() < theta1)
    y2 = int(rng.random() < theta2)
    x1, x2, x3 = 1, y1, y2

    def record(index: int, line: int, outcome: int, pi1: float | None, m: int) -> None:
        w1 = x2 * c.a + x1 * c.b
        w2 = x3 * c.a + (m - x1) * c.b
        steps.append(
            TrajectoryStep(index, line, outcome, pi1, x1, x2, x3, m, w1, w2)
        )

    # Blocked pair: unit 1 on line 1, unit 2 on line 2 (order is irrelevant
    # to the state and never randomized).
    steps.append(
        TrajectoryStep(1, 1, y1, None, 1, y1, 0, 1, y1 * c.a + c.b, 0.0)
    )
    record(2, 2, y2, None, 2)

    state = LatticeState(x1, x2, x3, 2)
    while state.m < config.n:
        dec = sampling_probability(state, config.gamma, c, lookahead_units)
        line = 1 if rng.random() < dec.pi1 else 2
        theta = theta1 if line == 1 else theta2
        outcome = int(rng.random() < theta)
        state = state.after(line, outcome)
        x1, x2, x3 = state.x1, state.x2, state.x3
        record(state.m, line, outcome, dec.pi1, state.m)

    alarm: bool | None = None
    if bounds is not None:
        w1 = state.x2 * c.a + state.x1 * c.b
        w2 = state.x3 * c.a + (state.m - state.x1) * c.b
        alarm = bool(
            (w1 <= bounds.lcb) or (w1 >= bounds.ucb)
            or (w2 <= bounds.lcb) or (w2 >= bounds.ucb)
        )
    return Trajectory(
        steps=tuple(steps), final=state, theta1=theta1, theta2=theta2,
        seed=seed, alarm=alarm,
    )


@dataclass(frozen=True)
class MonteCarloEstimate:
    mean: float
    se: float
    replications: int


@dataclass(frozen=True)
class MonteCarloResult:
    """Sample means with standard errors across replications."""

    e_n1_frac: MonteCarloEstimate
    alarm_line1: MonteCarloEstimate
    alarm_line2: MonteCarloEstimate
    power: MonteCarloEstimate
    replications: int


def monte_carlo(
    config: DetectionConfig,
    theta1: float,
    theta2: float,
    bounds: "ControlBounds",
    replications: int,
    seed: int,
    lookahead_units: LookaheadUnits = "next",
) -> MonteCarloResult:
    """Replicate the run and estimate E(N1/n), per-line alarm rates, power."""
    _require_rate("theta1", theta1)
    _require_rate("theta2", theta2)
    if replications < 1000:
        raise ValueError(f"need at least 1000 replications, got {replications}")

    n = config.n
    c = config.coefficients()
    cols = 2 + 2 * (n - 2)

    frac_sum = 0.0
    frac_sumsq = 0.0
    hits1 = 0
    hits2 = 0
    hits_union = 0

    done = 0
    block = 0
    while done < replications:
        # Full blocks are always drawn so a partial final block cannot shift
        # any replication's row.
        uniforms = _rng(seed, block).random((BLOCK_SIZE, cols))
        rows = min(BLOCK_SIZE, replications - done)
        u = uniforms[:rows]

        x1 = np.ones(rows, dtype=np.int64)
        x2 = (u[:, 0] < theta1).astype(np.int64)
        x3 = (u[:, 1] < theta2).astype(np.int64)
        for m in range(2, n):
            col = 2 + 2 * (m - 2)
            codes = level_decisions(x1, x2, x3, m, config.gamma, c, lookahead_units)
            pi1, _ = decision_probabilities(codes, config.gamma)
            pick1 = u[:, col] < pi1
            succ1 = u[:, col + 1] < theta1
            succ2 = u[:, col + 1] < theta2
            x1 += pick1
            x2 += pick1 & succ1
            x3 += ~pick1 & succ2

        w1 = x2 * c.a + x1 * c.b
        w2 = x3 * c.a + (n - x1) * c.b
        out1 = (w1 <= bounds.lcb) | (w1 >= bounds.ucb)
        out2 = (w2 <= bounds.lcb) | (w2 >= bounds.ucb)
        frac = x1 / n
        frac_sum += float(frac.sum())
        frac_sumsq += float((frac * frac).sum())
        hits1 += int(out1.sum())
        hits2 += int(out2.sum())
        hits_union += int((out1 | out2).sum())

        done += rows
        block += 1

    r = replications
    frac_mean = frac_sum / r
    frac_var = max(0.0, (frac_sumsq - r * frac_mean**2) / (r - 1))

    def proportion(hits: int) -> MonteCarloEstimate:
        p = hits / r
        return MonteCarloEstimate(mean=p, se=math.sqrt(p * (1.0 - p) / r), replications=r)

    return MonteCarloResult(
        e_n1_frac=MonteCarloEstimate(
            mean=frac_mean, se=math.sqrt(frac_var / r), replications=r
        ),
        alarm_line1=proportion(hits1),
        alarm_line2=proportion(hits2),
        power=proportion(hits_union),
        replications=r,
    )
