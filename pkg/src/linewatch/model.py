"""Detection configuration, the binary log-likelihood-ratio statistic, mean
rewards, and the known-reward optimal sampling policy.

All log quantities are in nats. Line indices on the wire are 1-based
(line 1 / line 2); reward-vector indices in :func:`optimal_policy` are
0-based positions into the input sequence.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Sequence

__all__ = [
    "DetectionConfig",
    "WCoefficients",
    "OptimalPolicy",
    "w_coefficients",
    "w_statistic",
    "reward_mean",
    "optimal_policy",
]

# Relative tolerance for argmax ties on computed rewards.
TIE_REL_TOL = 1e-12

CONFIG_KEYS = ("theta0", "theta_star", "gamma", "n", "alpha", "k")


def _require_open_unit(name: str, value: float) -> None:
    if not (0.0 < value < 1.0):
        raise ValueError(f"{name} must lie strictly in (0, 1), got {value!r}")


@dataclass(frozen=True)
class WCoefficients:
    """Coefficients of the binary statistic W = S*a + N*b (nats).

    a is the log odds ratio of the projected out-of-control law against the
    in-control law; b the log ratio of their failure probabilities.
    """

    a: float
    b: float


def w_coefficients(theta0: float, theta_star: float) -> WCoefficients:
    """Closed-form (a, b) for success probabilities theta0 -> theta_star."""
    _require_open_unit("theta0", theta0)
    _require_open_unit("theta_star", theta_star)
    if theta0 == theta_star:
        raise ValueError("theta_star must differ from theta0")
    a = math.log(theta_star * (1.0 - theta0) / (theta0 * (1.0 - theta_star)))
    b = math.log((1.0 - theta_star) / (1.0 - theta0))
    return WCoefficients(a=a, b=b)


def w_statistic(successes: int, samples: int, coeffs: WCoefficients) -> float:
    """Cumulative log-likelihood ratio S*a + N*b for one line."""
    if samples < 0 or successes < 0 or successes > samples:
        raise ValueError(
            f"need 0 <= successes <= samples, got S={successes}, N={samples}"
        )
    return successes * coeffs.a + samples * coeffs.b


def reward_mean(theta: float, coeffs: WCoefficients) -> float:
    """Expected per-unit reward theta*a + b when the line succeeds at rate theta."""
    if not (0.0 <= theta <= 1.0):
        raise ValueError(f"theta must lie in [0, 1], got {theta!r}")
    return theta * coeffs.a + coeffs.b


@dataclass(frozen=True)
class DetectionConfig:
    """Problem setup for a fixed-budget two-line detection run.

    theta0      in-control success probability (both lines)
    theta_star  projected out-of-control success probability used in W
    gamma       exploration floor, 0 < gamma <= 1/k
    n           total sampling budget in units, >= 2
    alpha       two-sided per-line false alarm rate (alpha/2 per tail)
    k           number of lines (the exact engine supports k = 2)
    """

    theta0: float
    theta_star: float
    gamma: float
    n: int
    alpha: float = 0.0027
    k: int = 2

    def __post_init__(self) -> None:
        _require_open_unit("theta0", self.theta0)
        _require_open_unit("theta_star", self.theta_star)
        if self.theta_star == self.theta0:
            raise ValueError("theta_star must differ from theta0")
        if self.k < 2:
            raise ValueError(f"k must be >= 2, got {self.k}")
        if not (0.0 < self.gamma <= 1.0 / self.k):
            raise ValueError(
                f"gamma must lie in (0, 1/k] = (0, {1.0 / self.k}], got {self.gamma!r}"
            )
        if int(self.n) != self.n or self.n < 2:
            raise ValueError(f"n must be an integer >= 2, got {self.n!r}")
        if not (0.0 < self.alpha < 1.0):
            raise ValueError(f"alpha must lie in (0, 1), got {self.alpha!r}")

    def coefficients(self) -> WCoefficients:
        return w_coefficients(self.theta0, self.theta_star)

    def with_budget(self, n: int) -> "DetectionConfig":
        return replace(self, n=n)

    @classmethod
    def from_dict(cls, data: dict) -> "DetectionConfig":
        unknown = set(data) - set(CONFIG_KEYS)
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        if "theta0" not in data or "theta_star" not in data:
            raise ValueError("config requires at least theta0 and theta_star")
        kwargs = dict(data)
        if "n" in kwargs:
            kwargs["n"] = int(kwargs["n"])
        if "k" in kwargs:
            kwargs["k"] = int(kwargs["k"])
        return cls(**kwargs)

    @classmethod
    def from_file(cls, path: str | Path) -> "DetectionConfig":
        """Load a JSON config file with keys theta0, theta_star, gamma, n, alpha, k."""
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
        if not isinstance(data, dict):
            raise ValueError(f"config file {path} must hold a JSON object")
        return cls.from_dict(data)


@dataclass(frozen=True)
class OptimalPolicy:
    """Known-reward optimal stationary sampling policy.

    j_star   0-based indices of the argmax reward lines
    pi_star  per-line sampling probabilities (sums to 1)
    v_star   optimal long-run average reward, nats per unit
    """

    j_star: tuple[int, ...]
    pi_star: tuple[float, ...]
    v_star: float


def optimal_policy(rewards: Sequence[float], gamma: float) -> OptimalPolicy:
    """Optimal average-reward policy for known per-line mean rewards.

    The argmax set J* shares 1 - (k - |J*|)*gamma equally; every other line
    keeps the exploration floor gamma. Ties in the rewards are detected with
    relative tolerance TIE_REL_TOL.
    """
    r = [float(x) for x in rewards]
    k = len(r)
    if k < 2:
        raise ValueError("need at least two lines")
    if any(not math.isfinite(x) for x in r):
        raise ValueError("rewards must be finite")
    if not (0.0 < gamma <= 1.0 / k):
        raise ValueError(f"gamma must lie in (0, 1/k], got {gamma!r}")

    r_max = max(r)
    tol = TIE_REL_TOL * max(1.0, abs(r_max))
    j_star = tuple(j for j, x in enumerate(r) if r_max - x <= tol)
    share = (1.0 - (k - len(j_star)) * gamma) / len(j_star)
    pi_star = tuple(share if j in j_star else gamma for j in range(k))
    v_star = (1.0 - (k - len(j_star)) * gamma) * r_max + gamma * sum(
        x for j, x in enumerate(r) if j not in j_star
    )
    return OptimalPolicy(j_star=j_star, pi_star=pi_star, v_star=v_star)
