"""Independent oracles shared across the test suite.

These deliberately avoid the library's enumeration and binomial machinery:
the path enumerator expands every sampling/outcome sequence one by one
through the scalar policy, and the binomial pmf uses the odds recurrence
instead of closed-form coefficients.
"""

from __future__ import annotations

from linewatch.model import DetectionConfig, WCoefficients
from linewatch.policy import LatticeState, sampling_probability


def brute_force_level(config: DetectionConfig, n: int) -> dict[tuple[int, int, int], float]:
    """Collapse of exhaustive path enumeration at level n.

    Every path carries the product of its realized sampling probabilities;
    outcome probabilities stay out of the weights. Paths are only merged
    after the final level, so this checks the engine's level-by-level
    merging as well as its transition structure.
    """
    c = config.coefficients()
    cache: dict[tuple[int, int, int, int], float] = {}

    def pi1_of(x1: int, x2: int, x3: int, m: int) -> float:
        key = (x1, x2, x3, m)
        if key not in cache:
            state = LatticeState(x1, x2, x3, m)
            cache[key] = sampling_probability(state, config.gamma, c).pi1
        return cache[key]

    paths = [(1, y1, y2, 1.0) for y1 in (0, 1) for y2 in (0, 1)]
    m = 2
    while m < n:
        expanded = []
        for x1, x2, x3, w in paths:
            p1 = pi1_of(x1, x2, x3, m)
            expanded.append((x1 + 1, x2 + 1, x3, w * p1))
            expanded.append((x1 + 1, x2, x3, w * p1))
            expanded.append((x1, x2, x3 + 1, w * (1.0 - p1)))
            expanded.append((x1, x2, x3, w * (1.0 - p1)))
        paths = expanded
        m += 1

    collapsed: dict[tuple[int, int, int], float] = {}
    for x1, x2, x3, w in paths:
        key = (x1, x2, x3)
        collapsed[key] = collapsed.get(key, 0.0) + w
    return collapsed


def binom_pmf(n: int, theta: float) -> list[float]:
    """Binomial pmf by the odds recurrence (no binomial coefficients)."""
    probs = [(1.0 - theta) ** n]
    odds = theta / (1.0 - theta)
    for s in range(n):
        probs.append(probs[-1] * (n - s) / (s + 1) * odds)
    return probs


def equal_power_joint_oracle(
    half_n: int,
    theta11: float,
    theta0: float,
    c: WCoefficients,
    lcb: float,
    ucb: float,
) -> float:
    """Union alarm probability by joint enumeration over both lines' counts."""
    pmf1 = binom_pmf(half_n, theta11)
    pmf2 = binom_pmf(half_n, theta0)

    def out(s: int) -> bool:
        w = s * c.a + half_n * c.b
        return w <= lcb or w >= ucb

    total = 0.0
    for s1 in range(half_n + 1):
        for s2 in range(half_n + 1):
            if out(s1) or out(s2):
                total += pmf1[s1] * pmf2[s2]
    return total
