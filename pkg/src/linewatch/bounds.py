"""Control bounds from the exact in-control W law, false-alarm and power
analysis for the adaptive design, and the fixed equal-split baseline.

The lower bound is the largest attained W value whose inclusive lower tail
stays within alpha/2 (symmetrically for the upper bound); a side whose
defining set is empty is reported as an infinite sentinel and never alarms.
A line alarms when W <= LCB or W >= UCB.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .model import DetectionConfig, WCoefficients
from .exact import (
    LevelDistribution,
    WDistribution,
    alarm_probabilities,
    expected_allocation,
    iter_levels,
    joint_alarm_probability,
    w_marginal,
)
from .policy import LookaheadUnits

__all__ = [
    "ControlBounds",
    "PowerEntry",
    "PowerRow",
    "control_bounds",
    "far_single_line",
    "terminal_level",
    "h0_control_bounds",
    "power_adaptive",
    "equal_w_distribution",
    "equal_randomization_row",
    "table_report",
    "render_csv",
    "render_json",
]


@dataclass(frozen=True)
class ControlBounds:
    """Two-sided control bounds on the W scale.

    lcb/ucb are -inf/+inf sentinels when the defining tail set is empty.
    l1/l2 standardize finite sides by the H0 mean and standard deviation.
    notes carries diagnostics, e.g. why a side is a sentinel.
    """

    lcb: float
    ucb: float
    l1: float | None
    l2: float | None
    h0_mean: float
    h0_sd: float
    coeffs: WCoefficients
    notes: tuple[str, ...] = ()


def control_bounds(w: WDistribution, alpha: float) -> ControlBounds:
    """Bounds at per-tail budget alpha/2 from an in-control W distribution.

    Candidate bounds range over attained support values only; tails are
    accumulated over atoms grouped by exactly equal W values, never by
    thresholding against perturbed floats.
    """
    if not (0.0 < alpha < 1.0):
        raise ValueError(f"alpha must lie in (0, 1), got {alpha!r}")
    half = alpha / 2.0

    wv = w.w_values()
    order = np.lexsort((w.n, w.s, wv))
    wv = wv[order]
    p = w.p[order]
    # Distinct (s, n) atoms whose W values collide exactly act as one atom.
    boundary = np.empty(len(wv), dtype=bool)
    boundary[0] = True
    boundary[1:] = wv[1:] != wv[:-1]
    group_w = wv[boundary]
    group_p = np.add.reduceat(p, np.flatnonzero(boundary))

    lower_cum = np.cumsum(group_p)
    upper_cum = np.cumsum(group_p[::-1])[::-1]

    notes: list[str] = []
    lower_ok = np.flatnonzero(lower_cum <= half)
    if len(lower_ok):
        lcb = float(group_w[lower_ok[-1]])
    else:
        lcb = -math.inf
        notes.append(
            f"lower bound empty: smallest atom already has lower tail "
            f"{lower_cum[0]:.7g} > alpha/2 = {half:.7g}"
        )
    upper_ok = np.flatnonzero(upper_cum <= half)
    if len(upper_ok):
        ucb = float(group_w[upper_ok[0]])
    else:
        ucb = math.inf
        notes.append(
            f"upper bound empty: largest atom already has upper tail "
            f"{upper_cum[-1]:.7g} > alpha/2 = {half:.7g}"
        )

    mean = w.mean()
    sd = w.sd()
    l1 = (lcb - mean) / sd if math.isfinite(lcb) and sd > 0 else None
    l2 = (ucb - mean) / sd if math.isfinite(ucb) and sd > 0 else None
    return ControlBounds(
        lcb=lcb,
        ucb=ucb,
        l1=l1,
        l2=l2,
        h0_mean=mean,
        h0_sd=sd,
        coeffs=w.coeffs,
        notes=tuple(notes),
    )


def _alarm_mass(w: WDistribution, b: ControlBounds) -> float:
    """P(W <= LCB or W >= UCB) for one line under the distribution w."""
    wv = w.w_values()
    return math.fsum(w.p[(wv <= b.lcb) | (wv >= b.ucb)])


def far_single_line(w: WDistribution, b: ControlBounds) -> float:
    """Single-line false alarm probability under the in-control law."""
    return _alarm_mass(w, b)


@lru_cache(maxsize=16)
def _level_snapshots(
    config: DetectionConfig,
    budgets: tuple[int, ...],
    lookahead_units: LookaheadUnits,
) -> dict[int, LevelDistribution]:
    """One enumeration pass, capturing the levels named in `budgets`."""
    wanted = set(budgets)
    snaps: dict[int, LevelDistribution] = {}
    for level in iter_levels(config.with_budget(max(budgets)), lookahead_units):
        if level.m in wanted:
            snaps[level.m] = level
    return snaps


def _adaptive_h0_bounds(
    config: DetectionConfig, level: LevelDistribution
) -> tuple[WDistribution, ControlBounds]:
    c = config.coefficients()
    h0 = w_marginal(level, config.theta0, config.theta0, 1, c)
    return h0, control_bounds(h0, config.alpha)


def terminal_level(
    config: DetectionConfig, lookahead_units: LookaheadUnits = "next"
) -> LevelDistribution:
    """The cached full-budget level distribution for this configuration."""
    return _level_snapshots(config, (config.n,), lookahead_units)[config.n]


def h0_control_bounds(
    config: DetectionConfig, lookahead_units: LookaheadUnits = "next"
) -> ControlBounds:
    """Control bounds for the adaptive design at the configured horizon."""
    level = terminal_level(config, lookahead_units)
    return _adaptive_h0_bounds(config, level)[1]


def power_adaptive(
    config: DetectionConfig,
    theta11: float,
    lookahead_units: LookaheadUnits = "next",
) -> tuple[float, float]:
    """(E(N1/n), detection power) when line 1 runs at theta11, line 2 in control.

    Bounds come from the line-1 W marginal under H0 (identical to line 2's
    by symmetry) and apply to both lines; power is the exact union alarm
    probability over the dependent pair.
    """
    level = terminal_level(config, lookahead_units)
    _, b = _adaptive_h0_bounds(config, level)
    e_frac = expected_allocation(level, theta11, config.theta0)
    power = joint_alarm_probability(level, b, theta11, config.theta0)
    return e_frac, power


def equal_w_distribution(
    samples: int, theta: float, c: WCoefficients
) -> WDistribution:
    """W law for a fixed number of samples: S ~ Binomial(samples, theta)."""
    if samples < 1:
        raise ValueError(f"samples must be >= 1, got {samples}")
    if not (0.0 < theta < 1.0):
        raise ValueError(f"theta must lie strictly in (0, 1), got {theta!r}")
    s = np.arange(samples + 1, dtype=np.int64)
    pmf = np.array(
        [
            math.comb(samples, int(k)) * theta**int(k) * (1.0 - theta) ** int(samples - k)
            for k in s
        ]
    )
    return WDistribution(
        coeffs=c, s=s, n=np.full(samples + 1, samples, dtype=np.int64), p=pmf
    )


@dataclass(frozen=True)
class PowerEntry:
    """One out-of-control scenario within a table row."""

    theta11: float
    e_n1_frac: float
    power: float


@dataclass(frozen=True)
class PowerRow:
    """One budget's worth of table output: bounds, FAR, and scenario entries."""

    n: int
    l1: float | None
    l2: float | None
    far: float
    entries: tuple[PowerEntry, ...]
    design: str
    bounds: ControlBounds


def equal_randomization_row(
    config: DetectionConfig, theta11_list: list[float]
) -> PowerRow:
    """Baseline row: n/2 units per line, independent binomial lines.

    Power for a scenario is P1 + P2 - P1*P2 with P1 the line-1 alarm
    probability at theta11 and P2 the in-control alarm probability.
    """
    if config.n % 2:
        raise ValueError(f"equal randomization needs an even budget, got n={config.n}")
    half_n = config.n // 2
    c = config.coefficients()
    h0 = equal_w_distribution(half_n, config.theta0, c)
    b = control_bounds(h0, config.alpha)
    far = far_single_line(h0, b)
    entries = []
    for theta11 in theta11_list:
        p1 = _alarm_mass(equal_w_distribution(half_n, theta11, c), b)
        power = p1 + far - p1 * far
        entries.append(PowerEntry(theta11=theta11, e_n1_frac=0.5, power=power))
    return PowerRow(
        n=config.n, l1=b.l1, l2=b.l2, far=far, entries=tuple(entries),
        design="equal", bounds=b,
    )


def table_report(
    config: DetectionConfig,
    theta11_list: list[float],
    n_list: list[int],
    design: str,
    lookahead_units: LookaheadUnits = "next",
) -> list[PowerRow]:
    """One PowerRow per budget in n_list for the chosen design."""
    if design not in ("adaptive", "equal"):
        raise ValueError(f"design must be 'adaptive' or 'equal', got {design!r}")
    if list(n_list) != sorted(n_list) or len(set(n_list)) != len(n_list):
        raise ValueError("n_list must be strictly ascending")

    if design == "equal":
        return [
            equal_randomization_row(config.with_budget(n), theta11_list)
            for n in n_list
        ]

    snaps = _level_snapshots(config, tuple(n_list), lookahead_units)
    rows = []
    for n in n_list:
        level = snaps[n]
        h0, b = _adaptive_h0_bounds(config, level)
        far = far_single_line(h0, b)
        entries = tuple(
            PowerEntry(
                theta11=theta11,
                e_n1_frac=expected_allocation(level, theta11, config.theta0),
                power=joint_alarm_probability(level, b, theta11, config.theta0),
            )
            for theta11 in theta11_list
        )
        rows.append(
            PowerRow(n=n, l1=b.l1, l2=b.l2, far=far, entries=entries,
                     design="adaptive", bounds=b)
        )
    return rows


def _fmt_bound(value: float | None, sign: str) -> str:
    if value is None:
        return f"{sign}inf"
    return f"{value:.6f}"


def render_csv(rows: list[PowerRow]) -> str:
    """Flat CSV: one line per (n, theta11) cell; bounds-only lines when a row
    has no entries. Sentinel bounds serialize as -inf/+inf."""
    lines = ["n,L1,L2,far,theta11,e_n1_frac,power"]
    for row in rows:
        prefix = (
            f"{row.n},{_fmt_bound(row.l1, '-')},{_fmt_bound(row.l2, '+')},"
            f"{row.far:.6f}"
        )
        if not row.entries:
            lines.append(f"{prefix},,,")
            continue
        for e in row.entries:
            lines.append(f"{prefix},{e.theta11:g},{e.e_n1_frac:.6f},{e.power:.6f}")
    return "\n".join(lines) + "\n"


def render_json(rows: list[PowerRow]) -> str:
    """JSON array mirroring the CSV cells with identical field names."""
    out = []
    for row in rows:
        base = {
            "n": row.n,
            "L1": row.l1 if row.l1 is not None else "-inf",
            "L2": row.l2 if row.l2 is not None else "+inf",
            "far": row.far,
        }
        if not row.entries:
            out.append(base)
            continue
        for e in row.entries:
            cell = dict(base)
            cell.update(theta11=e.theta11, e_n1_frac=e.e_n1_frac, power=e.power)
            out.append(cell)
    return json.dumps(out, indent=2) + "\n"
