"""Adaptive sampling change detection for two binary-response lines.

Exact distribution of the adaptively sampled count process, control bounds
and power analysis, a Monte Carlo cross-check engine, and a live monitoring
session service.
"""

from .model import (
    DetectionConfig,
    OptimalPolicy,
    WCoefficients,
    optimal_policy,
    reward_mean,
    w_coefficients,
    w_statistic,
)
from .policy import (
    LatticeState,
    SamplingDecision,
    estimate_thetas,
    lookahead_values,
    sampling_probability,
    u_hat,
)
from .exact import (
    LevelDistribution,
    WDistribution,
    WeightedState,
    advance,
    enumerate_levels,
    expected_allocation,
    initial_states,
    iter_levels,
    joint_alarm_probability,
    state_probability,
    w_marginal,
)
from .bounds import (
    ControlBounds,
    PowerEntry,
    PowerRow,
    control_bounds,
    equal_randomization_row,
    equal_w_distribution,
    far_single_line,
    h0_control_bounds,
    power_adaptive,
    table_report,
    terminal_level,
)
from .simulate import (
    MonteCarloEstimate,
    MonteCarloResult,
    Trajectory,
    TrajectoryStep,
    monte_carlo,
    simulate_run,
)

__version__ = "0.1.0"
