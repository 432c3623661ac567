"""Command-line front door: reference tables, bounds, power, Monte Carlo
cross-checks, and the session service."""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import replace
from pathlib import Path

from .bounds import (
    PowerRow,
    control_bounds,
    equal_w_distribution,
    far_single_line,
    h0_control_bounds,
    render_csv,
    render_json,
    table_report,
    terminal_level,
)
from .exact import alarm_probabilities, w_marginal
from .model import DetectionConfig
from .simulate import monte_carlo

__all__ = ["main"]

PAPER_N_LIST = [10, 20, 30, 40, 50, 60, 100]

# (table number pairs, theta0, theta_star, theta11 grid) driving the six
# reference tables; the first theta11 equals theta0 (the FAR column).
TABLE_GRIDS = [
    (1, 2, 0.05, 0.10, [0.05, 0.1, 0.2, 0.3]),
    (3, 4, 0.10, 0.15, [0.1, 0.15, 0.2, 0.3]),
    (5, 6, 0.15, 0.20, [0.15, 0.2, 0.3, 0.4]),
]


def _config_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", type=Path, help="JSON config file; flags override")
    parser.add_argument("--theta0", type=float, help="in-control success probability")
    parser.add_argument("--theta-star", type=float, help="projected out-of-control probability")
    parser.add_argument("--gamma", type=float, help="exploration floor (default 0.25)")
    parser.add_argument("--n", type=int, help="total sampling budget")
    parser.add_argument("--alpha", type=float, help="per-line false alarm rate (default 0.0027)")


def _build_config(args: argparse.Namespace, need_n: bool = True) -> DetectionConfig:
    values: dict = {}
    if args.config is not None:
        values.update(
            {
                k: v
                for k, v in json.loads(Path(args.config).read_text()).items()
                if v is not None
            }
        )
    for key, attr in (
        ("theta0", "theta0"),
        ("theta_star", "theta_star"),
        ("gamma", "gamma"),
        ("n", "n"),
        ("alpha", "alpha"),
    ):
        flag = getattr(args, attr, None)
        if flag is not None:
            values[key] = flag
    values.setdefault("gamma", 0.25)
    values.setdefault("alpha", 0.0027)
    if need_n and "n" not in values:
        raise SystemExit("error: --n (or a config file with n) is required")
    values.setdefault("n", 2)
    missing = [k for k in ("theta0", "theta_star") if k not in values]
    if missing:
        raise SystemExit(f"error: missing required config values: {', '.join(missing)}")
    try:
        return DetectionConfig.from_dict(values)
    except ValueError as exc:
        raise SystemExit(f"error: {exc}")


def _write(path: Path, text: str) -> None:
    try:
        path.write_text(text)
    except OSError as exc:
        raise SystemExit(f"error: cannot write {path}: {exc}")


def _emit(rows: list[PowerRow], fmt: str) -> str:
    return render_csv(rows) if fmt == "csv" else render_json(rows)


def _cmd_tables(args: argparse.Namespace) -> int:
    out_dir = Path(args.out)
    try:
        out_dir.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise SystemExit(f"error: cannot create output directory {out_dir}: {exc}")
    ext = args.format
    if args.grid == "paper":
        for adaptive_no, equal_no, theta0, theta_star, theta11s in TABLE_GRIDS:
            base = DetectionConfig(theta0, theta_star, args.gamma or 0.25, 2,
                                   args.alpha or 0.0027)
            for number, design in ((adaptive_no, "adaptive"), (equal_no, "equal")):
                rows = table_report(base, theta11s, PAPER_N_LIST, design)
                _write(out_dir / f"table{number}.{ext}", _emit(rows, ext))
        print(f"wrote table1.{ext} ... table6.{ext} to {out_dir}")
        return 0
    config = _build_config(args, need_n=False)
    theta11s = args.theta11 or [config.theta_star]
    n_list = args.n_list or PAPER_N_LIST
    rows = table_report(config, theta11s, sorted(n_list), args.design)
    _write(out_dir / f"table_custom_{args.design}.{ext}", _emit(rows, ext))
    print(f"wrote table_custom_{args.design}.{ext} to {out_dir}")
    return 0


def _bounds_payload(config: DetectionConfig, design: str) -> dict:
    if design == "adaptive":
        level = terminal_level(config)
        h0 = w_marginal(level, config.theta0, config.theta0, 1, config.coefficients())
    else:
        if config.n % 2:
            raise SystemExit("error: equal design needs an even budget n")
        h0 = equal_w_distribution(config.n // 2, config.theta0, config.coefficients())
    b = control_bounds(h0, config.alpha)
    return {
        "n": config.n,
        "design": design,
        "lcb": b.lcb if math.isfinite(b.lcb) else "-inf",
        "ucb": b.ucb if math.isfinite(b.ucb) else "+inf",
        "l1": b.l1,
        "l2": b.l2,
        "h0_mean": b.h0_mean,
        "h0_sd": b.h0_sd,
        "far": far_single_line(h0, b),
        "notes": list(b.notes),
    }


def _cmd_bounds(args: argparse.Namespace) -> int:
    config = _build_config(args)
    payload = _bounds_payload(config, args.design)
    text = json.dumps(payload, indent=2) + "\n"
    if args.out:
        _write(Path(args.out), text)
    else:
        sys.stdout.write(text)
    return 0


def _cmd_power(args: argparse.Namespace) -> int:
    config = _build_config(args)
    theta11s = args.theta11 or [config.theta_star]
    rows = table_report(config, theta11s, [config.n], args.design)
    text = _emit(rows, args.format)
    if args.out:
        _write(Path(args.out), text)
    else:
        sys.stdout.write(text)
    return 0


def _cmd_simulate(args: argparse.Namespace) -> int:
    config = _build_config(args)
    if args.reps < 1000:
        raise SystemExit(f"error: --reps must be at least 1000, got {args.reps}")
    theta1 = args.theta1 if args.theta1 is not None else config.theta_star
    theta2 = args.theta2 if args.theta2 is not None else config.theta0

    bounds = h0_control_bounds(config)
    level = terminal_level(config)
    exact_p1, exact_p2, exact_union = alarm_probabilities(level, bounds, theta1, theta2)
    p = level.evaluate(theta1, theta2)
    frac = level.x1 / level.m
    exact_e = float(p @ frac)
    exact_e_sd = math.sqrt(max(0.0, float(p @ (frac * frac)) - exact_e**2))

    mc = monte_carlo(config, theta1, theta2, bounds, args.reps, args.seed)
    r = args.reps

    def check(name: str, exact: float, estimate: float, exact_sd: float) -> tuple[str, bool]:
        se = exact_sd / math.sqrt(r)
        if se == 0.0:
            ok = estimate == exact
            z = 0.0 if ok else math.inf
        else:
            z = (estimate - exact) / se
            ok = abs(z) <= 4.0
        line = (
            f"{name:<12} exact {exact:.6f}  mc {estimate:.6f}  "
            f"se {se:.6f}  z {z:+.2f}  {'pass' if ok else 'FAIL'}"
        )
        return line, ok

    def binom_sd(prob: float) -> float:
        return math.sqrt(prob * (1.0 - prob))

    lines = [
        f"config: theta0={config.theta0} theta_star={config.theta_star} "
        f"gamma={config.gamma} n={config.n} alpha={config.alpha}",
        f"scenario: theta1={theta1} theta2={theta2}  replications={r} seed={args.seed}",
        f"bounds: lcb={bounds.lcb:.7g} ucb={bounds.ucb:.7g}",
    ]
    checks = [
        check("E(N1/n)", exact_e, mc.e_n1_frac.mean, exact_e_sd),
        check("alarm line 1", exact_p1, mc.alarm_line1.mean, binom_sd(exact_p1)),
        check("alarm line 2", exact_p2, mc.alarm_line2.mean, binom_sd(exact_p2)),
        check("union power", exact_union, mc.power.mean, binom_sd(exact_union)),
    ]
    lines.extend(text for text, _ in checks)
    all_ok = all(ok for _, ok in checks)
    lines.append("verdict: pass (all within 4 SE)" if all_ok else "verdict: FAIL")
    report = "\n".join(lines) + "\n"
    if args.out:
        _write(Path(args.out), report)
    else:
        sys.stdout.write(report)
    return 0 if all_ok else 1


def _cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service import create_app

    uvicorn.run(
        create_app(journal_path=args.journal),
        host=args.host,
        port=args.port,
        log_level="info",
    )
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="linewatch",
        description="Adaptive sampling change detection for two binary-response lines",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_tables = sub.add_parser("tables", help="emit the reference tables")
    _config_args(p_tables)
    p_tables.add_argument("--grid", choices=["paper", "custom"], default="paper")
    p_tables.add_argument("--design", choices=["adaptive", "equal"], default="adaptive",
                          help="design for --grid custom")
    p_tables.add_argument("--theta11", type=float, action="append",
                          help="out-of-control scenario (repeatable, --grid custom)")
    p_tables.add_argument("--n-list", type=int, action="append",
                          help="budgets (repeatable, --grid custom)")
    p_tables.add_argument("--out", default="tables", help="output directory")
    p_tables.add_argument("--format", choices=["csv", "json"], default="csv")
    p_tables.set_defaults(func=_cmd_tables)

    p_bounds = sub.add_parser("bounds", help="control bounds for one configuration")
    _config_args(p_bounds)
    p_bounds.add_argument("--design", choices=["adaptive", "equal"], default="adaptive")
    p_bounds.add_argument("--out", help="output file (default stdout)")
    p_bounds.set_defaults(func=_cmd_bounds)

    p_power = sub.add_parser("power", help="allocation and power for one configuration")
    _config_args(p_power)
    p_power.add_argument("--design", choices=["adaptive", "equal"], default="adaptive")
    p_power.add_argument("--theta11", type=float, action="append")
    p_power.add_argument("--out", help="output file (default stdout)")
    p_power.add_argument("--format", choices=["csv", "json"], default="csv")
    p_power.set_defaults(func=_cmd_power)

    p_sim = sub.add_parser("simulate", help="Monte Carlo cross-check against the exact engine")
    _config_args(p_sim)
    p_sim.add_argument("--theta1", type=float, help="true line-1 rate (default theta_star)")
    p_sim.add_argument("--theta2", type=float, help="true line-2 rate (default theta0)")
    p_sim.add_argument("--reps", type=int, default=100_000)
    p_sim.add_argument("--seed", type=int, default=0)
    p_sim.add_argument("--out", help="output file (default stdout)")
    p_sim.set_defaults(func=_cmd_simulate)

    p_serve = sub.add_parser("serve", help="start the session service")
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--port", type=int, default=8000)
    p_serve.add_argument("--journal", help="append-only JSONL journal for crash recovery")
    p_serve.set_defaults(func=_cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
