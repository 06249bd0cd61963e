"""Command-line driver.

Subcommands:

    k3            sample the Leggett-Garg function K3(t) as CSV (t, K3)
    tau-q         largest violating measurement span for one (omega, gamma)
    cycle         full steady-state cycle record at the optimal point
    sweep-sigma   phase diagram over (T_h, sigma_bar)
    sweep-tc      phase diagram over (T_h, T_c)
    oracle-check  analytic correlator vs the RK4 regression oracle

Exit codes: 0 success, 1 usage/config error, 2 infeasible input,
3 oracle-check failure. Failures emit a JSON error record on stderr.
Sweep parallelism is capped by the OTTO_LGI_THREADS environment variable
(0 or unset = one worker per CPU); results are identical for any setting.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from otto_lgi import lgi, oracle, reporting
from otto_lgi.config import ConfigError, RunConfig, load_config
from otto_lgi.cycle import InfeasibleCycle, solve_cycle
from otto_lgi.qubit import damping_rate
from otto_lgi.sweep import AxisSpec, sweep

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INFEASIBLE = 2
EXIT_ORACLE = 3

ORACLE_THRESHOLD = 1e-5


def _emit_error(kind: str, message: str, **extra) -> None:
    record = {"error": kind, "message": message}
    record.update(extra)
    json.dump(record, sys.stderr)
    sys.stderr.write("\n")


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # noqa: A003 - argparse hook
        _emit_error("UsageError", message)
        raise SystemExit(EXIT_USAGE)


def _add_config_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", type=Path, default=None, help="key = value file")
    parser.add_argument(
        "--set",
        dest="overrides",
        action="append",
        default=[],
        metavar="KEY=VALUE",
        help="override one config key (repeatable)",
    )


def _load(args: argparse.Namespace) -> RunConfig:
    if args.config is None:
        from otto_lgi.config import parse_config

        return parse_config("", overrides=args.overrides)
    return load_config(args.config, overrides=args.overrides)


def _open_out(path: Path | None):
    if path is None:
        return sys.stdout, False
    reporting.ensure_parent(path)
    return open(path, "w", encoding="utf-8", newline=""), True


def _parse_grid(text: str) -> tuple[int, int]:
    parts = text.lower().split("x")
    try:
        if len(parts) == 1:
            n = int(parts[0])
            return n, n
        if len(parts) == 2:
            return int(parts[0]), int(parts[1])
    except ValueError:
        pass
    raise ConfigError(f"--grid must look like '200x200' or '200', got {text!r}")


def cmd_k3(args: argparse.Namespace) -> int:
    t = np.linspace(0.0, args.t_max, args.n)
    values = lgi.k3(t, args.omega, args.gamma)
    handle, close = _open_out(args.out)
    try:
        reporting.write_series_csv(handle, ["t", "K3"], [t, values])
    finally:
        if close:
            handle.close()
    figure = None
    if args.plot is not None or (args.out is not None and not args.no_plot):
        from otto_lgi import plotting

        fig_path = args.plot or args.out.with_suffix(".png")
        figure = plotting.save_k3_figure(t, values, args.omega, args.gamma, fig_path)
        print(f"figure written to {figure}", file=sys.stderr)
    return EXIT_OK


def cmd_tau_q(args: argparse.Namespace) -> int:
    tau_q = lgi.quantum_time(args.omega, args.gamma, args.tol)
    unbounded = tau_q is lgi.UNBOUNDED
    record = {
        "omega": args.omega,
        "gamma": args.gamma,
        "tol": args.tol,
        "tau_q": "unbounded" if unbounded else tau_q,
        "violated": unbounded or tau_q > 0.0,
    }
    reporting.write_record(sys.stdout, record, args.format)
    return EXIT_OK


def cmd_cycle(args: argparse.Namespace) -> int:
    config = _load(args)
    params = config.engine_params()
    solution = solve_cycle(params, equal_gamma=config.equal_gamma)
    record = {
        "feasible": solution.feasible,
        "sigma": params.sigma,
        "sigma_bar": params.sigma_bar,
        "x": solution.x,
        "y": solution.y,
        "tau_h": solution.tau_h,
        "tau_c": solution.tau_c,
        "R": solution.R,
        "x_max": solution.x_max,
        "P_A": solution.P_A,
        "P_B": solution.P_B,
        "P_C": solution.P_C,
        "P_D": solution.P_D,
        "W_total": solution.W_total,
        "W_out": solution.W_out,
        "Q_h": solution.Q_h,
        "Q_c": solution.Q_c,
        "delta_S": solution.delta_S,
    }
    fmt = args.format or config.format
    handle, close = _open_out(args.out)
    try:
        reporting.write_record(handle, record, fmt)
    finally:
        if close:
            handle.close()
    return EXIT_OK


def _run_sweep(args: argparse.Namespace, y_axis_name: str, default_stem: str) -> int:
    config = _load(args)
    if args.grid is not None:
        config.grid_nx, config.grid_ny = _parse_grid(args.grid)
    params = config.engine_params()
    axis_x = AxisSpec("T_h", config.th_min, config.th_max, config.grid_nx)
    if y_axis_name == "sigma_bar":
        axis_y = AxisSpec(
            "sigma_bar", config.sigma_bar_min, config.sigma_bar_max, config.grid_ny
        )
    else:
        axis_y = AxisSpec("T_c", config.tc_min, config.tc_max, config.grid_ny)

    diagram = sweep(
        params,
        axis_x,
        axis_y,
        equal_gamma=config.equal_gamma,
        tau_q_tol=config.tau_q_tol,
    )

    out = args.out or Path(f"{default_stem}.csv")
    reporting.ensure_parent(out)
    with open(out, "w", encoding="utf-8", newline="") as handle:
        reporting.write_sweep_csv(handle, diagram)

    summary = reporting.sweep_summary(diagram)
    summary_path = args.summary or out.with_name(out.stem + "_summary.json")
    with open(summary_path, "w", encoding="utf-8") as handle:
        reporting.dump_json(summary, handle)

    figure_path = None
    if not args.no_plot:
        from otto_lgi import plotting

        figure_path = str(plotting.save_phase_figure(diagram, args.plot or out.with_suffix(".png")))

    reporting.dump_json(
        {
            "csv": str(out),
            "summary": str(summary_path),
            "figure": figure_path,
            "counts": summary["counts"],
            "regime_c1": summary["regime_c1"],
            "regime_c2": summary["regime_c2"],
            "threshold_temperature": summary["threshold_temperature"],
        },
        sys.stdout,
    )
    return EXIT_OK


def cmd_sweep_sigma(args: argparse.Namespace) -> int:
    return _run_sweep(args, "sigma_bar", "otto_sweep_sigma")


def cmd_sweep_tc(args: argparse.Namespace) -> int:
    return _run_sweep(args, "T_c", "otto_sweep_tc")


def cmd_oracle_check(args: argparse.Namespace) -> int:
    config = _load(args)
    params = config.engine_params()
    gamma = damping_rate(params.omega2, params.T_h, params.gamma0)
    tau = np.linspace(0.0, 10.0 / gamma, args.points)
    numeric = oracle.correlation_numeric(params.omega2, params.T_h, params.gamma0, tau)
    analytic = lgi.correlation_xx(tau, params.omega2, gamma)
    envelope = np.exp(-0.5 * gamma * tau)
    max_rel_error = float(np.max(np.abs(numeric - analytic) / envelope))
    passed = max_rel_error <= ORACLE_THRESHOLD
    record = {
        "omega": params.omega2,
        "T": params.T_h,
        "gamma0": params.gamma0,
        "gamma": gamma,
        "points": args.points,
        "max_rel_error": max_rel_error,
        "threshold": ORACLE_THRESHOLD,
        "passed": passed,
    }
    reporting.write_record(sys.stdout, record, args.format or config.format)
    if not passed:
        _emit_error(
            "OracleMismatch",
            f"max relative error {max_rel_error!r} exceeds {ORACLE_THRESHOLD!r}",
        )
        return EXIT_ORACLE
    return EXIT_OK


def build_parser() -> _Parser:
    parser = _Parser(prog="otto-lgi", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("k3", help="sample K3(t) as CSV columns (t, K3)")
    p.add_argument("--omega", type=float, required=True)
    p.add_argument("--gamma", type=float, required=True)
    p.add_argument("--t-max", dest="t_max", type=float, required=True)
    p.add_argument("--n", type=int, default=2000)
    p.add_argument("--out", type=Path, default=None, help="CSV path (default stdout)")
    p.add_argument("--plot", type=Path, default=None, help="figure path")
    p.add_argument("--no-plot", action="store_true")
    p.set_defaults(func=cmd_k3)

    p = sub.add_parser("tau-q", help="largest violating measurement span")
    p.add_argument("--omega", type=float, required=True)
    p.add_argument("--gamma", type=float, required=True)
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_tau_q)

    p = sub.add_parser("cycle", help="steady-state cycle record at the optimal point")
    _add_config_options(p)
    p.add_argument("--format", choices=("text", "json"), default=None)
    p.add_argument("--out", type=Path, default=None)
    p.set_defaults(func=cmd_cycle)

    for name, func, help_text in (
        ("sweep-sigma", cmd_sweep_sigma, "phase diagram over (T_h, sigma_bar)"),
        ("sweep-tc", cmd_sweep_tc, "phase diagram over (T_h, T_c)"),
    ):
        p = sub.add_parser(name, help=help_text)
        _add_config_options(p)
        p.add_argument("--grid", type=str, default=None, help="points as NX[xNY]")
        p.add_argument("--out", type=Path, default=None, help="CSV path")
        p.add_argument("--summary", type=Path, default=None, help="JSON summary path")
        p.add_argument("--plot", type=Path, default=None, help="figure path")
        p.add_argument("--no-plot", action="store_true")
        p.set_defaults(func=func)

    p = sub.add_parser("oracle-check", help="analytic vs numeric correlator")
    _add_config_options(p)
    p.add_argument("--points", type=int, default=201)
    p.add_argument("--format", choices=("text", "json"), default=None)
    p.set_defaults(func=cmd_oracle_check)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except SystemExit:
        raise
    except ConfigError as exc:
        _emit_error(type(exc).__name__, str(exc), line=exc.line)
        return EXIT_USAGE
    except InfeasibleCycle as exc:
        _emit_error("InfeasibleCycle", str(exc))
        return EXIT_INFEASIBLE
    except (ValueError, OSError) as exc:
        _emit_error(type(exc).__name__, str(exc))
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
