"""Command-line interface: run scenarios, sweep the fractional order, selftest.

Exit codes: 0 on success, 2 for configuration errors, 3 when a simulation
aborts.  ``MAGLEV_THREADS`` caps sweep parallelism (default: one worker
per scenario).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from pathlib import Path

from .config import ConfigError, OutputPrefs, load_config, serialize_config
from .fraccalc import FracOrder
from .figures import save_overview_figure, save_sweep_figure
from .output import metrics_json, sweep_csv, write_csv
from .selftest import run_selftest
from .simloop import Metrics, SimConfig, SimLog, compute_metrics, run_simulation
from .svgplot import render_svg

__all__ = ["RunManifest", "SweepRow", "sweep", "run_scenario", "main"]

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_ABORT = 3


@dataclass
class RunManifest:
    """What a run produced and where."""

    config_path: str
    output_dir: str
    files: list[str]
    exit_status: int


@dataclass(frozen=True)
class SweepRow:
    """One sweep result; ``metrics`` is None when the run aborted."""

    alpha: float
    metrics: Metrics | None
    abort_reason: str | None


def _max_workers(n_scenarios: int) -> int:
    env = os.environ.get("MAGLEV_THREADS")
    if env is None:
        return n_scenarios
    try:
        cap = int(env)
    except ValueError:
        raise ConfigError(f"MAGLEV_THREADS must be an integer, got {env!r}") from None
    if cap < 1:
        raise ConfigError(f"MAGLEV_THREADS must be >= 1, got {cap}")
    return min(cap, n_scenarios)


def sweep(
    base_config: SimConfig,
    alphas,
    band: float = 1e-3,
    tail: float = 1.0,
) -> list[SweepRow]:
    """Run one simulation per fractional order, in input order.

    Scenarios share no mutable state, so they fan out to a thread pool;
    each row is bit-identical to a standalone run of the same config.
    """
    orders = [FracOrder(a) for a in alphas]  # validates every alpha up front
    if not orders:
        return []
    configs = [
        replace(base_config, gains=replace(base_config.gains, alpha=order))
        for order in orders
    ]
    with ThreadPoolExecutor(max_workers=_max_workers(len(configs))) as pool:
        logs = list(pool.map(run_simulation, configs))
    rows = []
    for order, log in zip(orders, logs):
        if log.completed:
            rows.append(SweepRow(order.alpha, compute_metrics(log, band, tail), None))
        else:
            rows.append(SweepRow(order.alpha, None, log.abort_reason))
    return rows


def run_scenario(
    config: SimConfig,
    prefs: OutputPrefs,
    out_dir: Path,
    config_path: str = "<inline>",
    band: float = 1e-3,
    tail: float = 1.0,
) -> tuple[SimLog, RunManifest]:
    """Run one scenario and write CSV, SVGs, metrics and figures to out_dir."""
    out_dir.mkdir(parents=True, exist_ok=True)
    files: list[str] = []

    def emit(name: str, data: bytes | str) -> None:
        path = out_dir / name
        if isinstance(data, str):
            path.write_text(data, encoding="utf-8", newline="")
        else:
            path.write_bytes(data)
        files.append(name)

    emit("config.echo.json", serialize_config(config, prefs))
    log = run_simulation(config)
    emit("log.csv", write_csv(log))

    if len(log) > 0:
        for channel in prefs.channels:
            emit(f"{channel}.svg", render_svg(log, channel, prefs.svg_size))
        if prefs.figures:
            save_overview_figure(log, str(out_dir / "overview.png"))
            files.append("overview.png")
    if log.completed:
        emit("metrics.json", metrics_json(compute_metrics(log, band, tail)))

    status = EXIT_OK if log.completed else EXIT_ABORT
    manifest = RunManifest(
        config_path=config_path,
        output_dir=str(out_dir),
        files=files,
        exit_status=status,
    )
    (out_dir / "manifest.json").write_text(
        json.dumps(
            {
                "config_path": manifest.config_path,
                "output_dir": manifest.output_dir,
                "files": manifest.files,
                "exit_status": manifest.exit_status,
                "abort_reason": log.abort_reason,
                "abort_time": log.abort_time,
            },
            indent=2,
        )
        + "\n",
        encoding="utf-8",
    )
    return log, manifest


def _load_config_file(path: str) -> tuple[SimConfig, OutputPrefs]:
    try:
        text = Path(path).read_bytes()
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path!r}: {exc}") from None
    return load_config(text)


def _cmd_run(args) -> int:
    config, prefs = _load_config_file(args.config)
    if args.no_figures:
        prefs = replace(prefs, figures=False)
    log, manifest = run_scenario(
        config, prefs, Path(args.out), config_path=args.config,
        band=args.band, tail=args.tail,
    )
    if not log.completed:
        print(f"simulation aborted at t={log.abort_time:.6f} s: {log.abort_reason}",
              file=sys.stderr)
    else:
        m = compute_metrics(log, args.band, args.tail)
        settle = "never" if m.settling_time is None else f"{m.settling_time:.4f} s"
        print(f"run complete: {len(log)} controller steps")
        print(f"  settling time        {settle}")
        print(f"  steady-state |e1|    {m.steady_state_error:.3e} m")
        print(f"  rms tracking error   {m.rms_tracking_error:.3e} m")
        print(f"  max |i|              {m.max_abs_i:.3e} A")
        print(f"  clamp active         {100.0 * m.clamp_active_fraction:.2f}% of steps")
    print(f"wrote {len(manifest.files) + 1} files to {manifest.output_dir}")
    return manifest.exit_status


def _parse_alphas(text: str) -> list[float]:
    items = [s.strip() for s in text.split(",") if s.strip()]
    try:
        return [float(s) for s in items]
    except ValueError as exc:
        raise ConfigError(f"bad --alphas list: {exc}") from None


def _cmd_sweep(args) -> int:
    config, prefs = _load_config_file(args.config)
    try:
        alphas = _parse_alphas(args.alphas)
        rows = sweep(config, alphas, band=args.band, tail=args.tail)
    except ValueError as exc:  # FracOrder bound violations included
        raise ConfigError(str(exc)) from None
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    (out_dir / "config.echo.json").write_text(
        serialize_config(config, prefs), encoding="utf-8", newline=""
    )
    (out_dir / "sweep.csv").write_bytes(sweep_csv(rows))
    if rows and not args.no_figures:
        save_sweep_figure(rows, str(out_dir / "sweep.png"))
    aborted = [r for r in rows if r.metrics is None]
    for row in rows:
        if row.metrics is None:
            print(f"alpha={row.alpha:g}: ABORT ({row.abort_reason})")
        else:
            m = row.metrics
            settle = "never" if m.settling_time is None else f"{m.settling_time:.4f}"
            print(f"alpha={row.alpha:g}: settle={settle} s  "
                  f"sse={m.steady_state_error:.3e} m  rms={m.rms_tracking_error:.3e} m")
    print(f"wrote sweep outputs to {out_dir}")
    return EXIT_ABORT if aborted else EXIT_OK


def _cmd_selftest(_args) -> int:
    results = run_selftest()
    width = max(len(r.name) for r in results)
    failures = 0
    for r in results:
        mark = "PASS" if r.passed else "FAIL"
        failures += 0 if r.passed else 1
        print(f"{mark}  {r.name:<{width}}  {r.detail}")
    print(f"{len(results) - failures}/{len(results)} checks passed")
    return 0 if failures == 0 else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fracmaglev",
        description="Closed-loop maglev simulation with a fractional-order "
                    "backstepping controller.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run_p = sub.add_parser("run", help="run one scenario from a JSON config")
    run_p.add_argument("--config", required=True, help="path to JSON config")
    run_p.add_argument("--out", required=True, help="output directory")
    run_p.add_argument("--band", type=float, default=1e-3,
                       help="settling band on |e1| in meters (default 1e-3)")
    run_p.add_argument("--tail", type=float, default=1.0,
                       help="tail window in seconds for steady-state metrics (default 1.0)")
    run_p.add_argument("--no-figures", action="store_true",
                       help="skip the matplotlib overview figure")
    run_p.set_defaults(func=_cmd_run)

    sweep_p = sub.add_parser("sweep", help="run the scenario once per fractional order")
    sweep_p.add_argument("--config", required=True, help="path to JSON config")
    sweep_p.add_argument("--alphas", required=True,
                         help="comma-separated fractional orders, e.g. 0.01,0.7")
    sweep_p.add_argument("--out", required=True, help="output directory")
    sweep_p.add_argument("--band", type=float, default=1e-3)
    sweep_p.add_argument("--tail", type=float, default=1.0)
    sweep_p.add_argument("--no-figures", action="store_true")
    sweep_p.set_defaults(func=_cmd_sweep)

    selftest_p = sub.add_parser("selftest", help="analytic checks of the fractional kernel")
    selftest_p.set_defaults(func=_cmd_selftest)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
