"""Command line surface: simulate, network, sweep, report, validate.

Commands read an optional INI config and apply flag overrides, emit
their artifacts atomically together with a manifest, and exit 0 on
success, 1 on usage or configuration errors, 2 on numerical failures
and 3 when a validation fixture fails.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import replace
from pathlib import Path

import numpy as np

from .artifacts import (
    component_table,
    parse_scc_json,
    parse_stats_csv,
    render_degrees_csv,
    render_edge_list,
    render_network_json,
    render_pair_table_csv,
    render_report_json,
    render_scc_json,
    render_stats_csv,
)
from .charts import chart_degree_bands, chart_scc_trace
from .config import ConfigError, dump_config, load_config, _parse_grid
from .experiment import ExperimentConfig, detect_onset, scc_trace, sweep
from .fixtures import FIXTURE_NAMES, reference_ic
from .graph import strongly_connected_components
from .integrate import IntegrationError, Trajectory, integrate
from .manifest import RunManifest, atomic_write_text, sha256_file, write_outputs
from .netinfer import infer_network
from .recurrence import DegenerateSeriesError
from .validate import SIGN_CONVENTION, run_all

__all__ = ["main"]

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_NUMERICAL = 2
EXIT_VALIDATION = 3

CHART_DEGREES = "degree_bands.svg"
CHART_SCC = "scc_trace.svg"


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on usage errors by default; the contract wants 1
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _fail(message: str, code: int) -> int:
    print(f"error: {message}", file=sys.stderr)
    return code


def _load_base_config(args) -> ExperimentConfig:
    cfg = load_config(args.config) if args.config else ExperimentConfig()
    over = {}
    if getattr(args, "seed", None) is not None:
        over["seed"] = args.seed
    if getattr(args, "noise", None) is not None:
        over["noise_level"] = args.noise
    if getattr(args, "jitter", None) is not None:
        over["param_jitter"] = args.jitter
    if getattr(args, "t_end", None) is not None:
        over["t_end"] = args.t_end
    if getattr(args, "ic_range", None) is not None:
        parts = args.ic_range.split(",")
        if len(parts) != 2:
            raise ConfigError(f"--ic-range must be low,high, got {args.ic_range!r}")
        over["ic_low"] = float(parts[0])
        over["ic_high"] = float(parts[1])
    if getattr(args, "grid", None) is not None:
        over["sweep_values"] = _parse_grid(args.grid)
    if not over:
        return cfg
    try:
        return replace(cfg, **over)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None


def _recurrence_overrides(cfg: ExperimentConfig, args) -> ExperimentConfig:
    over = {}
    if getattr(args, "rate", None) is not None:
        over["recurrence_rate"] = args.rate
    if getattr(args, "tol", None) is not None:
        over["direction_tol"] = args.tol
    if getattr(args, "epsilon", None) is not None:
        over["epsilon"] = args.epsilon
        over["threshold_mode"] = "fixed-epsilon"
    if getattr(args, "embed_dim", None) is not None:
        over["embed_dim"] = args.embed_dim
    if getattr(args, "embed_delay", None) is not None:
        over["embed_delay"] = args.embed_delay
    if not over:
        return cfg
    try:
        return replace(cfg, recurrence=replace(cfg.recurrence, **over))
    except ValueError as exc:
        raise ConfigError(str(exc)) from None


def _resolve_ic(spec: str, cfg: ExperimentConfig) -> np.ndarray:
    if spec in FIXTURE_NAMES:
        return reference_ic(spec)
    try:
        values = np.array([float(p) for p in spec.split(",")], dtype=float)
    except ValueError:
        raise ConfigError(
            f"--ic must be one of {sorted(FIXTURE_NAMES)} or a comma list of "
            f"{2 * cfg.model.n_osc} numbers, got {spec!r}"
        ) from None
    if values.shape != (2 * cfg.model.n_osc,):
        raise ConfigError(
            f"inline initial state needs {2 * cfg.model.n_osc} numbers "
            f"(displacements then velocities), got {values.shape[0]}"
        )
    return values


def cmd_simulate(args) -> int:
    cfg = _load_base_config(args)
    x0 = _resolve_ic(args.ic, cfg)
    traj = integrate(cfg.model, x0, cfg.t_end, cfg.dt_out, cfg.integrator)
    write_outputs(
        args.out, {"trajectory.csv": traj.to_csv_text()}, dump_config(cfg), cfg.seed
    )
    print(
        f"wrote {Path(args.out) / 'trajectory.csv'} "
        f"({traj.n_samples} rows, {cfg.model.n_osc} oscillators)"
    )
    return EXIT_OK


def cmd_network(args) -> int:
    cfg = _recurrence_overrides(_load_base_config(args), args)
    traj = Trajectory.from_csv(args.trajectory)
    if traj.displacements.shape[0] < 2:
        return _fail("need at least 2 series to infer a network", EXIT_USAGE)
    span = traj.displacements.max(axis=1) - traj.displacements.min(axis=1)
    flat = np.flatnonzero(span == 0.0)
    if flat.size:
        return _fail(f"column x{flat[0] + 1} is constant; cannot threshold it", EXIT_NUMERICAL)
    net, measures = infer_network(traj.displacements, cfg.recurrence)
    part = strongly_connected_components(net)
    files = {
        "network.json": render_network_json(net, measures),
        "edges.txt": render_edge_list(net),
        "pairs.csv": render_pair_table_csv(measures),
    }
    write_outputs(args.out, files, dump_config(cfg), cfg.seed)
    print(
        f"{net.n_nodes} nodes, {len(net.edges())} directed links, "
        f"{part.n_components} strongly connected component(s)"
    )
    print(f"wrote network.json, edges.txt, pairs.csv to {args.out}")
    return EXIT_OK


def cmd_sweep(args) -> int:
    cfg = _load_base_config(args)
    result = sweep(cfg, parallel=args.parallel)
    report = detect_onset(result)
    files = {
        "degrees.csv": render_degrees_csv(result),
        "stats.csv": render_stats_csv(result),
        "scc.json": render_scc_json(result),
        "report.json": render_report_json(report),
    }
    values = np.asarray(result.values)
    means = np.array([result.stats(iv).mean for iv in range(len(values))])
    stds = np.array([result.stats(iv).std for iv in range(len(values))])
    files[CHART_DEGREES] = chart_degree_bands(values, means, stds, highlight=report.node)
    if result.has_reference():
        files[CHART_SCC] = chart_scc_trace(values, scc_trace(result, 0))
    write_outputs(args.out, files, dump_config(cfg), cfg.seed)
    if result.failures:
        print(f"warning: {len(result.failures)} cell(s) failed and were excluded:")
        for iv, ic, msg in result.failures[:5]:
            print(f"  m4={result.values[iv]:.6g} case={ic}: {msg}")
        if len(result.failures) > 5:
            print(f"  ... and {len(result.failures) - 5} more")
    print(f"flagged node: {report.node}")
    for key, val in report.to_json_dict().items():
        if key != "node":
            print(f"  {key} = {val}")
    print(f"wrote sweep artifacts to {args.out}")
    return EXIT_OK


def cmd_report(args) -> int:
    out = Path(args.out)
    stats_path = out / "stats.csv"
    report_path = out / "report.json"
    manifest_path = out / "manifest.json"
    if not stats_path.exists() or not manifest_path.exists():
        return _fail(
            f"{out} does not look like a sweep output directory "
            "(missing stats.csv or manifest.json)",
            EXIT_USAGE,
        )
    values, means, stds = parse_stats_csv(stats_path.read_text(encoding="utf-8"))
    highlight = None
    if report_path.exists():
        highlight = json.loads(report_path.read_text(encoding="utf-8")).get("node")
    rendered = {CHART_DEGREES: chart_degree_bands(values, means, stds, highlight=highlight)}
    scc_path = out / "scc.json"
    if scc_path.exists():
        scc_data = parse_scc_json(scc_path.read_text(encoding="utf-8"))
        if scc_data.get("reference") is not None:
            rendered[CHART_SCC] = chart_scc_trace(
                scc_data["values"], component_table(scc_data, 0)
            )
    for name, text in rendered.items():
        atomic_write_text(out / name, text)
    manifest = RunManifest.load(manifest_path)
    updated = dict(manifest.outputs)
    for name in rendered:
        updated[name] = sha256_file(out / name)
    atomic_write_text(
        manifest_path, replace(manifest, outputs=updated).to_json()
    )
    print(f"re-rendered {', '.join(sorted(rendered))} in {out}")
    return EXIT_OK


def cmd_validate(args) -> int:
    results = run_all(direction_tol=args.tol)
    all_ok = True
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        all_ok &= r.passed
        print(f"{status}  {r.name}: {r.detail}")
    print(f"sign convention: {SIGN_CONVENTION}")
    return EXIT_OK if all_ok else EXIT_VALIDATION


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="INI configuration file")
    p.add_argument("--seed", type=int, help="override [experiment] seed")
    p.add_argument("--t-end", dest="t_end", type=float, help="override simulation horizon")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="locnet", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_sim = sub.add_parser("simulate", help="integrate one trajectory and write CSV")
    _add_common(p_sim)
    p_sim.add_argument(
        "--ic",
        default="x0a",
        help="named reference state or comma list of 2N numbers (default x0a)",
    )
    p_sim.add_argument("--out", default="locnet-sim", help="output directory")
    p_sim.set_defaults(func=cmd_simulate)

    p_net = sub.add_parser("network", help="infer the directed network of a trajectory CSV")
    _add_common(p_net)
    p_net.add_argument("trajectory", help="trajectory CSV (t, x1..xN, v1..vN)")
    p_net.add_argument("--rate", type=float, help="target cross-recurrence rate")
    p_net.add_argument("--tol", type=float, help="direction dead zone")
    p_net.add_argument("--epsilon", type=float, help="fixed threshold (switches mode)")
    p_net.add_argument("--embed-dim", dest="embed_dim", type=int)
    p_net.add_argument("--embed-delay", dest="embed_delay", type=int)
    p_net.add_argument("--out", default="locnet-net", help="output directory")
    p_net.set_defaults(func=cmd_network)

    p_sweep = sub.add_parser("sweep", help="run the mass sweep and emit all artifacts")
    _add_common(p_sweep)
    p_sweep.add_argument("--noise", type=float, help="measurement noise level (fraction)")
    p_sweep.add_argument("--jitter", type=float, help="parameter jitter level (fraction)")
    p_sweep.add_argument("--ic-range", dest="ic_range", help="ensemble IC range as low,high")
    p_sweep.add_argument("--grid", help="sweep grid as start:stop:count")
    p_sweep.add_argument("--parallel", type=int, default=1, help="worker processes")
    p_sweep.add_argument("--out", default="locnet-out", help="output directory")
    p_sweep.set_defaults(func=cmd_sweep)

    p_rep = sub.add_parser("report", help="re-render charts from existing sweep outputs")
    p_rep.add_argument("out", nargs="?", default="locnet-out", help="sweep output directory")
    p_rep.set_defaults(func=cmd_report)

    p_val = sub.add_parser("validate", help="run the calibration fixtures")
    p_val.add_argument("--tol", type=float, help="override the direction dead zone")
    p_val.set_defaults(func=cmd_validate)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        return _fail(str(exc), EXIT_USAGE)
    except FileNotFoundError as exc:
        return _fail(str(exc), EXIT_USAGE)
    except (IntegrationError, DegenerateSeriesError) as exc:
        return _fail(str(exc), EXIT_NUMERICAL)
    except ValueError as exc:
        return _fail(str(exc), EXIT_USAGE)


if __name__ == "__main__":
    sys.exit(main())
