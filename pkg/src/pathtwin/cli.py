"""Command-line entry point: ``pathtwin <subcommand> ...``."""

import argparse
import json
import math
import sys
from dataclasses import replace
from pathlib import Path

import numpy as np

from . import formats
from .bench import nearest_latency
from .layout import default_routes
from .pathmap import DEFAULT_N_R, TraversalLog, build_path_map, load_path_dir, write_path_file
from .pipeline import DEFAULT_WARN, PipelineConfig, evaluate, run_pipeline
from .simulator import ScenarioConfigError, generate_scenario, load_config


class UsageError(Exception):
    pass


def _existing(path, what):
    p = Path(path)
    if not p.exists():
        raise UsageError(f"{what} not found: {p}")
    return p


def _pipeline_config(args):
    return PipelineConfig(
        d_path=args.d_path,
        d_trk=args.d_trk,
        d_collision=args.d_collision,
        delta_t=args.dt,
        horizon_t=args.horizon,
        n_future=args.n_future,
        downsample_l=args.stride,
        downsample_k=args.samples,
        paths_dir=None if args.paths is None else str(args.paths),
    )


def _load_maps(paths_dir):
    maps = load_path_dir(_existing(paths_dir, "paths directory"))
    if not maps:
        raise UsageError(f"no non-empty path files in {paths_dir}")
    return maps


def _traversal_centroids(frames):
    """One centroid per frame; with several boxes, the one nearest the previous pick."""
    out = []
    for _, dets in frames:
        if not dets:
            continue
        cents = [d.centroid for d in dets]
        if out:
            prev = out[-1]
            cents.sort(key=lambda c: math.dist(c, prev))
        out.append(cents[0])
    return out


def cmd_build_paths(args):
    root = _existing(args.inp, "traversal log directory")
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    n_built = 0
    for path_dir in sorted(p for p in root.iterdir() if p.is_dir()):
        logs = []
        for f in sorted(path_dir.glob("*.jsonl")):
            cents = _traversal_centroids(formats.read_detections(f))
            if cents:
                logs.append(TraversalLog(path_dir.name, f.stem, np.array(cents)))
        if not logs:
            print(f"skipping {path_dir.name}: no traversals", file=sys.stderr)
            continue
        write_path_file(build_path_map(logs, args.n_r), out)
        n_built += 1
    print(f"wrote {n_built} path files to {out}")
    return 0


def cmd_simulate(args):
    cfg = load_config(_existing(args.config, "config file"))
    if args.seed is not None:
        cfg = replace(cfg, seed=args.seed)
    maps = default_routes() if args.paths is None else _load_maps(args.paths)
    scen = generate_scenario(cfg, maps)
    out = Path(args.out)
    stem = out.with_suffix("")
    truth = Path(args.truth) if args.truth else Path(f"{stem}.truth.jsonl")
    states = Path(args.states) if args.states else truth.with_name(truth.name.removesuffix(".jsonl") + ".states.jsonl")
    formats.write_detections(scen.frames, out)
    formats.write_events(scen.events, truth)
    formats.write_states(scen.states, states)
    print(f"{len(scen.frames)} frames, {len(scen.events)} ground-truth events -> {out}")
    return 0


def cmd_run(args):
    maps = _load_maps(args.paths)
    frames = formats.read_detections(_existing(args.inp, "detection stream"))
    reports = run_pipeline(frames, maps, _pipeline_config(args))
    formats.write_reports(reports, args.out)
    warned = sum(1 for r in reports if r.collisions)
    print(f"{len(reports)} frames processed, {warned} with collision reports -> {args.out}")
    return 0


def cmd_evaluate(args):
    rp = _existing(args.reports, "reports")
    tp = _existing(args.truth, "truth")
    if rp.is_dir() and tp.is_dir():
        report_files = formats.scenario_files(rp)
        truth_files = formats.scenario_files(tp)
    elif rp.is_file() and tp.is_file():
        report_files = {"scenario": rp}
        truth_files = {"scenario": tp}
    else:
        raise UsageError("--reports and --truth must both be files or both be directories")
    reports = {sid: formats.read_reports(p) for sid, p in report_files.items()}
    truths = {sid: formats.read_events(p) for sid, p in truth_files.items()}
    states = {}
    for sid, p in truth_files.items():
        sp = p.with_name(p.name.removesuffix(".jsonl") + ".states.jsonl")
        if sp.exists():
            states[sid] = formats.read_states(sp)
    result = evaluate(reports, truths, args.warn, args.fps, states or None)
    metrics = result.to_dict()
    text = json.dumps(metrics, sort_keys=True, indent=2)
    print(text)
    if args.out:
        Path(args.out).write_text(text + "\n", encoding="utf-8")
    return 0


def cmd_bench(args):
    sizes = args.sizes or [1_000, 10_000, 100_000]
    print(f"{'N':>8}  {'kd-tree us':>10}  {'linear us':>10}  {'speedup':>8}")
    for n in sizes:
        r = nearest_latency(n, args.queries, seed=args.seed, linear_queries=min(args.queries, 500))
        print(f"{n:>8}  {r['kdtree_s'] * 1e6:>10.2f}  {r['linear_s'] * 1e6:>10.2f}  {r['speedup']:>8.1f}")
    return 0


def cmd_suite(args):
    from .suite import SUITE_SEED, run_suite, suite_configs

    routes = default_routes()
    seed = SUITE_SEED if args.seed is None else args.seed
    res = run_suite(suite_configs(seed=seed, routes=routes), routes=routes,
                    config=_pipeline_config(args), warn_threshold=args.warn, out_dir=args.out)
    print(json.dumps(res.metrics.to_dict(), sort_keys=True, indent=2))
    return 0


def _add_tunables(p):
    d = PipelineConfig()
    p.add_argument("--d-path", type=float, default=d.d_path, help="path association radius (px)")
    p.add_argument("--d-trk", type=float, default=d.d_trk, help="tracking match radius (px)")
    p.add_argument("--d-collision", type=float, default=d.d_collision, help="collision distance (px)")
    p.add_argument("--dt", type=float, default=d.delta_t, help="temporal collision tolerance (s)")
    p.add_argument("--horizon", type=float, default=d.horizon_t, help="prediction horizon T (s)")
    p.add_argument("--n-future", type=int, default=d.n_future, help="predicted points per path")
    p.add_argument("--stride", type=int, default=d.downsample_l, help="history downsampling stride L (frames)")
    p.add_argument("--samples", type=int, default=d.downsample_k, help="retained history samples K")


def build_parser():
    parser = argparse.ArgumentParser(prog="pathtwin", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build-paths", help="traversal logs -> path files")
    p.add_argument("--in", dest="inp", required=True, help="directory of <path_id>/<scenario>.jsonl detection logs")
    p.add_argument("--out", required=True, help="output directory for <path_id>.csv files")
    p.add_argument("--n-r", type=int, default=DEFAULT_N_R, help="points per path")
    p.set_defaults(func=cmd_build_paths)

    p = sub.add_parser("simulate", help="scenario config -> detection stream and ground truth")
    p.add_argument("--config", required=True, help="YAML scenario config")
    p.add_argument("--paths", default=None, help="route geometry directory (default: built-in junction)")
    p.add_argument("--seed", type=int, default=None, help="override the config seed")
    p.add_argument("--out", required=True, help="detection stream (JSON lines)")
    p.add_argument("--truth", default=None, help="ground-truth events (default <out>.truth.jsonl)")
    p.add_argument("--states", default=None, help="true vehicle centres (default <truth>.states.jsonl)")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("run", help="detection stream + path files -> frame reports")
    p.add_argument("--paths", required=True, help="directory of path files")
    p.add_argument("--in", dest="inp", required=True, help="detection stream (JSON lines)")
    p.add_argument("--out", required=True, help="frame reports (JSON lines)")
    _add_tunables(p)
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("evaluate", help="frame reports + ground truth -> recall, precision, lead time")
    p.add_argument("--reports", required=True, help="report file or directory of <scenario>.jsonl")
    p.add_argument("--truth", required=True, help="truth file or directory of <scenario>.jsonl")
    p.add_argument("--warn", type=float, default=DEFAULT_WARN, help="warning probability threshold")
    p.add_argument("--fps", type=float, default=20.0, help="frame rate for lead times")
    p.add_argument("--out", default=None, help="also write metrics JSON here")
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("bench", help="K-D tree vs linear scan nearest-query latency")
    p.add_argument("--sizes", type=int, nargs="*", default=None)
    p.add_argument("--queries", type=int, default=2000)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("suite", help="run the bundled 100-scenario benchmark")
    p.add_argument("--out", default=None, help="directory for all artefacts and metrics.json")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--warn", type=float, default=DEFAULT_WARN)
    p.add_argument("--paths", default=None, help=argparse.SUPPRESS)
    _add_tunables(p)
    p.set_defaults(func=cmd_suite)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"pathtwin: error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError, ScenarioConfigError) as exc:
        print(f"pathtwin: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
