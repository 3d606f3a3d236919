"""Bundled seeded benchmark: 100 junction scenarios, half of them ending in a collision.

Collision scenarios time two vehicles on conflicting routes to reach their
conflict point together. Safe scenarios either put conflicting routes
several seconds apart, use routes that never meet, or send two vehicles down
the same route with a long headway.
"""

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .kdtree import KdTree
from .layout import default_routes
from .pathmap import DEFAULT_N_R, build_path_map, resample_polyline, write_path_file
from .pipeline import DEFAULT_WARN, PipelineConfig, evaluate_scenario, run_pipeline
from .simulator import ScenarioConfig, VehicleSpec, generate_scenario, record_traversal
from . import formats

__all__ = [
    "SUITE_SEED",
    "SuiteResult",
    "build_maps",
    "conflict_point",
    "run_suite",
    "suite_configs",
]

SUITE_SEED = 2024
MAP_SEED = 7
SUITE_NOISE = 2.0
SUITE_DROPOUT = 0.05
SAFE_GAP = (3.5, 6.0)  # s between arrivals at a shared conflict point
COLLIDE_JITTER = 0.1  # s


def build_maps(routes=None, n_traversals=3, n_r=DEFAULT_N_R, seed=MAP_SEED,
               noise_sigma=SUITE_NOISE, dropout_prob=SUITE_DROPOUT, speed=140.0):
    """Path maps reconstructed from noisy simulated traversals of each route."""
    routes = default_routes() if routes is None else routes
    maps = {}
    for r, pid in enumerate(sorted(routes)):
        logs = []
        for q in range(n_traversals):
            cfg = ScenarioConfig(
                seed=seed * 10_000 + r * 100 + q,
                vehicles=(VehicleSpec(pid, 0, speed),),
                noise_sigma=noise_sigma,
                dropout_prob=dropout_prob,
            )
            logs.append(record_traversal(pid, cfg, routes))
        maps[pid] = build_path_map(logs, n_r)
    return maps


def _dense(path_map, step=1.0):
    pts = path_map.points
    length = float(np.hypot(*np.diff(pts, axis=0).T).sum())
    n = max(int(np.ceil(length / step)) + 1, 2)
    return resample_polyline(pts, n), length / (n - 1)


def conflict_point(route_a, route_b, tol=1.0):
    """Arc lengths ``(s_a, s_b)`` of the first point along `route_a` within `tol` px of `route_b`."""
    a, da = _dense(route_a)
    b, db = _dense(route_b)
    tree = KdTree(b)
    for i, p in enumerate(a):
        j, dist = tree.nearest(p)
        if dist <= tol:
            return i * da, j * db
    return None


@dataclass
class _Conflicts:
    table: dict

    @classmethod
    def of(cls, routes):
        ids = sorted(routes)
        table = {}
        for a in ids:
            for b in ids:
                if a != b:
                    table[(a, b)] = conflict_point(routes[a], routes[b])
        return cls(table)


def _approach(pid):
    return pid.split("_")[0]


def _timed_pair(rng, pa, pb, sa, sb, gap, fps, duration):
    """Speeds and spawn frames so `pa` reaches `sa` at t_c and `pb` reaches `sb` at t_c + gap."""
    for _ in range(200):
        t_c = rng.uniform(6.0, 11.0)
        t_b = t_c + gap
        if t_b <= 0.5 or t_b >= duration - 0.5:
            continue
        lo_a = max(90.0, sa / (t_c - 0.25))
        lo_b = max(90.0, sb / (t_b - 0.25))
        if lo_a > 160.0 or lo_b > 160.0:
            continue
        va = rng.uniform(lo_a, 160.0)
        vb = rng.uniform(lo_b, 160.0)
        spawn_a = int(round((t_c - sa / va) * fps))
        spawn_b = int(round((t_b - sb / vb) * fps))
        if spawn_a < 0 or spawn_b < 0:
            continue
        return (VehicleSpec(pa, spawn_a, round(va, 3)), VehicleSpec(pb, spawn_b, round(vb, 3)))
    return None


def suite_configs(n=100, seed=SUITE_SEED, routes=None, noise_sigma=SUITE_NOISE,
                  dropout_prob=SUITE_DROPOUT, frame_rate=20.0, duration=15.0):
    """Deterministic list of `n` scenario configs alternating collision / safe."""
    routes = default_routes() if routes is None else routes
    conflicts = _Conflicts.of(routes).table
    ids = sorted(routes)
    crossing = [(a, b) for (a, b), cp in sorted(conflicts.items())
                if cp is not None and a < b and _approach(a) != _approach(b)]
    disjoint = [(a, b) for (a, b), cp in sorted(conflicts.items())
                if cp is None and a < b and _approach(a) != _approach(b)]

    rng = np.random.default_rng(seed)
    configs = []
    i = 0
    while len(configs) < n:
        want_collision = len(configs) % 2 == 0
        kind = "collision" if want_collision else ["late", "disjoint", "follow"][rng.integers(3)]
        vehicles = None
        if kind in ("collision", "late"):
            a, b = crossing[rng.integers(len(crossing))]
            sa, sb = conflicts[(a, b)]
            if kind == "collision":
                gap = rng.uniform(-COLLIDE_JITTER, COLLIDE_JITTER)
            else:
                gap = rng.uniform(*SAFE_GAP) * rng.choice([-1.0, 1.0])
            vehicles = _timed_pair(rng, a, b, sa, sb, gap, frame_rate, duration)
        elif kind == "disjoint":
            a, b = disjoint[rng.integers(len(disjoint))]
            vehicles = (
                VehicleSpec(a, int(rng.integers(0, 60)), round(rng.uniform(90.0, 160.0), 3)),
                VehicleSpec(b, int(rng.integers(0, 60)), round(rng.uniform(90.0, 160.0), 3)),
            )
        else:
            a = ids[rng.integers(len(ids))]
            speed = round(rng.uniform(90.0, 160.0), 3)
            first = int(rng.integers(0, 40))
            headway = rng.uniform(*SAFE_GAP)
            vehicles = (VehicleSpec(a, first, speed), VehicleSpec(a, first + int(round(headway * frame_rate)), speed))
        i += 1
        if vehicles is None:
            continue
        cfg = ScenarioConfig(
            seed=seed * 1000 + len(configs),
            frame_rate=frame_rate,
            duration=duration,
            vehicles=vehicles,
            noise_sigma=noise_sigma,
            dropout_prob=dropout_prob,
            name=f"s{len(configs):03d}_{kind}",
        )
        events = generate_scenario(cfg, routes).events
        if want_collision != bool(events):
            continue
        configs.append(cfg)
    return configs


@dataclass
class SuiteResult:
    metrics: object
    per_scenario: dict
    frame_times: list


def run_suite(configs=None, routes=None, maps=None, config=None, warn_threshold=DEFAULT_WARN, out_dir=None):
    """Simulate, run and score every scenario; optionally write all artefacts to `out_dir`."""
    routes = default_routes() if routes is None else routes
    maps = build_maps(routes) if maps is None else maps
    configs = suite_configs(routes=routes) if configs is None else configs
    config = config or PipelineConfig()
    if out_dir is not None:
        out_dir = Path(out_dir)
        for sub in ("paths", "detections", "truth", "reports"):
            (out_dir / sub).mkdir(parents=True, exist_ok=True)
        for pm in maps.values():
            write_path_file(pm, out_dir / "paths")

    total = None
    per_scenario = {}
    frame_times = []
    for cfg in configs:
        scen = generate_scenario(cfg, routes)
        reports = run_pipeline(scen.frames, maps, config)
        frame_times.extend(r.elapsed for r in reports)
        res = evaluate_scenario(reports, scen.events, warn_threshold, cfg.frame_rate, scen.states)
        per_scenario[cfg.name] = res
        total = res if total is None else total.merge(res)
        if out_dir is not None:
            formats.write_detections(scen.frames, out_dir / "detections" / f"{cfg.name}.jsonl")
            formats.write_events(scen.events, out_dir / "truth" / f"{cfg.name}.jsonl")
            formats.write_states(scen.states, out_dir / "truth" / f"{cfg.name}.states.jsonl")
            formats.write_reports(reports, out_dir / "reports" / f"{cfg.name}.jsonl")
    if out_dir is not None:
        with open(out_dir / "metrics.json", "w", encoding="utf-8", newline="\n") as fh:
            json.dump(total.to_dict(), fh, sort_keys=True, indent=2)
            fh.write("\n")
    return SuiteResult(total, per_scenario, frame_times)
