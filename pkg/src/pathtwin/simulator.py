"""Deterministic synthetic traffic: vehicles moving along routes, observed as noisy boxes.

All randomness comes from one ``numpy.random.default_rng(seed)`` generator
(PCG64), consumed in a fixed order: per frame, per active vehicle in config
order, two Gaussian draws for the centre noise then one uniform draw for
dropout; then one uniform draw (plus four more on success) for a spurious box.
"""

import math
from dataclasses import dataclass, field, replace

import numpy as np
import yaml

from .collision import DEFAULT_D
from .pathmap import TraversalLog
from .tracker import Detection

__all__ = [
    "GroundTruthEvent",
    "Scenario",
    "ScenarioConfig",
    "ScenarioConfigError",
    "VehicleSpec",
    "generate_scenario",
    "load_config",
    "record_traversal",
    "route_position",
]


class ScenarioConfigError(ValueError):
    pass


@dataclass(frozen=True)
class VehicleSpec:
    path_id: str
    spawn_frame: int = 0
    speed: float = 120.0  # px / s along the route
    vehicle_size: tuple = (40.0, 24.0)  # length, width in px

    def __post_init__(self):
        if self.speed < 0:
            raise ScenarioConfigError(f"vehicle speed must be >= 0, got {self.speed}")
        if self.spawn_frame < 0:
            raise ScenarioConfigError(f"spawn_frame must be >= 0, got {self.spawn_frame}")
        object.__setattr__(self, "vehicle_size", tuple(float(v) for v in self.vehicle_size))


@dataclass(frozen=True)
class ScenarioConfig:
    seed: int = 0
    frame_rate: float = 20.0
    duration: float = 15.0
    frame_size: float = 2048.0
    vehicles: tuple = ()
    noise_sigma: float = 0.0
    dropout_prob: float = 0.0
    collision_distance: float = DEFAULT_D
    spurious_prob: float = 0.0  # chance per frame of one false-positive box
    name: str = ""

    def __post_init__(self):
        if not self.duration > 0:
            raise ScenarioConfigError("duration must be positive")
        if not self.frame_rate > 0:
            raise ScenarioConfigError("frame_rate must be positive")
        if not 0.0 <= self.dropout_prob < 1.0:
            raise ScenarioConfigError("dropout_prob must be in [0, 1)")
        if self.noise_sigma < 0:
            raise ScenarioConfigError("noise_sigma must be >= 0")
        if not 0.0 <= self.spurious_prob <= 1.0:
            raise ScenarioConfigError("spurious_prob must be in [0, 1]")
        vehicles = tuple(v if isinstance(v, VehicleSpec) else VehicleSpec(**v) for v in self.vehicles)
        object.__setattr__(self, "vehicles", vehicles)

    @property
    def n_frames(self):
        return int(round(self.duration * self.frame_rate))

    def to_dict(self):
        out = {k: getattr(self, k) for k in self.__dataclass_fields__ if k != "vehicles"}
        out["vehicles"] = [
            {"path_id": v.path_id, "spawn_frame": v.spawn_frame, "speed": v.speed,
             "vehicle_size": list(v.vehicle_size)}
            for v in self.vehicles
        ]
        return out


def load_config(source):
    """Read a YAML scenario config file."""
    with open(source, encoding="utf-8") as fh:
        data = yaml.safe_load(fh) or {}
    if not isinstance(data, dict):
        raise ScenarioConfigError(f"{source}: top level must be a mapping")
    unknown = set(data) - set(ScenarioConfig.__dataclass_fields__)
    if unknown:
        raise ScenarioConfigError(f"{source}: unknown keys {sorted(unknown)}")
    try:
        return ScenarioConfig(**data)
    except TypeError as exc:
        raise ScenarioConfigError(f"{source}: {exc}") from None


@dataclass(frozen=True)
class GroundTruthEvent:
    pair: tuple
    frame: int
    location: tuple


@dataclass
class Scenario:
    config: ScenarioConfig
    frames: list = field(default_factory=list)  # [(frame, [Detection, ...]), ...]
    events: list = field(default_factory=list)
    states: list = field(default_factory=list)  # per frame: {vehicle index: (x, y)}


class _Route:
    def __init__(self, path_map):
        pts = path_map.points
        seg = np.hypot(*np.diff(pts, axis=0).T)
        keep = np.concatenate(([True], seg > 0))
        self.points = pts[keep]
        self.cum = np.concatenate(([0.0], np.cumsum(seg[seg > 0])))
        self.length = float(self.cum[-1])

    def at(self, s):
        """Position and unit heading at arc length `s` (clamped to the route)."""
        pts, cum = self.points, self.cum
        if len(pts) == 1:
            return pts[0].copy(), np.array([1.0, 0.0])
        j = int(np.searchsorted(cum, s, side="right")) - 1
        j = min(max(j, 0), len(pts) - 2)
        seg = pts[j + 1] - pts[j]
        seg_len = cum[j + 1] - cum[j]
        frac = min(max((s - cum[j]) / seg_len, 0.0), 1.0)
        return pts[j] + frac * seg, seg / seg_len


def route_position(path_map, s):
    """True position at arc length `s` along `path_map`."""
    return _Route(path_map).at(s)[0]


def _routes_for(config, maps):
    routes = {}
    for v in config.vehicles:
        if v.path_id not in maps:
            raise ScenarioConfigError(f"unknown path_id {v.path_id!r}")
        if v.path_id not in routes:
            routes[v.path_id] = _Route(maps[v.path_id])
    return routes


def _true_states(config, routes, n_frames):
    """Per frame, ``{vehicle: (center, heading)}`` for vehicles on their route."""
    out = []
    for k in range(n_frames):
        active = {}
        for vi, v in enumerate(config.vehicles):
            if k < v.spawn_frame:
                continue
            route = routes[v.path_id]
            s = v.speed * (k - v.spawn_frame) / config.frame_rate
            if s > route.length:
                continue
            active[vi] = route.at(s)
        out.append(active)
    return out


def _bbox(center, heading, size):
    length, width = size
    c, s = abs(heading[0]), abs(heading[1])
    hx = (length * c + width * s) / 2.0
    hy = (length * s + width * c) / 2.0
    return (center[0] - hx, center[1] - hy, center[0] + hx, center[1] + hy)


def _observe(config, states, rng):
    frames = []
    sigma = config.noise_sigma
    for k, active in enumerate(states):
        dets = []
        for vi, (center, heading) in active.items():
            noise = rng.normal(0.0, 1.0, 2) * sigma
            dropped = rng.random() < config.dropout_prob
            if dropped:
                continue
            bbox = _bbox(center + noise, heading, config.vehicles[vi].vehicle_size)
            dets.append(Detection(k, bbox))
        if rng.random() < config.spurious_prob:
            cx, cy = rng.uniform(0.0, config.frame_size, 2)
            w, h = rng.uniform(15.0, 45.0, 2)
            dets.append(Detection(k, (cx - w / 2, cy - h / 2, cx + w / 2, cy + h / 2)))
        frames.append((k, dets))
    return frames


def _events(config, states):
    first = {}
    for k, active in enumerate(states):
        ids = sorted(active)
        for i, a in enumerate(ids):
            for b in ids[i + 1:]:
                if (a, b) in first:
                    continue
                pa, pb = active[a][0], active[b][0]
                if math.hypot(*(pa - pb)) <= config.collision_distance:
                    mid = (pa + pb) / 2.0
                    first[(a, b)] = GroundTruthEvent((a, b), k, (float(mid[0]), float(mid[1])))
    return sorted(first.values(), key=lambda e: (e.frame, e.pair))


def generate_scenario(config, maps):
    """Simulate `config` over the route geometry in `maps`.

    Returns a :class:`Scenario` holding the per-frame detection stream, the
    ground-truth events (first frame each vehicle pair's noiseless centres
    come within ``collision_distance``) and the true per-frame centres.
    """
    routes = _routes_for(config, maps)
    states = _true_states(config, routes, config.n_frames)
    rng = np.random.default_rng(config.seed)
    frames = _observe(config, states, rng)
    truth = [{vi: (float(c[0]), float(c[1])) for vi, (c, _) in active.items()} for active in states]
    return Scenario(config, frames, _events(config, states), truth)


def record_traversal(path_id, config, maps):
    """Noisy centroid log of one complete single-vehicle traversal of `path_id`.

    The run lasts until the vehicle leaves its route, however long that takes;
    a stationary vehicle is observed for ``config.duration``. Dropped frames
    are simply absent from the log.
    """
    if len(config.vehicles) != 1 or config.vehicles[0].path_id != path_id:
        raise ScenarioConfigError(f"record_traversal needs a single-vehicle config on {path_id!r}")
    routes = _routes_for(config, maps)
    v = config.vehicles[0]
    n_frames = config.n_frames
    if v.speed > 0:
        needed = v.spawn_frame + int(math.floor(routes[path_id].length / v.speed * config.frame_rate)) + 1
        n_frames = max(n_frames, needed)
    states = _true_states(config, routes, n_frames)
    frames = _observe(replace(config, spurious_prob=0.0), states, np.random.default_rng(config.seed))
    cents = [det.centroid for _, dets in frames for det in dets]
    if not cents:
        raise ScenarioConfigError(f"traversal of {path_id!r} produced no detections")
    return TraversalLog(path_id, f"seed{config.seed}", np.array(cents))
