"""Path maps: fixed-resolution polylines built from traversal centroid logs.

Each traversal is resampled to ``n_r`` points at equal arc-length intervals
and the resampled traversals are averaged pointwise, which keeps the
traversal order intact while smoothing out detection jitter.
"""

import csv
import functools
import os
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .kdtree import KdTree

__all__ = [
    "DEFAULT_N_R",
    "DegeneratePolylineError",
    "EmptyPathError",
    "PathFileError",
    "PathMap",
    "TraversalLog",
    "build_path_map",
    "load_path_dir",
    "read_path_file",
    "resample_polyline",
    "write_path_file",
]

DEFAULT_N_R = 500


class DegeneratePolylineError(ValueError):
    """Polyline has fewer than two points or zero total length."""


class PathFileError(ValueError):
    """Malformed path file."""


class EmptyPathError(PathFileError):
    """Path file holds a header but no points; callers should skip the path."""


@dataclass(frozen=True)
class TraversalLog:
    path_id: str
    scenario_id: str
    centroids: np.ndarray

    def __post_init__(self):
        pts = np.asarray(self.centroids, dtype=float).reshape(-1, 2)
        if len(pts) == 0:
            raise ValueError(f"traversal {self.scenario_id!r} of {self.path_id!r} is empty")
        object.__setattr__(self, "centroids", pts)


@dataclass(frozen=True, eq=False)
class PathMap:
    """Ordered path polyline ``points`` of shape ``(N_r, 2)`` with a lazily built index."""

    path_id: str
    points: np.ndarray = field(repr=False)

    def __post_init__(self):
        pts = np.array(self.points, dtype=float).reshape(-1, 2)
        if len(pts) == 0:
            raise ValueError(f"path {self.path_id!r} has no points")
        if not np.isfinite(pts).all():
            raise ValueError(f"path {self.path_id!r} has non-finite points")
        pts.setflags(write=False)
        object.__setattr__(self, "points", pts)

    def __len__(self):
        return len(self.points)

    @functools.cached_property
    def index(self):
        return KdTree(self.points)

    @functools.cached_property
    def mean_spacing(self):
        if len(self.points) < 2:
            return 0.0
        seg = np.hypot(*np.diff(self.points, axis=0).T)
        return float(seg.mean())

    def translated(self, offset):
        return PathMap(self.path_id, self.points + np.asarray(offset, dtype=float))


def _cumulative_length(pts):
    seg = np.hypot(*np.diff(pts, axis=0).T)
    return np.concatenate(([0.0], np.cumsum(seg)))


def resample_polyline(points, n):
    """Resample a polyline to `n` points spaced equally in arc length.

    The first and last output points are exactly the input endpoints.
    """
    pts = np.asarray(points, dtype=float).reshape(-1, 2)
    n = int(n)
    if n < 2:
        raise ValueError(f"need n >= 2 output points, got {n}")
    if len(pts) < 2:
        raise DegeneratePolylineError("polyline needs at least 2 points")
    # repeated points carry no length and would make the arc-length axis non-increasing
    keep = np.concatenate(([True], np.any(np.diff(pts, axis=0) != 0.0, axis=1)))
    pts = pts[keep]
    if len(pts) < 2:
        raise DegeneratePolylineError("polyline has zero total arc length")
    cum = _cumulative_length(pts)
    total = cum[-1]
    if not total > 0.0:
        raise DegeneratePolylineError("polyline has zero total arc length")
    targets = np.linspace(0.0, total, n)
    out = np.column_stack((np.interp(targets, cum, pts[:, 0]), np.interp(targets, cum, pts[:, 1])))
    out[0] = pts[0]
    out[-1] = pts[-1]
    return out


def build_path_map(logs, n_r=DEFAULT_N_R):
    """Average the `n_r`-point resamplings of several traversals of one path."""
    logs = list(logs)
    if not logs:
        raise ValueError("build_path_map needs at least one traversal log")
    ids = {log.path_id for log in logs}
    if len(ids) != 1:
        raise ValueError(f"traversal logs mix path ids: {sorted(ids)}")
    stacked = np.stack([resample_polyline(log.centroids, n_r) for log in logs])
    return PathMap(logs[0].path_id, stacked.mean(axis=0))


def write_path_file(path_map, destination):
    """Write `path_map` as ``x,y`` CSV; a directory destination gets ``<path_id>.csv``."""
    if len(path_map.points) == 0:
        raise ValueError("refusing to write an empty path map")
    dest = Path(destination)
    if dest.is_dir():
        dest = dest / f"{path_map.path_id}.csv"
    try:
        with open(dest, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(["x", "y"])
            for x, y in path_map.points.tolist():
                writer.writerow([repr(x), repr(y)])
    except OSError as exc:
        raise OSError(f"cannot write path file {dest}: {exc}") from exc
    return dest


def read_path_file(source, path_id=None):
    """Parse a path CSV. Raises :class:`EmptyPathError` when it has no data rows."""
    source = Path(source)
    if path_id is None:
        path_id = source.stem
    rows = []
    with open(source, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or [h.strip() for h in header] != ["x", "y"]:
            raise PathFileError(f"{source}:1: expected header 'x,y', got {header!r}")
        for row in reader:
            if not row:
                continue
            try:
                if len(row) != 2:
                    raise ValueError(f"expected 2 fields, got {len(row)}")
                rows.append((float(row[0]), float(row[1])))
            except ValueError as exc:
                raise PathFileError(f"{source}:{reader.line_num}: bad row {row!r}: {exc}") from None
    if not rows:
        raise EmptyPathError(f"{source}: path {path_id!r} has no points")
    return PathMap(path_id, np.array(rows))


def load_path_dir(directory):
    """Load every ``*.csv`` path file in `directory`, skipping empty ones, keyed by path id."""
    maps = {}
    for name in sorted(os.listdir(directory)):
        if not name.endswith(".csv"):
            continue
        try:
            pm = read_path_file(Path(directory) / name)
        except EmptyPathError:
            continue
        maps[pm.path_id] = pm
    return maps
