"""Future-position estimation in path-index space.

A vehicle's association history is thinned to ``k`` samples spaced ``l``
frames apart (newest first). Only paths present in every retained sample are
kept; for each, the mean index step between consecutive samples gives an
index velocity, and future indices are mapped back onto the path polyline.
"""

from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "DEFAULT_K",
    "DEFAULT_L",
    "DEFAULT_N_FUTURE",
    "PredictedTrajectory",
    "consistent_paths",
    "downsample_history",
    "estimate_future",
    "point_at_index",
]

DEFAULT_L = 5
DEFAULT_K = 4
DEFAULT_N_FUTURE = 40


@dataclass(frozen=True, eq=False)
class PredictedTrajectory:
    vehicle: int
    path_id: str
    points: np.ndarray = field(repr=False)
    index_velocity: float
    indices: np.ndarray = field(repr=False)
    low_confidence: bool = False


def downsample_history(history, l=DEFAULT_L, k=DEFAULT_K):
    """Every `l`-th entry walking back from the newest, at most `k` of them, newest first."""
    if l < 1:
        raise ValueError("stride l must be >= 1")
    if k < 1:
        raise ValueError("sample count k must be >= 1")
    return list(history[::-1][::l][:k])


def consistent_paths(entries):
    """Path ids present in every retained association entry."""
    if not entries:
        return set()
    common = entries[0].path_ids()
    for entry in entries[1:]:
        common &= entry.path_ids()
    return common


def point_at_index(path_map, idx):
    """Map fractional path indices to pixel positions.

    Inside ``[0, N-1]`` the path is interpolated linearly between neighbouring
    points. Outside it, the position continues in a straight line along the
    terminal segment, one mean point spacing per index.
    """
    pts = path_map.points
    idx = np.atleast_1d(np.asarray(idx, dtype=float))
    n = len(pts)
    if n == 1:
        return np.repeat(pts[:1], len(idx), axis=0)
    i0 = np.clip(np.floor(idx).astype(np.intp), 0, n - 2)
    frac = np.clip(idx - i0, 0.0, 1.0)[:, None]
    out = pts[i0] + frac * (pts[i0 + 1] - pts[i0])

    spacing = path_map.mean_spacing
    past_end = idx > n - 1
    if past_end.any():
        out[past_end] = pts[-1] + ((idx[past_end] - (n - 1)) * spacing)[:, None] * _end_direction(pts)
    before_start = idx < 0
    if before_start.any():
        out[before_start] = pts[0] + (-idx[before_start] * spacing)[:, None] * _end_direction(pts[::-1])
    return out


def _end_direction(pts):
    """Unit direction of the last non-degenerate segment of `pts`."""
    seg = np.diff(pts, axis=0)
    norms = np.hypot(seg[:, 0], seg[:, 1])
    nz = np.flatnonzero(norms > 0)
    if len(nz) == 0:
        return np.zeros(2)
    j = nz[-1]
    return seg[j] / norms[j]


def estimate_future(entries, maps, n=DEFAULT_N_FUTURE, vehicle=None):
    """Predict `n` future positions per consistent path.

    `entries` is a downsampled history (newest first). Returns a dict
    ``path_id -> PredictedTrajectory`` in ascending path-id order; empty when
    fewer than two entries are available or no path survives. When the
    retained entries share no path, the newest entry's paths are used instead
    and the predictions are flagged ``low_confidence``.
    """
    if n < 1:
        raise ValueError("horizon n must be >= 1")
    if len(entries) < 2:
        return {}
    if vehicle is None:
        vehicle = entries[0].vehicle
    paths = consistent_paths(entries)
    low_confidence = False
    if not paths:
        paths = entries[0].path_ids()
        low_confidence = True

    steps = np.arange(1, n + 1, dtype=float)
    out = {}
    for path_id in sorted(paths):
        # newest-first run of entries that still carry this path
        idx = []
        for entry in entries:
            if path_id not in entry.path_ids():
                break
            idx.append(entry.index_of(path_id))
        if len(idx) >= 2:
            v = float(np.mean([idx[j - 1] - idx[j] for j in range(1, len(idx))]))
        else:
            v = 0.0
        future = idx[0] + steps * v
        pm = maps[path_id]
        out[path_id] = PredictedTrajectory(
            vehicle=vehicle,
            path_id=path_id,
            points=point_at_index(pm, future),
            index_velocity=v,
            indices=future,
            low_confidence=low_confidence,
        )
    return out
