"""Pairwise collision probability from time-stamped path hypotheses.

Every predicted trajectory is spread uniformly over the horizon ``T``. Two
hypotheses collide when some pair of their samples is within ``d`` pixels
and within ``dt`` seconds. The probability for a vehicle pair is the share
of hypothesis combinations that collide.
"""

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .kdtree import KdTree

__all__ = [
    "DEFAULT_D",
    "DEFAULT_DT",
    "DEFAULT_HORIZON",
    "CollisionReport",
    "TimedTrajectory",
    "collision_summary",
    "pair_paths_collide",
    "timestamp_trajectory",
]

DEFAULT_D = 30.0
DEFAULT_DT = 0.3
DEFAULT_HORIZON = 2.0


@dataclass(frozen=True, eq=False)
class TimedTrajectory:
    times: np.ndarray
    points: np.ndarray

    def __len__(self):
        return len(self.times)


@dataclass(frozen=True)
class CollisionReport:
    pair: tuple
    probability: float
    n_comb: int
    n_col: int
    example: tuple  # (p1, p2, t_mid, (x, y)) of the first colliding sample pair


def timestamp_trajectory(points, horizon_t=DEFAULT_HORIZON):
    """Attach times ``(k-1)/(M-1) * T`` to `points`; None when fewer than two points."""
    pts = np.asarray(points, dtype=float).reshape(-1, 2)
    if not horizon_t > 0:
        raise ValueError("horizon_t must be positive")
    m = len(pts)
    if m < 2:
        return None
    times = np.arange(m, dtype=float) / (m - 1) * horizon_t
    times[-1] = horizon_t
    return TimedTrajectory(times, pts)


def _bbox_apart(a, b, d):
    lo1, hi1 = a.points.min(axis=0), a.points.max(axis=0)
    lo2, hi2 = b.points.min(axis=0), b.points.max(axis=0)
    return bool(np.any(lo1 - hi2 > d) or np.any(lo2 - hi1 > d))


def pair_paths_collide(g1, g2, d=DEFAULT_D, dt=DEFAULT_DT, tree2=None):
    """Check two timed trajectories for a sample pair close in both space and time.

    Returns ``(collides, evidence)`` where evidence is ``(t_mid, (x, y))`` for
    the first qualifying pair scanning `g1` in order, or None.
    """
    if _bbox_apart(g1, g2, d):
        return False, None
    if tree2 is None:
        tree2 = KdTree(g2.points)
    t2 = g2.times
    for k, (t1, x1) in enumerate(zip(g1.times.tolist(), g1.points)):
        for j in tree2.within_radius(x1, d):
            if abs(t1 - t2[j]) <= dt:
                t_mid = (t1 + float(t2[j])) / 2.0
                mid = np.rint((x1 + g2.points[j]) / 2.0)
                return True, (t_mid, (int(mid[0]), int(mid[1])))
    return False, None


def _as_points(traj):
    return getattr(traj, "points", traj)


def collision_summary(predictions, d=DEFAULT_D, dt=DEFAULT_DT, horizon_t=DEFAULT_HORIZON):
    """Collision reports for every vehicle pair with at least one colliding combination.

    `predictions` maps vehicle id to ``{path_id: trajectory}`` where a
    trajectory is a :class:`~pathtwin.predictor.PredictedTrajectory` or an
    ``(M, 2)`` array. Vehicle pairs are visited with the lower id first and
    paths in ascending id order, so the recorded example is reproducible.
    Combinations in which either trajectory has fewer than two points are left
    out of both counts.
    """
    timed = {}
    for v in sorted(predictions):
        per_path = {}
        for p in sorted(predictions[v]):
            pts = np.asarray(_as_points(predictions[v][p]), dtype=float).reshape(-1, 2)
            if len(pts) == 0:
                continue
            per_path[p] = timestamp_trajectory(pts, horizon_t)
        if per_path:
            timed[v] = per_path

    trees = {}
    reports = []
    for v1, v2 in combinations(sorted(timed), 2):
        n_comb = 0
        n_col = 0
        example = None
        for p1, g1 in timed[v1].items():
            if g1 is None:
                continue
            for p2, g2 in timed[v2].items():
                if g2 is None:
                    continue
                n_comb += 1
                if _bbox_apart(g1, g2, d):
                    continue
                key = (v2, p2)
                if key not in trees:
                    trees[key] = KdTree(g2.points)
                hit, evidence = pair_paths_collide(g1, g2, d, dt, tree2=trees[key])
                if hit:
                    n_col += 1
                    if example is None:
                        example = (p1, p2) + evidence
        if n_col > 0:
            reports.append(CollisionReport((v1, v2), n_col / n_comb, n_comb, n_col, example))
    return reports
