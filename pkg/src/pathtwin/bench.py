"""Nearest-neighbour latency: K-D tree against a vectorised linear scan."""

import time

import numpy as np

from .kdtree import KdTree

__all__ = ["linear_nearest", "nearest_latency"]


def linear_nearest(points, q):
    """Exhaustive nearest point, lowest index on ties."""
    d2 = (points[:, 0] - q[0]) ** 2 + (points[:, 1] - q[1]) ** 2
    i = int(np.argmin(d2))
    return i, float(np.sqrt(d2[i]))


def nearest_latency(n, n_queries=2000, seed=0, extent=2048.0, linear_queries=None):
    """Mean per-query seconds for both methods on `n` uniform points.

    The linear scan is timed on the first `linear_queries` queries only (all
    of them by default), since it dominates the run time for large `n`.
    """
    rng = np.random.default_rng(seed)
    pts = rng.uniform(0.0, extent, (n, 2))
    queries = rng.uniform(0.0, extent, (n_queries, 2))
    t0 = time.perf_counter()
    tree = KdTree(pts)
    build = time.perf_counter() - t0

    t0 = time.perf_counter()
    for q in queries:
        tree.nearest(q)
    kd = (time.perf_counter() - t0) / n_queries

    lin_q = queries if linear_queries is None else queries[:linear_queries]
    t0 = time.perf_counter()
    for q in lin_q:
        linear_nearest(pts, q)
    lin = (time.perf_counter() - t0) / len(lin_q)
    return {"n": n, "build_s": build, "kdtree_s": kd, "linear_s": lin, "speedup": lin / kd}
