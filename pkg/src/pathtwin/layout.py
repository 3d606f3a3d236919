"""Built-in road layout: one four-way junction on a 2048 x 2048 frame.

Traffic keeps right. Each approach (E, W, S, N = direction of travel) has a
straight, a left-turn and a right-turn route, twelve routes in all. Lanes
are 60 px apart so adjacent lanes separate cleanly at the default
association threshold.
"""

import numpy as np

from .pathmap import PathMap

__all__ = ["FRAME_SIZE", "LANE_OFFSET", "default_routes", "filleted_polyline"]

FRAME_SIZE = 2048.0
LANE_OFFSET = 30.0
LEFT_RADIUS = 90.0
RIGHT_RADIUS = 40.0


def _segment(a, b, step):
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    n = max(int(np.ceil(np.hypot(*(b - a)) / step)), 1)
    t = np.linspace(0.0, 1.0, n + 1)[:, None]
    return a + t * (b - a)


def filleted_polyline(a, corner, c, radius, step=4.0):
    """Densely sampled ``a -> corner -> c`` with the corner rounded by a circular arc.

    The two legs must be perpendicular.
    """
    a, corner, c = (np.asarray(p, dtype=float) for p in (a, corner, c))
    u = (corner - a) / np.hypot(*(corner - a))
    w = (c - corner) / np.hypot(*(c - corner))
    p_in = corner - radius * u
    p_out = corner + radius * w
    center = p_in + radius * w
    a0 = np.arctan2(*(p_in - center)[::-1])
    a1 = np.arctan2(*(p_out - center)[::-1])
    sweep = (a1 - a0 + np.pi) % (2 * np.pi) - np.pi
    n_arc = max(int(np.ceil(abs(sweep) * radius / step)), 2)
    ang = a0 + np.linspace(0.0, sweep, n_arc + 1)
    arc = center + radius * np.column_stack((np.cos(ang), np.sin(ang)))
    return np.vstack((_segment(a, p_in, step)[:-1], arc, _segment(p_out, c, step)[1:]))


def default_routes(size=FRAME_SIZE, offset=LANE_OFFSET):
    """The twelve junction routes as ground-truth :class:`PathMap` objects keyed by id."""
    m = size / 2.0
    lo, hi = m - offset, m + offset
    # lane coordinate per direction of travel (y = down in image space)
    lanes = {"E": hi, "W": lo, "S": lo, "N": hi}
    start = {
        "E": (0.0, lanes["E"]),
        "W": (size, lanes["W"]),
        "S": (lanes["S"], 0.0),
        "N": (lanes["N"], size),
    }
    end = {
        "E": (size, lanes["E"]),
        "W": (0.0, lanes["W"]),
        "S": (lanes["S"], size),
        "N": (lanes["N"], 0.0),
    }
    left_of = {"E": "N", "N": "W", "W": "S", "S": "E"}
    right_of = {"E": "S", "S": "W", "W": "N", "N": "E"}

    routes = {}
    for d in "EWSN":
        routes[f"{d}_straight"] = _segment(start[d], end[d], 4.0)
        for turn, exit_dir, radius in (("left", left_of[d], LEFT_RADIUS), ("right", right_of[d], RIGHT_RADIUS)):
            if d in "EW":
                corner = (lanes[exit_dir], lanes[d])
            else:
                corner = (lanes[d], lanes[exit_dir])
            routes[f"{d}_{turn}"] = filleted_polyline(start[d], corner, end[exit_dir], radius)
    return {pid: PathMap(pid, pts) for pid, pts in sorted(routes.items())}
