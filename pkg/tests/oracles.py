"""Slow, obviously-correct reference implementations used as test oracles.

None of these import from the package under test.
"""

import math


def arc_walk_resample(points, n):
    """Walk the polyline segment by segment, emitting a point every total/(n-1) of length."""
    pts = [(float(x), float(y)) for x, y in points]
    seglen = [math.hypot(b[0] - a[0], b[1] - a[1]) for a, b in zip(pts, pts[1:])]
    total = sum(seglen)
    out = []
    for k in range(n):
        target = total * k / (n - 1)
        walked = 0.0
        for (a, b), L in zip(zip(pts, pts[1:]), seglen):
            if L == 0.0:
                continue
            if walked + L >= target or (a, b) == (pts[-2], pts[-1]):
                f = min(max((target - walked) / L, 0.0), 1.0)
                out.append((a[0] + f * (b[0] - a[0]), a[1] + f * (b[1] - a[1])))
                break
            walked += L
    out[0] = pts[0]
    out[-1] = pts[-1]
    return out


def linear_nearest(points, q):
    best_i, best_d2 = -1, math.inf
    for i, (x, y) in enumerate(points):
        dx = x - q[0]
        dy = y - q[1]
        d2 = dx * dx + dy * dy
        if d2 < best_d2:
            best_i, best_d2 = i, d2
    return best_i, math.sqrt(best_d2)


def linear_within(points, q, r):
    out = []
    for i, (x, y) in enumerate(points):
        dx = x - q[0]
        dy = y - q[1]
        if math.sqrt(dx * dx + dy * dy) <= r:
            out.append(i)
    return out


def brute_collide(pts1, pts2, d, dt, horizon):
    """Double loop over all sample pairs, g1-major; returns (hit, t_mid, midpoint) of the first hit."""
    m1, m2 = len(pts1), len(pts2)
    for k in range(m1):
        t1 = k / (m1 - 1) * horizon
        for l in range(m2):
            t2 = l / (m2 - 1) * horizon
            dx = pts1[k][0] - pts2[l][0]
            dy = pts1[k][1] - pts2[l][1]
            if math.sqrt(dx * dx + dy * dy) <= d and abs(t1 - t2) <= dt:
                mid = ((pts1[k][0] + pts2[l][0]) / 2, (pts1[k][1] + pts2[l][1]) / 2)
                return True, (t1 + t2) / 2, mid
    return False, None, None


def brute_summary(predictions, d, dt, horizon):
    """{(v1, v2): (n_comb, n_col)} over pairs with at least one colliding combination."""
    out = {}
    vehicles = sorted(v for v in predictions if any(len(p) > 0 for p in predictions[v].values()))
    for i, v1 in enumerate(vehicles):
        for v2 in vehicles[i + 1:]:
            n_comb = n_col = 0
            for p1 in sorted(predictions[v1]):
                a = predictions[v1][p1]
                if len(a) < 2:
                    continue
                for p2 in sorted(predictions[v2]):
                    b = predictions[v2][p2]
                    if len(b) < 2:
                        continue
                    n_comb += 1
                    if brute_collide(a, b, d, dt, horizon)[0]:
                        n_col += 1
            if n_col:
                out[(v1, v2)] = (n_comb, n_col)
    return out


def arc_positions(polyline, samples, tol=1e-7):
    """Arc-length coordinate of each sample along `polyline`, walking forward monotonically."""
    pts = [(float(x), float(y)) for x, y in polyline]
    out = []
    seg0, base0 = 0, 0.0
    for q in samples:
        seg, base = seg0, base0
        while True:
            if seg >= len(pts) - 1:
                raise AssertionError(f"sample {q} is not on the polyline")
            a, b = pts[seg], pts[seg + 1]
            L = math.hypot(b[0] - a[0], b[1] - a[1])
            if L > 0:
                f = ((q[0] - a[0]) * (b[0] - a[0]) + (q[1] - a[1]) * (b[1] - a[1])) / (L * L)
                f = min(max(f, 0.0), 1.0)
                px, py = a[0] + f * (b[0] - a[0]), a[1] + f * (b[1] - a[1])
                if math.hypot(q[0] - px, q[1] - py) <= tol * max(1.0, L):
                    out.append(base + f * L)
                    seg0, base0 = seg, base
                    break
            seg += 1
            base += L
    return out


def distance_to_polyline(polyline, q):
    best = math.inf
    for a, b in zip(polyline, polyline[1:]):
        dx, dy = b[0] - a[0], b[1] - a[1]
        L2 = dx * dx + dy * dy
        f = 0.0 if L2 == 0 else min(max(((q[0] - a[0]) * dx + (q[1] - a[1]) * dy) / L2, 0.0), 1.0)
        best = min(best, math.hypot(q[0] - a[0] - f * dx, q[1] - a[1] - f * dy))
    return best


def all_pairs_collide(pts1, pts2, d, dt, horizon):
    """Same contract as `brute_collide`, evaluated over the full M1 x M2 distance matrix."""
    import numpy as np

    a = np.asarray(pts1, dtype=float)
    b = np.asarray(pts2, dtype=float)
    t1 = np.arange(len(a)) / (len(a) - 1) * horizon
    t2 = np.arange(len(b)) / (len(b) - 1) * horizon
    t1[-1] = t2[-1] = horizon
    dist = np.sqrt((a[:, None, 0] - b[None, :, 0]) ** 2 + (a[:, None, 1] - b[None, :, 1]) ** 2)
    ok = (dist <= d) & (np.abs(t1[:, None] - t2[None, :]) <= dt)
    if not ok.any():
        return False, None, None
    k, l = divmod(int(np.argmax(ok)), len(b))
    return True, (t1[k] + t2[l]) / 2, tuple((a[k] + b[l]) / 2)


def scan_nearest(points, q):
    """Vectorised linear scan over an (N, 2) array; lowest index wins ties."""
    import numpy as np

    dx = points[:, 0] - q[0]
    dy = points[:, 1] - q[1]
    d2 = dx * dx + dy * dy
    i = int(np.argmin(d2))
    return i, math.sqrt(float(d2[i]))


def scan_within(points, q, r):
    import numpy as np

    dx = points[:, 0] - q[0]
    dy = points[:, 1] - q[1]
    return np.flatnonzero(np.sqrt(dx * dx + dy * dy) <= r).tolist()
