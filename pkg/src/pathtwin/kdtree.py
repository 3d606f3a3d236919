"""Immutable 2-D K-D tree with nearest-neighbour and fixed-radius queries.

The tree is built once by recursive median splits on alternating axes and
stored in flat Python lists, which keeps the per-query interpreter overhead
low enough to beat a vectorised linear scan by a wide margin on large point
sets.
"""

import math

import numpy as np

__all__ = ["KdTree"]

LEAF_SIZE = 8


class KdTree:
    """Balanced K-D tree over an ``(N, 2)`` array of points.

    Indices returned by the queries are row positions in the array passed to
    the constructor. Duplicate points are allowed. Ties in distance are
    resolved in favour of the lowest index.
    """

    def __init__(self, points, leaf_size=LEAF_SIZE):
        pts = np.array(points, dtype=float).reshape(-1, 2)
        if len(pts) == 0:
            raise ValueError("cannot build a KdTree from an empty point set")
        if not np.isfinite(pts).all():
            raise ValueError("KdTree points must be finite")
        if leaf_size < 1:
            raise ValueError("leaf_size must be >= 1")
        pts.setflags(write=False)
        self.points = pts
        self.leaf_size = int(leaf_size)

        # node arrays; leaves have axis -1 and [lo, hi) is a slice of _ids
        self._axis = []
        self._lo = []
        self._hi = []
        self._box = []  # (xmin, ymin, xmax, ymax) of the points under each node
        order = []
        self._build(np.arange(len(pts)), 0, order)
        order = np.asarray(order, dtype=np.intp)
        self._ids = order.tolist()
        self._xs = pts[order, 0].tolist()
        self._ys = pts[order, 1].tolist()

    def __len__(self):
        return len(self.points)

    def _build(self, idx, depth, order):
        node = len(self._axis)
        sub = self.points[idx]
        lo_xy = sub.min(axis=0)
        hi_xy = sub.max(axis=0)
        self._box.append((float(lo_xy[0]), float(lo_xy[1]), float(hi_xy[0]), float(hi_xy[1])))
        self._axis.append(-1)
        self._lo.append(0)
        self._hi.append(0)
        if len(idx) <= self.leaf_size:
            self._lo[node] = len(order)
            order.extend(np.sort(idx).tolist())
            self._hi[node] = len(order)
            return node
        axis = depth % 2
        # sort by coordinate, then by index so equal coordinates split deterministically
        srt = idx[np.lexsort((idx, sub[:, axis]))]
        mid = len(srt) // 2
        self._axis[node] = axis
        self._lo[node] = self._build(srt[:mid], depth + 1, order)
        self._hi[node] = self._build(srt[mid:], depth + 1, order)
        return node

    @property
    def height(self):
        """Number of node levels on the longest root-to-leaf path."""
        best = 0
        stack = [(0, 1)]
        while stack:
            node, level = stack.pop()
            best = max(best, level)
            if self._axis[node] >= 0:
                stack.append((self._lo[node], level + 1))
                stack.append((self._hi[node], level + 1))
        return best

    def leaf_indices(self):
        """Point indices in left-to-right leaf order (a permutation of ``range(N)``)."""
        out = []
        stack = [0]
        while stack:
            node = stack.pop()
            if self._axis[node] < 0:
                out.extend(self._ids[self._lo[node]:self._hi[node]])
            else:
                stack.append(self._hi[node])
                stack.append(self._lo[node])
        return out

    def nearest(self, q):
        """Return ``(index, distance)`` of the stored point closest to `q`."""
        qx = float(q[0])
        qy = float(q[1])
        axes, box, lo, hi = self._axis, self._box, self._lo, self._hi
        xs, ys, ids = self._xs, self._ys, self._ids
        best_d2 = math.inf
        best_i = -1
        stack = [(0, 0.0)]
        pop = stack.pop
        push = stack.append
        while stack:
            node, bound = pop()
            # strict comparison: equal-distance subtrees may still hold a lower index
            if bound > best_d2:
                continue
            if axes[node] < 0:
                for j in range(lo[node], hi[node]):
                    dx = xs[j] - qx
                    dy = ys[j] - qy
                    d2 = dx * dx + dy * dy
                    if d2 < best_d2 or (d2 == best_d2 and ids[j] < best_i):
                        best_d2 = d2
                        best_i = ids[j]
                continue
            a = lo[node]
            b = hi[node]
            da = _box_d2(box[a], qx, qy)
            db = _box_d2(box[b], qx, qy)
            # nearer child goes on top of the stack
            if da <= db:
                push((b, db))
                push((a, da))
            else:
                push((a, da))
                push((b, db))
        return best_i, math.sqrt(best_d2)

    def within_radius(self, q, r):
        """Indices of all points with Euclidean distance ``<= r`` from `q`, ascending."""
        r = float(r)
        if not r >= 0.0 or math.isinf(r):
            raise ValueError(f"radius must be finite and non-negative, got {r}")
        qx = float(q[0])
        qy = float(q[1])
        # slack keeps boundary points whose rounded distance equals r
        r2 = r * r * (1.0 + 1e-12) + 1e-300
        axes, box, lo, hi = self._axis, self._box, self._lo, self._hi
        xs, ys, ids = self._xs, self._ys, self._ids
        sqrt = math.sqrt
        found = []
        stack = [0]
        while stack:
            node = stack.pop()
            if _box_d2(box[node], qx, qy) > r2:
                continue
            if axes[node] < 0:
                for j in range(lo[node], hi[node]):
                    dx = xs[j] - qx
                    dy = ys[j] - qy
                    if sqrt(dx * dx + dy * dy) <= r:
                        found.append(ids[j])
                continue
            stack.append(lo[node])
            stack.append(hi[node])
        found.sort()
        return found


def _box_d2(bx, qx, qy):
    """Squared distance from ``(qx, qy)`` to an axis-aligned box (0 inside it)."""
    xmin, ymin, xmax, ymax = bx
    if qx < xmin:
        dx = xmin - qx
    elif qx > xmax:
        dx = qx - xmax
    else:
        dx = 0.0
    if qy < ymin:
        dy = ymin - qy
    elif qy > ymax:
        dy = qy - ymax
    else:
        dy = 0.0
    return dx * dx + dy * dy
