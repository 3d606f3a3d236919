"""
Nearest-point queries with a K-D tree
=====================================

Associating a vehicle with a path is a nearest-point query against a few
hundred path points; the collision check asks radius queries. Both go
through the same balanced K-D tree.
"""

import numpy as np

from pathtwin.bench import linear_nearest, nearest_latency
from pathtwin.kdtree import KdTree

rng = np.random.default_rng(0)
pts = rng.uniform(0, 2048, (5000, 2))
tree = KdTree(pts)
print("points:", len(tree), " tree height:", tree.height)

q = (1000.0, 1000.0)
print("nearest:", tree.nearest(q), " linear scan:", linear_nearest(pts, q))
print("within 25 px:", tree.within_radius(q, 25.0))

# the radius boundary is inclusive
line = KdTree([(0, 0), (3, 0), (6, 0)])
print("r=3 around (0,0):", line.within_radius((0, 0), 3.0))

# query cost against an exhaustive scan
for n in (1_000, 10_000, 100_000):
    r = nearest_latency(n, n_queries=1000, linear_queries=200)
    print("N=%6d  kd %6.1f us  linear %7.1f us  speedup %5.1fx"
          % (n, r["kdtree_s"] * 1e6, r["linear_s"] * 1e6, r["speedup"]))
