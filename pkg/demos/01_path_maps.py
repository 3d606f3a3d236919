"""
Path maps from noisy traversals
===============================

Drive one route a few times with a noisy detector, average the traversals
into a fixed-resolution path map, and round-trip it through a CSV file.
"""

import tempfile

import numpy as np

from pathtwin.layout import default_routes
from pathtwin.pathmap import build_path_map, read_path_file, write_path_file
from pathtwin.simulator import ScenarioConfig, VehicleSpec, record_traversal

routes = default_routes()
route = routes["N_left"]

# three drives down the same left turn, 2 px detector noise, 5% dropped frames
logs = []
for q in range(3):
    cfg = ScenarioConfig(seed=q, noise_sigma=2.0, dropout_prob=0.05,
                         vehicles=[VehicleSpec("N_left", 0, 140.0)])
    logs.append(record_traversal("N_left", cfg, routes))
print("centroids per traversal:", [len(log.centroids) for log in logs])

pm = build_path_map(logs, n_r=200)
print("path map points:", len(pm), " mean spacing: %.2f px" % pm.mean_spacing)

# how far is the averaged map from the true route?
dev = [route.index.nearest(p)[1] for p in pm.points]
print("distance to true route: mean %.2f px, max %.2f px" % (np.mean(dev), np.max(dev)))

# the file format is a plain x,y CSV
with tempfile.TemporaryDirectory() as d:
    f = write_path_file(pm, d)
    print(open(f).read().splitlines()[:3])
    back = read_path_file(f)
    print("round trip identical:", np.array_equal(back.points, pm.points))
