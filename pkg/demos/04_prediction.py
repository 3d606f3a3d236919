"""
Predicting futures along known paths
====================================

A car approaching the junction from the west lies on three routes at once
(straight, left, right). Each retained history sample carries its index on
every route; the mean index step gives one future per consistent route.
"""

import numpy as np

from pathtwin.association import AssociationSet, associate
from pathtwin.predictor import downsample_history, estimate_future
from pathtwin.simulator import ScenarioConfig, VehicleSpec, generate_scenario
from pathtwin.suite import build_maps
from pathtwin.layout import default_routes

routes = default_routes()
maps = build_maps(routes)
trees = {pid: pm.index for pid, pm in maps.items()}

cfg = ScenarioConfig(seed=4, noise_sigma=2.0, vehicles=[VehicleSpec("E_left", 0, 120.0)])
scen = generate_scenario(cfg, routes)

history = []
for frame, dets in scen.frames[:80]:
    c = dets[0].centroid
    history.append(AssociationSet(frame, 0, associate(trees, c, 15.0)))

print("paths at frame 79:", sorted(history[-1].path_ids()))

# every 5th sample, the 4 most recent
retained = downsample_history(history, l=5, k=4)
print("retained frames:", [e.frame for e in retained])
print("indices on E_left:", [e.index_of("E_left") for e in retained])

for pid, traj in estimate_future(retained, maps, n=40).items():
    end = np.round(traj.points[-1]).astype(int)
    print("%-11s v=%.1f idx/step  predicted end %s" % (pid, traj.index_velocity, end))
