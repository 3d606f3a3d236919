"""
Collision probability over time
===============================

Two cars on crossing routes. When they reach the junction together, the
share of colliding route hypotheses climbs as the ambiguity resolves. When
one arrives four seconds later, the paths still cross but the time gate
keeps every combination clear.
"""

from pathtwin.layout import default_routes
from pathtwin.pipeline import run_pipeline
from pathtwin.simulator import ScenarioConfig, VehicleSpec, generate_scenario
from pathtwin.suite import build_maps, conflict_point

routes = default_routes()
maps = build_maps(routes)
sa, sb = conflict_point(routes["E_straight"], routes["S_straight"])


def scenario(offset_s, speed=120.0, arrive_s=9.0):
    return ScenarioConfig(seed=1, noise_sigma=2.0, vehicles=[
        VehicleSpec("E_straight", round((arrive_s - sa / speed) * 20), speed),
        VehicleSpec("S_straight", round((arrive_s + offset_s - sb / speed) * 20), speed),
    ])


for offset in (0.0, 4.0):
    scen = generate_scenario(scenario(offset), routes)
    reports = run_pipeline(scen.frames, maps)
    impact = scen.events[0].frame if scen.events else None
    print("arrival offset %.0f s, ground-truth impact frame %s" % (offset, impact))
    last = None
    for r in reports:
        p = max((c.probability for c in r.collisions), default=0.0)
        if p != last:
            print("   frame %3d  Pr %.2f" % (r.frame, p))
            last = p
