"""
Tracking by nearest centroid
============================

Detections are matched greedily to the closest active track. A track that
misses a frame is dropped and its id goes back into a pool, so the next new
vehicle reuses the smallest free id.
"""

from pathtwin.tracker import Detection, Tracker


def box(frame, x, y):
    return Detection(frame, (x - 20, y - 12, x + 20, y + 12))


tr = Tracker(d_trk=50.0)

# two cars driving east, far apart
for f in range(5):
    out = tr.step(f, [box(f, 100 + 10 * f, 300), box(f, 100 + 10 * f, 900)])
    print(f, [vid for _, vid in out])

# the lower car is missed at frame 5: its id is freed
tr.step(5, [box(5, 150, 300)])
print("active:", sorted(tr.active), " free ids:", tr.recycled)

# a new car appears elsewhere and takes the freed id
out = tr.step(6, [box(6, 160, 300), box(6, 1500, 1500)])
print("frame 6 ids:", [vid for _, vid in out])

for t in tr.tracks:
    print("track", t.vehicle_id, "frames", t.frames[0], "-", t.frames[-1], "points", len(t.points))
