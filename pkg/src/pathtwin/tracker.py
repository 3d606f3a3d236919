"""Greedy nearest-centroid tracking with identifier recycling."""

import heapq
import math
from dataclasses import dataclass, field

import numpy as np

__all__ = ["DEFAULT_D_TRK", "Detection", "Track", "Tracker", "centroid_of", "track_stream"]

DEFAULT_D_TRK = 50.0


def centroid_of(bbox):
    """Midpoint of an ``(x1, y1, x2, y2)`` box."""
    x1, y1, x2, y2 = (float(v) for v in bbox)
    if not (x1 < x2 and y1 < y2):
        raise ValueError(f"inverted or empty bounding box {bbox!r}")
    return ((x1 + x2) / 2.0, (y1 + y2) / 2.0)


@dataclass(frozen=True)
class Detection:
    frame: int
    bbox: tuple

    def __post_init__(self):
        object.__setattr__(self, "bbox", tuple(float(v) for v in self.bbox))
        centroid_of(self.bbox)

    @property
    def centroid(self):
        return centroid_of(self.bbox)


@dataclass
class Track:
    vehicle_id: int
    frames: list = field(default_factory=list)
    points: list = field(default_factory=list)
    history: list = field(default_factory=list)
    active: bool = True

    @property
    def last(self):
        return self.points[-1]

    @property
    def trajectory(self):
        return np.array(self.points, dtype=float).reshape(-1, 2)

    def _append(self, frame, c):
        self.frames.append(frame)
        self.points.append(c)


class Tracker:
    """Frame-by-frame tracker state.

    Each detection, taken in input order, claims the nearest active track not
    yet claimed this frame if it lies within `d_trk`; otherwise it opens a
    track under the smallest recycled id, or a fresh one. Tracks left
    unclaimed at the end of a frame are deactivated immediately.
    """

    def __init__(self, d_trk=DEFAULT_D_TRK):
        if not d_trk > 0:
            raise ValueError("d_trk must be positive")
        self.d_trk = float(d_trk)
        self.active = {}
        self.recycled = []
        self.tracks = []
        self.next_fresh_id = 0
        self.last_frame = None

    def _new_id(self):
        if self.recycled:
            return heapq.heappop(self.recycled)
        vid = self.next_fresh_id
        self.next_fresh_id += 1
        return vid

    def step(self, frame, detections):
        """Process one frame; returns ``[(detection, vehicle_id), ...]`` in input order."""
        frame = int(frame)
        if self.last_frame is not None and frame <= self.last_frame:
            raise ValueError(f"frame {frame} is not after previous frame {self.last_frame}")
        for det in detections:
            if det.frame != frame:
                raise ValueError(f"detection stamped frame {det.frame} passed to frame {frame}")
        self.last_frame = frame

        pool = dict(self.active)
        assignments = []
        for det in detections:
            c = det.centroid
            best, best_d = None, math.inf
            for vid, track in pool.items():
                d = math.hypot(c[0] - track.last[0], c[1] - track.last[1])
                if d < best_d or (d == best_d and vid < best):
                    best, best_d = vid, d
            if best is not None and best_d <= self.d_trk:
                track = pool.pop(best)
                track._append(frame, c)
                assignments.append((det, best))
                continue
            vid = self._new_id()
            track = Track(vid)
            track._append(frame, c)
            self.tracks.append(track)
            self.active[vid] = track
            assignments.append((det, vid))

        for vid in sorted(pool):
            pool[vid].active = False
            del self.active[vid]
            heapq.heappush(self.recycled, vid)
        return assignments


def track_stream(frames, d_trk=DEFAULT_D_TRK):
    """Run a tracker over ``[(frame, [Detection, ...]), ...]`` and return every track record."""
    tracker = Tracker(d_trk)
    for frame, detections in frames:
        tracker.step(frame, detections)
    return tracker.tracks
