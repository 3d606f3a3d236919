"""JSON-lines serialisation for detection streams, frame reports and ground truth.

Detection stream, one object per frame::

    {"frame": 12, "detections": [{"bbox": [x1, y1, x2, y2]}, ...]}

Frame report, one object per frame::

    {"frame": 12,
     "tracks": [{"id": 0, "centroid": [x, y], "paths": [[path_id, index, distance], ...]}],
     "predictions": [{"id": 0, "path": path_id, "index_velocity": v,
                      "low_confidence": false, "start": [x, y], "end": [x, y]}],
     "collisions": [{"pair": [0, 1], "probability": 0.5, "n_comb": 2, "n_col": 1,
                     "example": {"p1": path_id, "p2": path_id, "t": 1.25, "x": [x, y]}}]}

Ground-truth event::

    {"pair": [0, 1], "frame": 57, "location": [x, y]}

True-state log, one object per frame::

    {"frame": 12, "vehicles": [{"id": 0, "x": x, "y": y}, ...]}

Files are UTF-8 with LF line endings; keys are written sorted so identical
inputs give byte-identical files.
"""

import json
from pathlib import Path

from .association import PathAssociation
from .collision import CollisionReport
from .pipeline import FrameReport
from .simulator import GroundTruthEvent
from .tracker import Detection

__all__ = [
    "read_detections",
    "read_events",
    "read_reports",
    "read_states",
    "report_to_dict",
    "write_detections",
    "write_events",
    "write_jsonl",
    "write_reports",
    "write_states",
]

DIGITS = 4


def _r(x):
    return round(float(x), DIGITS)


def write_jsonl(records, destination):
    with open(destination, "w", encoding="utf-8", newline="\n") as fh:
        for rec in records:
            fh.write(json.dumps(rec, sort_keys=True, separators=(",", ":")))
            fh.write("\n")


def _read_jsonl(source):
    with open(source, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.strip()
            if not line:
                continue
            try:
                yield lineno, json.loads(line)
            except json.JSONDecodeError as exc:
                raise ValueError(f"{source}:{lineno}: invalid JSON: {exc}") from None


def write_detections(frames, destination):
    write_jsonl(
        ({"frame": int(k), "detections": [{"bbox": [float(v) for v in d.bbox]} for d in dets]} for k, dets in frames),
        destination,
    )


def read_detections(source):
    frames = []
    for lineno, rec in _read_jsonl(source):
        try:
            k = int(rec["frame"])
            dets = [Detection(k, tuple(d["bbox"])) for d in rec.get("detections", [])]
        except (KeyError, TypeError, ValueError) as exc:
            raise ValueError(f"{source}:{lineno}: bad detection record: {exc}") from None
        frames.append((k, dets))
    return frames


def report_to_dict(report):
    out = {"frame": int(report.frame)}
    out["tracks"] = [
        {"id": int(vid), "centroid": [_r(c[0]), _r(c[1])],
         "paths": [[e.path_id, int(e.index), _r(e.distance)] for e in entries]}
        for vid, c, entries in report.tracks
    ]
    preds = []
    for p in report.predictions:
        if isinstance(p, dict):
            preds.append(p)
            continue
        preds.append({
            "id": int(p.vehicle),
            "path": p.path_id,
            "index_velocity": _r(p.index_velocity),
            "low_confidence": bool(p.low_confidence),
            "start": [_r(v) for v in p.points[0]],
            "end": [_r(v) for v in p.points[-1]],
        })
    out["predictions"] = preds
    cols = []
    for c in report.collisions:
        p1, p2, t, x = c.example
        cols.append({
            "pair": [int(v) for v in c.pair],
            "probability": _r(c.probability),
            "n_comb": int(c.n_comb),
            "n_col": int(c.n_col),
            "example": {"p1": p1, "p2": p2, "t": _r(t), "x": [int(x[0]), int(x[1])]},
        })
    out["collisions"] = cols
    return out


def write_reports(reports, destination):
    write_jsonl((report_to_dict(r) for r in reports), destination)


def read_reports(source):
    reports = []
    for lineno, rec in _read_jsonl(source):
        try:
            tracks = [
                (int(t["id"]), tuple(t["centroid"]), tuple(PathAssociation(p, int(i), d) for p, i, d in t["paths"]))
                for t in rec["tracks"]
            ]
            cols = [
                CollisionReport(
                    tuple(c["pair"]), float(c["probability"]), int(c["n_comb"]), int(c["n_col"]),
                    (c["example"]["p1"], c["example"]["p2"], c["example"]["t"], tuple(c["example"]["x"])),
                )
                for c in rec["collisions"]
            ]
            reports.append(FrameReport(int(rec["frame"]), tracks, list(rec.get("predictions", [])), cols))
        except (KeyError, TypeError, ValueError) as exc:
            raise ValueError(f"{source}:{lineno}: bad report record: {exc}") from None
    return reports


def write_events(events, destination):
    write_jsonl(
        ({"pair": [int(v) for v in e.pair], "frame": int(e.frame), "location": [_r(e.location[0]), _r(e.location[1])]}
         for e in events),
        destination,
    )


def read_events(source):
    events = []
    for lineno, rec in _read_jsonl(source):
        try:
            events.append(GroundTruthEvent(tuple(int(v) for v in rec["pair"]), int(rec["frame"]), tuple(rec["location"])))
        except (KeyError, TypeError, ValueError) as exc:
            raise ValueError(f"{source}:{lineno}: bad ground-truth record: {exc}") from None
    return events


def write_states(states, destination):
    write_jsonl(
        ({"frame": k, "vehicles": [{"id": int(v), "x": _r(p[0]), "y": _r(p[1])} for v, p in sorted(active.items())]}
         for k, active in enumerate(states)),
        destination,
    )


def read_states(source):
    states = []
    for lineno, rec in _read_jsonl(source):
        k = int(rec["frame"])
        if k != len(states):
            raise ValueError(f"{source}:{lineno}: state frames must be contiguous from 0")
        states.append({int(v["id"]): (float(v["x"]), float(v["y"])) for v in rec["vehicles"]})
    return states


def scenario_files(directory, suffix=".jsonl"):
    """Map scenario id (file stem) to path for the plain ``*.jsonl`` files in `directory`."""
    out = {}
    for p in sorted(Path(directory).glob(f"*{suffix}")):
        stem = p.name[: -len(suffix)]
        if "." in stem:
            continue
        out[stem] = p
    return out
