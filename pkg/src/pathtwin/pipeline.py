"""Per-frame orchestration: tracking, association, prediction, collision checks.

Also holds the warning-versus-ground-truth evaluation used to score whole
scenario suites.
"""

import math
import statistics
import time
from dataclasses import dataclass, field

from .association import DEFAULT_D_PATH, AssociationSet, associate
from .collision import DEFAULT_D, DEFAULT_DT, DEFAULT_HORIZON, collision_summary
from .pathmap import DEFAULT_N_R
from .predictor import DEFAULT_K, DEFAULT_L, DEFAULT_N_FUTURE, downsample_history, estimate_future
from .tracker import DEFAULT_D_TRK, Tracker

__all__ = [
    "DEFAULT_WARN",
    "EvaluationResult",
    "FrameReport",
    "Pipeline",
    "PipelineConfig",
    "evaluate",
    "run_pipeline",
]

DEFAULT_WARN = 0.3


@dataclass(frozen=True)
class PipelineConfig:
    d_path: float = DEFAULT_D_PATH
    d_trk: float = DEFAULT_D_TRK
    d_collision: float = DEFAULT_D
    delta_t: float = DEFAULT_DT
    horizon_t: float = DEFAULT_HORIZON
    n_future: int = DEFAULT_N_FUTURE
    downsample_l: int = DEFAULT_L
    downsample_k: int = DEFAULT_K
    n_r: int = DEFAULT_N_R
    paths_dir: str = None

    def __post_init__(self):
        for name in ("d_path", "d_trk", "d_collision", "delta_t", "horizon_t"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive")
        if self.n_future < 1:
            raise ValueError("n_future must be >= 1")
        if self.downsample_l < 1:
            raise ValueError("downsample_l must be >= 1")
        if self.downsample_k < 2:
            raise ValueError("downsample_k must be >= 2")
        if self.n_r < 2:
            raise ValueError("n_r must be >= 2")


@dataclass
class FrameReport:
    frame: int
    tracks: list  # [(vehicle_id, (x, y), (PathAssociation, ...)), ...]
    predictions: list  # [PredictedTrajectory, ...]
    collisions: list  # [CollisionReport, ...]
    elapsed: float = field(default=0.0, compare=False)

    def centroid_of(self, vehicle):
        for vid, c, _ in self.tracks:
            if vid == vehicle:
                return c
        return None


class Pipeline:
    """Stateful frame processor; feed frames in increasing order."""

    def __init__(self, maps, config=None):
        self.config = config or PipelineConfig()
        self.maps = dict(maps)
        self.trees = {pid: pm.index for pid, pm in self.maps.items()}
        self.tracker = Tracker(self.config.d_trk)

    def process(self, frame, detections):
        cfg = self.config
        t0 = time.perf_counter()
        try:
            assignments = self.tracker.step(frame, detections)
        except ValueError as exc:
            raise ValueError(f"frame {frame}: {exc}") from exc

        tracks = []
        predictions = {}
        for _, vid in assignments:
            track = self.tracker.active[vid]
            c = track.last
            entries = associate(self.trees, c, cfg.d_path)
            track.history.append(AssociationSet(frame, vid, entries))
            tracks.append((vid, c, entries))
            retained = downsample_history(track.history, cfg.downsample_l, cfg.downsample_k)
            # a full window of samples, or no prediction for this vehicle yet
            if len(retained) < cfg.downsample_k:
                continue
            future = estimate_future(retained, self.maps, cfg.n_future, vehicle=vid)
            if future:
                predictions[vid] = future

        collisions = collision_summary(predictions, cfg.d_collision, cfg.delta_t, cfg.horizon_t)
        flat = [traj for vid in sorted(predictions) for traj in predictions[vid].values()]
        tracks.sort(key=lambda t: t[0])
        return FrameReport(frame, tracks, flat, collisions, time.perf_counter() - t0)


def run_pipeline(stream, maps, config=None):
    """Process ``[(frame, [Detection, ...]), ...]`` and return one :class:`FrameReport` per frame."""
    pipe = Pipeline(maps, config)
    return [pipe.process(frame, dets) for frame, dets in stream]


@dataclass
class EvaluationResult:
    true_positives: int = 0
    false_positives: int = 0
    false_negatives: int = 0
    lead_times: list = field(default_factory=list, repr=False)

    @property
    def recall(self):
        total = self.true_positives + self.false_negatives
        return self.true_positives / total if total else math.nan

    @property
    def precision(self):
        total = self.true_positives + self.false_positives
        return self.true_positives / total if total else math.nan

    @property
    def mean_lead_time(self):
        return statistics.fmean(self.lead_times) if self.lead_times else math.nan

    def merge(self, other):
        return EvaluationResult(
            self.true_positives + other.true_positives,
            self.false_positives + other.false_positives,
            self.false_negatives + other.false_negatives,
            self.lead_times + other.lead_times,
        )

    def to_dict(self):
        return {
            "true_positives": self.true_positives,
            "false_positives": self.false_positives,
            "false_negatives": self.false_negatives,
            "recall": self.recall,
            "precision": self.precision,
            "mean_lead_time": self.mean_lead_time,
        }


def _warn_frames(reports, warn_threshold, states=None):
    """First frame at which each (ground-truth) vehicle pair was warned about.

    Without `states`, track ids are taken to be ground-truth vehicle ids.
    With them, each warned track is mapped to the true vehicle nearest its
    centroid at the warning frame, which tolerates recycled and duplicate ids.
    """
    first = {}
    for report in sorted(reports, key=lambda r: r.frame):
        for col in report.collisions:
            if col.probability < warn_threshold:
                continue
            if states is None:
                pair = tuple(sorted(col.pair))
            else:
                truth = states[report.frame] if report.frame < len(states) else {}
                mapped = []
                for vid in col.pair:
                    c = report.centroid_of(vid)
                    if c is None or not truth:
                        break
                    mapped.append(min(truth, key=lambda g: (math.dist(c, truth[g]), g)))
                if len(mapped) != 2 or mapped[0] == mapped[1]:
                    continue
                pair = tuple(sorted(mapped))
            if pair not in first:
                first[pair] = report.frame
    return first


def evaluate_scenario(reports, events, warn_threshold=DEFAULT_WARN, frame_rate=20.0, states=None):
    """Score one scenario's reports against its ground-truth events."""
    warned = _warn_frames(reports, warn_threshold, states)
    result = EvaluationResult()
    event_pairs = set()
    for ev in events:
        pair = tuple(sorted(ev.pair))
        event_pairs.add(pair)
        w = warned.get(pair)
        if w is not None and w < ev.frame:
            result.true_positives += 1
            result.lead_times.append((ev.frame - w) / frame_rate)
        else:
            result.false_negatives += 1
    result.false_positives = sum(1 for pair in warned if pair not in event_pairs)
    return result


def evaluate(reports, truths, warn_threshold=DEFAULT_WARN, frame_rate=20.0, states=None):
    """Aggregate evaluation over scenarios.

    `reports` and `truths` map scenario id to a list of :class:`FrameReport`
    and of ground-truth events; `states`, when given, maps scenario id to the
    true per-frame vehicle centres used to match track ids to vehicles.
    """
    if set(reports) != set(truths):
        raise ValueError(
            f"scenario ids differ: reports only {sorted(set(reports) - set(truths))}, "
            f"truth only {sorted(set(truths) - set(reports))}"
        )
    total = EvaluationResult()
    for sid in sorted(reports):
        st = None if states is None else states.get(sid)
        total = total.merge(evaluate_scenario(reports[sid], truths[sid], warn_threshold, frame_rate, st))
    return total
