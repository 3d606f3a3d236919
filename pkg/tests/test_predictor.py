import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import distance_to_polyline
from pathtwin.association import AssociationSet, PathAssociation, associate
from pathtwin.pathmap import PathMap
from pathtwin.predictor import consistent_paths, downsample_history, estimate_future, point_at_index


def entry(frame, **paths):
    return AssociationSet(frame, 0, tuple(PathAssociation(p, i, 0.0) for p, i in sorted(paths.items())))


def history_of(indices, path_id="p"):
    """Newest-first index list -> newest-first association entries."""
    n = len(indices)
    return [entry(n - k, **{path_id: i}) for k, i in enumerate(indices)]


def line_map(n=100, spacing=2.0, path_id="p"):
    return PathMap(path_id, np.column_stack((np.arange(n) * spacing, np.zeros(n))))


def test_downsample_stride():
    hist = [entry(f, p=f) for f in range(1, 11)]
    assert [e.frame for e in downsample_history(hist, 2, 3)] == [10, 8, 6]


def test_downsample_short():
    hist = [entry(f, p=f) for f in range(1, 4)]
    assert [e.frame for e in downsample_history(hist, 1, 5)] == [3, 2, 1]
    assert len(downsample_history(hist[:1], 4, 4)) == 1


def test_downsample_bad_args():
    with pytest.raises(ValueError):
        downsample_history([], 0, 3)


def test_consistent_paths():
    assert consistent_paths([entry(3, A=1, B=1), entry(2, A=1), entry(1, A=1, B=2)]) == {"A"}
    assert consistent_paths([entry(2, A=1, B=1), entry(1, A=1, B=1)]) == {"A", "B"}
    assert consistent_paths([entry(2, A=1), entry(1, B=1)]) == set()


def test_worked_example_velocity_five():
    pm = line_map()
    out = estimate_future(history_of([20, 15, 10]), {"p": pm}, 3)
    traj = out["p"]
    assert traj.index_velocity == 5.0
    np.testing.assert_array_equal(traj.indices, [25, 30, 35])
    np.testing.assert_array_equal(traj.points, [(50, 0), (60, 0), (70, 0)])
    assert not traj.low_confidence


def test_fractional_index_interpolates():
    pm = PathMap("p", np.array([(0, 0), (10, 0), (10, 10)], float))
    np.testing.assert_allclose(point_at_index(pm, [0.5, 1.25, 2.0]), [(5, 0), (10, 2.5), (10, 10)])


def test_stationary():
    rng = np.random.default_rng(0)
    pm = PathMap("p", np.cumsum(rng.uniform(1, 5, (20, 2)), axis=0))
    traj = estimate_future(history_of([7, 7, 7]), {"p": pm}, 6)["p"]
    assert traj.index_velocity == 0.0
    np.testing.assert_array_equal(traj.points, np.repeat(pm.points[7:8], 6, axis=0))


def test_extrapolation_past_end():
    theta = np.linspace(0, 1.3, 30)
    pts = np.column_stack((100 * np.cos(theta), 100 * np.sin(theta))) + np.linspace(0, 9, 30)[:, None]
    pm = PathMap("p", pts)
    traj = estimate_future(history_of([28, 23, 18]), {"p": pm}, 2)["p"]
    np.testing.assert_array_equal(traj.indices, [33, 38])
    # explicit linear extension of the last segment at the mean spacing
    spacing = sum(math.dist(a, b) for a, b in zip(pts, pts[1:])) / 29
    ux, uy = (pts[29] - pts[28]) / math.dist(pts[29], pts[28])
    expected = [(pts[29][0] + k * spacing * ux, pts[29][1] + k * spacing * uy) for k in (4, 9)]
    np.testing.assert_allclose(traj.points, expected, rtol=0, atol=1e-9)


def test_extrapolation_before_start():
    pm = line_map(10, 3.0)
    np.testing.assert_allclose(point_at_index(pm, [-2.0]), [(-6.0, 0.0)])


def test_needs_two_entries():
    assert estimate_future(history_of([5]), {"p": line_map()}, 4) == {}


def test_empty_intersection_falls_back_to_newest():
    maps = {"A": line_map(path_id="A"), "B": line_map(path_id="B")}
    out = estimate_future([entry(2, A=12), entry(1, B=10)], maps, 3)
    assert list(out) == ["A"]
    assert out["A"].low_confidence
    assert out["A"].index_velocity == 0.0


def test_off_path_history_gives_nothing():
    out = estimate_future([entry(2), entry(1, A=3)], {"A": line_map(path_id="A")}, 3)
    assert out == {}


def test_paths_sorted_and_vehicle_stamped():
    maps = {"b": line_map(path_id="b"), "a": line_map(path_id="a")}
    h = [AssociationSet(5 - k, 9, (PathAssociation("a", 10 - k, 0), PathAssociation("b", 20 - 2 * k, 0)))
         for k in range(3)]
    out = estimate_future(h, maps, 4)
    assert list(out) == ["a", "b"]
    assert out["b"].index_velocity == 2.0
    assert {t.vehicle for t in out.values()} == {9}


@st.composite
def curved_maps(draw):
    n = draw(st.integers(3, 40))
    heading = draw(st.floats(0, 2 * math.pi))
    pts = [(draw(st.floats(-500, 500)), draw(st.floats(-500, 500)))]
    for _ in range(n - 1):
        heading += draw(st.floats(-0.8, 0.8))
        step = draw(st.floats(0.5, 20))
        pts.append((pts[-1][0] + step * math.cos(heading), pts[-1][1] + step * math.sin(heading)))
    return PathMap("p", np.array(pts))


@settings(max_examples=150, deadline=None)
@given(curved_maps(), st.data(), st.integers(1, 40))
def test_prediction_properties(pm, data, n):
    k = data.draw(st.integers(2, 6))
    idx = sorted(data.draw(st.lists(st.integers(0, len(pm) - 1), min_size=k, max_size=k)), reverse=True)
    traj = estimate_future(history_of(idx), {"p": pm}, n)["p"]
    assert traj.points.shape == (n, 2)
    if traj.index_velocity > 0:
        assert np.all(np.diff(traj.indices) > 0)
    if traj.index_velocity == 0:
        assert np.all(traj.points == pm.points[idx[0]])
    poly = pm.points.tolist()
    for i, p in zip(traj.indices, traj.points):
        if 0 <= i <= len(pm) - 1:
            assert distance_to_polyline(poly, p) < 1e-9 * max(1.0, np.abs(pm.points).max())

    off = np.array([data.draw(st.floats(-1000, 1000)), data.draw(st.floats(-1000, 1000))])
    moved = estimate_future(history_of(idx), {"p": pm.translated(off)}, n)["p"]
    np.testing.assert_array_equal(moved.indices, traj.indices)
    np.testing.assert_allclose(moved.points, traj.points + off, rtol=0, atol=1e-9)


def test_mean_velocity_beats_single_difference_under_noise():
    """K-sample mean index velocity has lower variance than newest-minus-previous."""
    rng = np.random.default_rng(42)
    pm = PathMap("p", np.column_stack((np.arange(1000.0), np.full(1000, 500.0))))
    trees = {"p": pm.index}
    l, k, speed = 5, 4, 3.0
    mean_est, single_est = [], []
    for _ in range(1000):
        start = rng.uniform(50, 400)
        hist = []
        for f in range(l * (k - 1) + 1):
            c = (start + speed * f + rng.normal(0, 2.0), 500.0 + rng.normal(0, 2.0))
            hist.append(AssociationSet(f, 0, associate(trees, c, 15.0)))
        retained = downsample_history(hist, l, k)
        mean_est.append(estimate_future(retained, {"p": pm}, 1)["p"].index_velocity)
        single_est.append(retained[0].index_of("p") - retained[1].index_of("p"))
    assert np.mean(mean_est) == pytest.approx(speed * l, abs=0.5)
    assert np.var(mean_est) < np.var(single_est)
