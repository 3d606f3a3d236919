import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import brute_collide, brute_summary
from pathtwin.collision import collision_summary, pair_paths_collide, timestamp_trajectory


def test_timestamps():
    np.testing.assert_array_equal(timestamp_trajectory([(0, 0)] * 3, 10).times, [0, 5, 10])
    np.testing.assert_array_equal(timestamp_trajectory([(0, 0), (1, 1)], 1).times, [0, 1])
    assert timestamp_trajectory([(0, 0)], 1) is None
    assert timestamp_trajectory(np.zeros((0, 2)), 1) is None
    with pytest.raises(ValueError):
        timestamp_trajectory([(0, 0), (1, 1)], 0)


def test_timestamps_end_exactly_at_horizon():
    for m in range(2, 200):
        t = timestamp_trajectory(np.zeros((m, 2)), 2.0).times
        assert t[0] == 0.0 and t[-1] == 2.0
        assert np.all(np.diff(t) > 0)


def test_spatial_cross_temporal_miss():
    # both pass (50, 50): g1 at t=2, g2 at t=8 (11 samples over T=10)
    g1 = timestamp_trajectory([(50 + 10 * (k - 2), 50) for k in range(11)], 10)
    g2 = timestamp_trajectory([(50, 50 + 10 * (k - 8)) for k in range(11)], 10)
    assert pair_paths_collide(g1, g2, 10, 1) == (False, None)


def test_collision_evidence_midpoint():
    # g1 at (50,50) when t=4; g2 at (52,50) when t=4.5
    g1 = timestamp_trajectory([(0, 500), (50, 50), (900, 900)], 8)
    g2 = timestamp_trajectory([(-900, 0)] * 9 + [(52, 50)] + [(-900, 0)] * 8, 8.5)
    assert g1.times[1] == 4.0 and g2.times[9] == 4.5
    hit, (t_mid, x_mid) = pair_paths_collide(g1, g2, 10, 1)
    assert hit
    assert t_mid == 4.25
    assert x_mid == (51, 50)


def crossing(v_offset=0.0):
    """Straight east-bound line through (100, 0) reached at sample 5 of 11 (t=1s of 2s)."""
    return np.array([(100 + 20 * (k - 5), v_offset) for k in range(11)], float)


def colliding():
    return np.array([(100, 20 * (k - 5)) for k in range(11)], float)


def far(dx):
    return np.array([(dx + 5 * k, 5000) for k in range(11)], float)


def test_one_of_three():
    preds = {1: {"a": crossing()}, 2: {"a": colliding(), "b": far(0), "c": far(800)}}
    [rep] = collision_summary(preds, 10, 0.3, 2.0)
    assert (rep.pair, rep.n_comb, rep.n_col) == ((1, 2), 3, 1)
    assert rep.probability == 1 / 3
    assert rep.example[:2] == ("a", "a")


def test_one_of_two():
    preds = {1: {"a": crossing()}, 2: {"x": colliding(), "y": far(0)}}
    [rep] = collision_summary(preds, 10, 0.3, 2.0)
    assert (rep.n_comb, rep.n_col, rep.probability) == (2, 1, 0.5)


def test_certain():
    preds = {3: {"a": crossing()}, 7: {"b": colliding()}}
    [rep] = collision_summary(preds, 10, 0.3, 2.0)
    assert rep.pair == (3, 7)
    assert rep.probability == 1.0
    assert rep.example == ("a", "b", 1.0, (100, 0))


def test_quarter_and_safe_pairs_absent():
    preds = {
        1: {"a": crossing(), "b": far(-3000)},
        2: {"a": colliding(), "b": far(3000)},
        3: {"z": far(9000)},
    }
    reps = collision_summary(preds, 10, 0.3, 2.0)
    assert [(r.pair, r.n_comb, r.n_col, r.probability) for r in reps] == [((1, 2), 4, 1, 0.25)]


def test_short_trajectories_skipped():
    preds = {1: {"a": crossing(), "s": np.array([(100.0, 0.0)])}, 2: {"b": colliding()}}
    [rep] = collision_summary(preds, 10, 0.3, 2.0)
    assert (rep.n_comb, rep.n_col) == (1, 1)


def test_fewer_than_two_vehicles():
    assert collision_summary({}, 10, 0.3, 2.0) == []
    assert collision_summary({1: {"a": crossing()}}, 10, 0.3, 2.0) == []
    assert collision_summary({1: {"a": crossing()}, 2: {}}, 10, 0.3, 2.0) == []


def test_temporal_gate_dominates():
    # same geometry, one vehicle a full second behind the other
    late = np.vstack((np.repeat(colliding()[:1], 5, axis=0), colliding()[:6]))
    preds = {1: {"a": crossing()}, 2: {"b": late}}
    assert collision_summary(preds, 10, 0.3, 2.0) == []
    assert collision_summary(preds, 10, 1.5, 2.0) != []


points = st.lists(st.tuples(st.integers(0, 60), st.integers(0, 60)), min_size=0, max_size=12)


@st.composite
def prediction_sets(draw):
    n_v = draw(st.integers(0, 4))
    out = {}
    for v in draw(st.lists(st.integers(0, 9), min_size=n_v, max_size=n_v, unique=True)):
        paths = draw(st.lists(st.sampled_from("abc"), min_size=1, max_size=3, unique=True))
        out[v] = {p: np.array(draw(points), dtype=float).reshape(-1, 2) for p in paths}
    return out


def summary_key(reports):
    return {r.pair: (r.n_comb, r.n_col) for r in reports}


@settings(max_examples=200, deadline=None)
@given(prediction_sets(), st.sampled_from([5.0, 10.0, 20.0]), st.sampled_from([0.1, 0.3, 1.0]))
def test_matches_brute_force(preds, d, dt):
    reps = collision_summary(preds, d, dt, 2.0)
    assert summary_key(reps) == brute_summary(preds, d, dt, 2.0)
    for r in reps:
        assert r.probability == r.n_col / r.n_comb
        assert 0 < r.probability <= 1
        assert r.pair[0] < r.pair[1]
        assert all(isinstance(c, int) for c in r.example[3])


@settings(max_examples=200, deadline=None)
@given(points, points, st.floats(0, 30), st.floats(0, 2))
def test_pair_matches_brute_force(a, b, d, dt):
    a = np.array(a, float).reshape(-1, 2)
    b = np.array(b, float).reshape(-1, 2)
    if len(a) < 2 or len(b) < 2:
        return
    hit, ev = pair_paths_collide(timestamp_trajectory(a, 2.0), timestamp_trajectory(b, 2.0), d, dt)
    bh, bt, bx = brute_collide(a.tolist(), b.tolist(), d, dt, 2.0)
    assert hit == bh
    if hit:
        assert ev[0] == pytest.approx(bt, abs=1e-12)
        assert ev[1] == tuple(int(v) for v in np.rint(bx))


@settings(max_examples=150, deadline=None)
@given(prediction_sets())
def test_symmetric_under_relabelling(preds):
    ids = sorted(preds)
    swap = dict(zip(ids, reversed(ids)))
    flipped = {swap[v]: p for v, p in preds.items()}
    a = {tuple(sorted(r.pair)): (r.n_comb, r.n_col, r.probability) for r in collision_summary(preds)}
    b = {tuple(sorted((swap[r.pair[0]], swap[r.pair[1]]))): (r.n_comb, r.n_col, r.probability)
         for r in collision_summary(flipped)}
    assert a == b


@settings(max_examples=150, deadline=None)
@given(prediction_sets(), st.floats(1, 20), st.floats(0, 20), st.floats(0.05, 1), st.floats(0, 1))
def test_monotone_in_thresholds(preds, d, dd, dt, ddt):
    base = summary_key(collision_summary(preds, d, dt, 2.0))
    bigger = summary_key(collision_summary(preds, d + dd, dt + ddt, 2.0))
    for pair, (_, n_col) in base.items():
        assert bigger[pair][1] >= n_col
