import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from multirrt.errors import EmptyInput, IncompletePlan
from multirrt.mission import (
    assign_altitudes,
    assign_velocities,
    build_mission,
    compute_metrics,
    path_length_metric,
    smooth_score_metric,
)
from multirrt.pipeline import metric_block, run_pipeline

# Frozen regression values: bundled scenario1, seed 42.
SCENARIO1_SEED42 = {
    "raw": {"F_L": 1244.8244747003155, "F_S": 0.642184709527975},
    "reduced": {"F_L": 1125.1493549395639, "F_S": 0.40627629130501636},
    "smoothed": {"F_L": 1119.257345593657, "F_S": 0.020304750869749037},
}


def test_assign_velocities_examples():
    assert assign_velocities([100, 200], 8) == ([4.0, 8.0], 25.0)
    assert assign_velocities([150], 8) == ([8.0], 18.75)
    assert assign_velocities([7, 7, 7], 8)[0] == [8.0, 8.0, 8.0]
    with pytest.raises(EmptyInput):
        assign_velocities([], 8)
    with pytest.raises(ValueError):
        assign_velocities([0.0, 5.0], 8)


lengths = st.lists(st.floats(1e-3, 1e6), min_size=1, max_size=12)


@settings(max_examples=200)
@given(lengths, st.floats(0.1, 50))
def test_simultaneous_arrival_exact(ls, vmax):
    speeds, T = assign_velocities(ls, vmax)
    assert max(abs(L / v - T) / T for L, v in zip(ls, speeds)) <= 1e-9
    assert all(0 < v <= vmax for v in speeds)


@settings(max_examples=100)
@given(lengths, st.floats(0.1, 50))
def test_scale_covariance(ls, vmax):
    v1, t1 = assign_velocities(ls, vmax)
    v2, t2 = assign_velocities([2 * x for x in ls], vmax)
    assert t2 == pytest.approx(2 * t1, rel=1e-12)
    assert v2 == pytest.approx(v1, rel=1e-12)


def test_assign_altitudes():
    assert assign_altitudes(3) == [5, 10, 15]
    assert assign_altitudes(1, base=7.5) == [7.5]
    ten = assign_altitudes(10)
    assert len(set(ten)) == 10 and all(b - a == 5 for a, b in zip(ten, ten[1:]))
    with pytest.raises(ValueError):
        assign_altitudes(0)


def test_path_length_metric():
    assert path_length_metric([[(0, 0), (3, 4)]]) == 5
    assert path_length_metric([[(0, 0), (10, 0)], [(0, 0), (0, 20)]]) == 15
    assert path_length_metric([[(0, 0), (4, 0), (10, 0)]]) == 10
    with pytest.raises(EmptyInput):
        path_length_metric([])


def test_smooth_score_metric():
    assert smooth_score_metric([[(0, 0), (1, 0), (2, 0), (5, 0)]]) == 0
    assert smooth_score_metric([[(0, 0), (1, 0), (1, 1)]]) == pytest.approx(math.pi / 2)
    a = [(0, 0), (1, 0), (1, 1)]  # mean pi/2
    b = [(0, 0), (1, 0), (2, 1), (2, 2)]  # mean pi/4
    assert smooth_score_metric([a, b]) == pytest.approx((math.pi / 2 + math.pi / 4) / 2)
    # Two-point paths have no interior vertex and are left out of the average.
    assert smooth_score_metric([a, [(0, 0), (5, 5)]]) == pytest.approx(math.pi / 2)


class _FakeResult:
    def __init__(self, reached, wall):
        self.goals = [type("G", (), {"reached": r})() for r in reached]
        self.wall_time = wall

    @property
    def all_reached(self):
        return all(g.reached for g in self.goals)


def test_compute_metrics():
    m = compute_metrics(_FakeResult([True, True], 0.25), [[(0, 0), (6, 8)], [(0, 0), (0, 30)]])
    assert m.path_length == 20 and m.smooth_score == 0 and m.compute_time == 0.25
    assert m.as_dict() == {"F_L": 20, "F_S": 0, "F_T": 0.25}
    with pytest.raises(IncompletePlan):
        compute_metrics(_FakeResult([True, False], 0.1), [[(0, 0), (1, 1)]])


def test_frozen_regression_metrics(bundled):
    run = run_pipeline(bundled["scenario1"], 42)
    for rep, expected in SCENARIO1_SEED42.items():
        got = metric_block([p for _, p in sorted(run.paths(rep).items())])
        assert got["F_L"] == pytest.approx(expected["F_L"], rel=1e-12)
        assert got["F_S"] == pytest.approx(expected["F_S"], rel=1e-9)
    # Each refinement stage strictly improves both metrics on this run.
    blocks = [SCENARIO1_SEED42[r] for r in ("raw", "reduced", "smoothed")]
    assert blocks[0]["F_L"] > blocks[1]["F_L"] > blocks[2]["F_L"]
    assert blocks[0]["F_S"] > blocks[1]["F_S"] > blocks[2]["F_S"]
    wall = run.plan.wall_time
    assert compute_metrics(run.plan, list(run.paths("smoothed").values())).compute_time == wall


@pytest.mark.parametrize("name", ["scenario1", "scenario2", "scenario3", "scenario4", "scalability"])
def test_mission_properties(bundled, name):
    sc = bundled[name]
    gamma = math.radians(sc.planner.gamma_max_deg)
    for seed in range(3):
        run = run_pipeline(sc, seed)
        mp = run.mission
        assert mp.max_arrival_error() <= 1e-9
        alts = [a.altitude for a in mp.assignments]
        assert len(set(alts)) == len(alts)
        assert all(0 < a.speed <= sc.uav.forward_speed for a in mp.assignments)
        smoothed = list(run.paths("smoothed").values())
        reduced = list(run.paths("reduced").values())
        assert smooth_score_metric(smoothed) <= gamma
        assert path_length_metric(smoothed) <= path_length_metric(reduced) + 1e-9


def test_build_mission_empty():
    with pytest.raises(EmptyInput):
        build_mission([], 8.0)
