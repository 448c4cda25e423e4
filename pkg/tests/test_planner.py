import math

import numpy as np
import pytest

from multirrt.environment import Circle, Workspace
from multirrt.errors import DegenerateSegment, InvalidScenario
from multirrt.geometry import Point2, Rect, turning_angle
from multirrt.planner import PlannerConfig, Tree, angle_admissible, nearest, plan, steer
from multirrt.refine import path_violations


@pytest.mark.parametrize(
    "near, rand, step, expected",
    [((0, 0), (10, 0), 50, (10, 0)), ((0, 0), (100, 0), 50, (50, 0)), ((0, 0), (30, 40), 25, (15, 20))],
)
def test_steer_examples(near, rand, step, expected):
    assert steer(near, rand, step) == pytest.approx(expected, abs=1e-12)


def test_steer_rejects_coincident():
    with pytest.raises(DegenerateSegment):
        steer((1, 1), (1, 1), 5)


def test_nearest_single_and_tie():
    tree = Tree((0, 0))
    assert nearest(tree, (5, 5)) == 0
    a = tree.add((10, 0), 0)
    tree.add((-10, 0), 0)
    assert nearest(tree, (0, 0.0)) == 0
    # (0, 20) is equidistant from both children; the earlier one wins.
    tree2 = Tree((0, -100))
    a = tree2.add((10, 0), 0)
    tree2.add((-10, 0), 0)
    assert nearest(tree2, (0, 20)) == a


def test_nearest_matches_linear_scan():
    rng = np.random.default_rng(5)
    tree = Tree((0, 0))
    for _ in range(99):
        parent = int(rng.integers(len(tree)))
        tree.add(tuple(rng.uniform(-100, 100, 2)), parent)
    for q in rng.uniform(-120, 120, (500, 2)):
        d = [math.dist(n.position, q) for n in tree.nodes]
        assert nearest(tree, q) == int(np.argmin(d))


def test_angle_admissible_examples():
    tree = Tree((0, 0))
    assert angle_admissible(tree, 0, (-5, -5), 0.01)
    n1 = tree.add((10, 0), 0)
    assert angle_admissible(tree, n1, (20, 0), 0.0 + 1e-12)
    assert not angle_admissible(tree, n1, (0, 0), math.pi - 1e-9)
    assert not angle_admissible(tree, n1, (5, 0), math.pi - 1e-9)
    assert angle_admissible(tree, n1, (5, 0), math.pi)
    assert angle_admissible(tree, n1, (10, 10), math.pi / 2)
    assert not angle_admissible(tree, n1, (10, 10), math.pi / 2 - 1e-9)


def test_planner_config_validation():
    with pytest.raises(ValueError):
        PlannerConfig(step=0)
    with pytest.raises(ValueError):
        PlannerConfig(max_iterations=0)
    with pytest.raises(ValueError):
        PlannerConfig(gamma_max=0.0)
    with pytest.raises(ValueError):
        PlannerConfig(gamma_max=4.0)
    assert PlannerConfig().step == 50 and PlannerConfig().max_iterations == 5000


def test_goal_in_sight_connects_directly(open_ws):
    for seed in range(5):
        res = plan(open_ws, (10, 10), [(40, 30)], PlannerConfig(rng_seed=seed))
        assert res.goals[0].path == [(10, 10), (40, 30)]
        assert res.iterations_used == 0


def test_enclosed_goal_unreached():
    ring = tuple(Circle((50 + 12 * math.cos(a), 50 + 12 * math.sin(a)), 3.0) for a in np.linspace(0, 2 * math.pi, 24, endpoint=False))
    ws = Workspace(Rect(Point2(0, 0), Point2(100, 100)), ring, inflation=0.5)
    res = plan(ws, (5, 5), [(50, 50), (90, 90)], PlannerConfig(step=10, max_iterations=5000, rng_seed=1))
    assert not res.goals[0].reached
    assert res.goals[1].reached
    assert res.iterations_used == 5000
    assert not res.all_reached


def test_precondition_failures(open_ws):
    with pytest.raises(InvalidScenario):
        plan(open_ws, (10, 10), [], PlannerConfig())
    with pytest.raises(InvalidScenario):
        plan(open_ws, (10, 10), [(10, 10)], PlannerConfig())
    with pytest.raises(InvalidScenario):
        plan(open_ws, (-1, 10), [(50, 50)], PlannerConfig())


def _fingerprint(res):
    return (
        res.iterations_used,
        [(n.position, n.parent, n.is_goal) for n in res.tree.nodes],
        [(g.reached, g.node_id, g.iteration, g.path) for g in res.goals],
    )


def test_same_seed_identical(bundled):
    sc = bundled["scenario3"]
    a = plan(sc.workspace(), sc.start, sc.goals, sc.planner_config(9))
    b = plan(sc.workspace(), sc.start, sc.goals, sc.planner_config(9))
    assert _fingerprint(a) == _fingerprint(b)
    c = plan(sc.workspace(), sc.start, sc.goals, sc.planner_config(10))
    assert _fingerprint(a) != _fingerprint(c)


@pytest.mark.parametrize("name", ["scenario1", "scenario4"])
@pytest.mark.parametrize("seed", [0, 1, 2])
def test_tree_and_path_invariants(bundled, name, seed):
    sc = bundled[name]
    ws = sc.workspace()
    cfg = sc.planner_config(seed)
    res = plan(ws, sc.start, sc.goals, cfg)
    nodes = res.tree.nodes
    assert nodes[0].parent is None and nodes[0].incoming_heading is None
    assert sum(n.parent is None for n in nodes) == 1
    for i, n in enumerate(nodes[1:], start=1):
        # parents precede children, so there are no cycles and all nodes reach the root
        assert n.parent is not None and n.parent < i
        assert n.incoming_heading is not None
        assert ws.segment_free(nodes[n.parent].position, n.position)
        if nodes[n.parent].parent is not None:
            gp = nodes[nodes[n.parent].parent].position
            assert turning_angle(gp, nodes[n.parent].position, n.position) <= cfg.gamma_max
    goal_ids = {i for i, n in enumerate(nodes) if n.is_goal}
    assert all(n.parent not in goal_ids for n in nodes)
    assert goal_ids.isdisjoint(set(res.tree.expandable_ids.tolist()))
    for gi, g in enumerate(res.goals):
        assert g.reached
        assert g.path[0] == sc.start and g.path[-1] == sc.goals[gi]
        assert path_violations(ws, g.path, cfg.gamma_max) == []


def test_nearest_never_returns_goal_leaves():
    ws = Workspace(Rect(Point2(0, 0), Point2(100, 100)))
    res = plan(ws, (5, 5), [(90, 90), (10, 90)], PlannerConfig(step=5, rng_seed=2))
    tree = res.tree
    rng = np.random.default_rng(0)
    goal_ids = {g.node_id for g in res.goals}
    for g in res.goals:
        assert nearest(tree, g.goal) not in goal_ids
    for q in rng.uniform(0, 100, (200, 2)):
        assert nearest(tree, q) not in goal_ids


def test_at_most_one_tree_node_per_iteration(bundled):
    sc = bundled["scenario2"]
    res = plan(sc.workspace(), sc.start, sc.goals, sc.planner_config(4))
    n_goal = sum(n.is_goal for n in res.tree.nodes)
    assert len(res.tree) - 1 - n_goal <= res.iterations_used
    assert n_goal == len(sc.goals)
