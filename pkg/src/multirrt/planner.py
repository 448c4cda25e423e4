"""Multi-goal RRT with a turning-angle gate.

A single tree is grown from the shared start. Every time a node is added,
each still-unreached goal is tried as a direct leaf of that node; the goal
is attached if the edge is collision-free and the heading change at the new
node stays within the angle bound. Expansion ends when every goal hangs off
the tree or the iteration budget is spent.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .environment import Workspace, sample_uniform
from .errors import DegenerateSegment, InvalidScenario
from .geometry import EPS_GEOM, Point2, as_point, distance, turning_angle


@dataclass
class TreeNode:
    position: Point2
    parent: Optional[int] = None
    incoming_heading: Optional[tuple[float, float]] = None
    is_goal: bool = False


class Tree:
    """Node store with parent links.

    Goal leaves live in the node list but not in the nearest-neighbour index,
    so they are never expanded.
    """

    def __init__(self, root):
        self.nodes: list[TreeNode] = [TreeNode(as_point(root))]
        self._ids = np.zeros(64, dtype=np.int64)
        self._xy = np.zeros((64, 2))
        self._xy[0] = self.nodes[0].position
        self._n = 1

    def __len__(self):
        return len(self.nodes)

    @property
    def expandable_ids(self) -> np.ndarray:
        return self._ids[: self._n]

    def add(self, position, parent: int, is_goal: bool = False) -> int:
        position = as_point(position)
        ppos = self.nodes[parent].position
        d = distance(ppos, position)
        if d < EPS_GEOM:
            raise DegenerateSegment("child coincides with parent")
        heading = ((position.x - ppos.x) / d, (position.y - ppos.y) / d)
        nid = len(self.nodes)
        self.nodes.append(TreeNode(position, parent, heading, is_goal))
        if not is_goal:
            if self._n == len(self._ids):
                self._ids = np.concatenate([self._ids, np.zeros_like(self._ids)])
                self._xy = np.concatenate([self._xy, np.zeros_like(self._xy)])
            self._ids[self._n] = nid
            self._xy[self._n] = position
            self._n += 1
        return nid

    def path_to(self, nid: int) -> list[Point2]:
        out = []
        cur: Optional[int] = nid
        while cur is not None:
            out.append(self.nodes[cur].position)
            cur = self.nodes[cur].parent
        out.reverse()
        return out

    def edges(self):
        for i, n in enumerate(self.nodes):
            if n.parent is not None:
                yield n.parent, i


@dataclass(frozen=True)
class PlannerConfig:
    step: float = 50.0
    max_iterations: int = 5000
    gamma_max: float = math.radians(75.0)
    rng_seed: int = 0

    def __post_init__(self):
        if not self.step > 0:
            raise ValueError("step must be > 0")
        if not self.max_iterations > 0:
            raise ValueError("max_iterations must be > 0")
        if not 0 < self.gamma_max <= math.pi:
            raise ValueError("gamma_max must lie in (0, pi]")


@dataclass
class GoalOutcome:
    goal: Point2
    reached: bool = False
    node_id: Optional[int] = None
    path: Optional[list[Point2]] = None
    iteration: Optional[int] = None


@dataclass
class PlanResult:
    goals: list[GoalOutcome]
    iterations_used: int
    wall_time: float
    tree: Tree = field(repr=False)

    @property
    def all_reached(self) -> bool:
        return all(g.reached for g in self.goals)


def steer(near, rand, step: float) -> Point2:
    d = distance(near, rand)
    if d < EPS_GEOM:
        raise DegenerateSegment("cannot steer toward the node itself")
    if d <= step:
        return Point2(float(rand[0]), float(rand[1]))
    s = step / d
    return Point2(near[0] + s * (rand[0] - near[0]), near[1] + s * (rand[1] - near[1]))


def nearest(tree: Tree, p) -> int:
    """Closest expandable node; ties go to the earliest inserted."""
    n = tree._n
    xy = tree._xy[:n]
    d2 = (xy[:, 0] - p[0]) ** 2 + (xy[:, 1] - p[1]) ** 2
    return int(tree._ids[int(np.argmin(d2))])


def angle_admissible(tree: Tree, at: int, nxt, gamma_max: float) -> bool:
    node = tree.nodes[at]
    if distance(node.position, nxt) < EPS_GEOM:
        raise DegenerateSegment("next point coincides with the attachment node")
    if node.parent is None:
        return True
    parent = tree.nodes[node.parent].position
    return turning_angle(parent, node.position, nxt) <= gamma_max


def validate_endpoints(ws: Workspace, start, goals) -> None:
    if not goals:
        raise InvalidScenario("at least one goal is required")
    if not ws.point_free(start):
        raise InvalidScenario(f"start {tuple(start)} is outside the free space")
    for i, g in enumerate(goals):
        if not ws.point_free(g):
            raise InvalidScenario(f"goal {i} {tuple(g)} is outside the free space")
        if distance(g, start) < EPS_GEOM:
            raise InvalidScenario(f"goal {i} coincides with the start")
        for j in range(i):
            if distance(g, goals[j]) < EPS_GEOM:
                raise InvalidScenario(f"goals {j} and {i} coincide")


def plan(ws: Workspace, start, goals, cfg: PlannerConfig) -> PlanResult:
    start = as_point(start)
    goals = [as_point(g) for g in goals]
    validate_endpoints(ws, start, goals)

    t0 = time.perf_counter()
    rng = np.random.default_rng(cfg.rng_seed)
    tree = Tree(start)
    outcomes = [GoalOutcome(g) for g in goals]
    remaining = list(range(len(goals)))

    def connect_goals(nid: int, iteration: int) -> None:
        pos = tree.nodes[nid].position
        for gi in list(remaining):
            g = goals[gi]
            if distance(pos, g) < EPS_GEOM:
                continue
            if angle_admissible(tree, nid, g, cfg.gamma_max) and ws.segment_free(pos, g):
                leaf = tree.add(g, nid, is_goal=True)
                out = outcomes[gi]
                out.reached, out.node_id, out.iteration = True, leaf, iteration
                out.path = tree.path_to(leaf)
                remaining.remove(gi)

    # The root counts as the first inserted node, so goals in plain sight
    # of the start connect before any sampling.
    connect_goals(0, 0)

    it = 0
    while remaining and it < cfg.max_iterations:
        it += 1
        p_rand = sample_uniform(ws, rng)
        near = nearest(tree, p_rand)
        near_pos = tree.nodes[near].position
        if distance(near_pos, p_rand) < EPS_GEOM:
            continue
        p_new = steer(near_pos, p_rand, cfg.step)
        if not angle_admissible(tree, near, p_new, cfg.gamma_max):
            continue
        if not ws.segment_free(near_pos, p_new):
            continue
        nid = tree.add(p_new, near)
        connect_goals(nid, it)

    return PlanResult(outcomes, it, time.perf_counter() - t0, tree)
