"""Path post-processing: shortcut-based node reduction and corner smoothing.

Smoothing replaces each interior corner P_k by a quadratic Bezier arc whose
control polygon is (M_in, P_k, M_out). M_in and M_out sit on the two incident
segments at distance t_k <= R_k from the corner, where R_k is the corner's
clearance. Two properties follow and are checked by the test-suite:

* the arc never leaves the disk of radius R_k around P_k, so it is
  collision-free whenever the corner's clearance is positive;
* the arc's tangent sweeps monotonically from the incoming to the outgoing
  heading, so any chord polygon sampled on it turns by less than the
  corner angle at each vertex.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .environment import Workspace, clearance
from .errors import NoProgress, OutOfRange
from .geometry import EPS_GEOM, Point2, as_point, distance, polyline_length, turning_angle

DEGENERATE_CORNER = 1e-6
DEFAULT_SAMPLES_PER_CURVE = 20


def path_violations(ws: Workspace, path, gamma_max: float) -> list[str]:
    """List every broken path invariant (empty list means valid)."""
    problems = []
    if len(path) < 2:
        return ["path has fewer than two waypoints"]
    for i in range(len(path) - 1):
        if distance(path[i], path[i + 1]) < EPS_GEOM:
            problems.append(f"waypoints {i} and {i + 1} coincide")
        elif not ws.segment_free(path[i], path[i + 1]):
            problems.append(f"segment {i}-{i + 1} collides")
    for i in range(1, len(path) - 1):
        try:
            ang = turning_angle(path[i - 1], path[i], path[i + 1])
        except ValueError:
            continue
        if ang > gamma_max:
            problems.append(f"turn at waypoint {i} is {math.degrees(ang):.3f} deg")
    return problems


def reduce_nodes(ws: Workspace, path, gamma_max: float, method: str = "exact") -> list[Point2]:
    """Shortcut ``path`` to an order-preserving subsequence of its waypoints.

    Every shortcut replaces a sub-polyline by a straight segment, so by the
    triangle inequality the result is never longer than the input. Kept
    segments must be collision-free and every kept interior waypoint must
    respect the turn limit.

    ``method="exact"`` (default) returns the shortest such subsequence.
    ``method="greedy"`` repeatedly jumps from the current tail to the
    farthest admissible waypoint, backing off to nearer candidates only when
    a jump leaves no admissible continuation; it is cheaper but can miss the
    optimum.
    """
    pts = [as_point(p) for p in path]
    if len(pts) <= 2:
        return pts
    if method == "exact":
        idx = _shortest_admissible(ws, pts, gamma_max)
    elif method == "greedy":
        idx = _greedy_admissible(ws, pts, gamma_max)
    else:
        raise ValueError(f"unknown reduction method {method!r}")
    if idx is None:
        raise NoProgress("no admissible shortcut sequence reaches the goal; input path is invalid")
    return [pts[i] for i in idx]


def _shortest_admissible(ws: Workspace, pts: list[Point2], gamma_max: float) -> list[int] | None:
    # Dynamic programme over states (i, j) = "the last two kept waypoints".
    # The turn at j depends on i, hence the pairwise state. Indices only
    # increase, so states can be settled in order of j.
    n = len(pts)
    last = n - 1
    free_cache: dict[tuple[int, int], bool] = {}

    def free(a: int, b: int) -> bool:
        key = (a, b)
        if key not in free_cache:
            free_cache[key] = ws.segment_free(pts[a], pts[b])
        return free_cache[key]

    # cost[(i, j)] = shortest admissible length from 0 to j arriving from i;
    # i == -1 marks the start node itself (no incoming heading).
    cost: dict[tuple[int, int], float] = {(-1, 0): 0.0}
    back: dict[tuple[int, int], tuple[int, int] | None] = {(-1, 0): None}
    incoming: dict[int, list[int]] = {0: [-1]}
    for j in range(n - 1):
        preds = incoming.get(j)
        if not preds:
            continue
        for k in range(j + 1, n):
            if distance(pts[j], pts[k]) < EPS_GEOM or not free(j, k):
                continue
            step = distance(pts[j], pts[k])
            best, arg = math.inf, None
            for i in preds:
                if i >= 0 and turning_angle(pts[i], pts[j], pts[k]) > gamma_max:
                    continue
                c = cost[(i, j)] + step
                if c < best:
                    best, arg = c, i
            if arg is None:
                continue
            cost[(j, k)] = best
            back[(j, k)] = (arg, j)
            incoming.setdefault(k, []).append(j)
    finals = [(cost[(i, last)], i) for i in incoming.get(last, [])]
    if not finals:
        return None
    _, i = min(finals)
    state: tuple[int, int] | None = (i, last)
    idx = []
    while state is not None:
        idx.append(state[1])
        state = back[state]
    idx.reverse()
    return idx


def _greedy_admissible(ws: Workspace, pts: list[Point2], gamma_max: float) -> list[int] | None:
    last = len(pts) - 1
    dead: set[tuple[int, int]] = set()

    def extend(prev: int, cur: int) -> list[int] | None:
        if cur == last:
            return [cur]
        if (prev, cur) in dead:
            return None
        for j in range(last, cur, -1):
            if prev >= 0 and turning_angle(pts[prev], pts[cur], pts[j]) > gamma_max:
                continue
            if not ws.segment_free(pts[cur], pts[j]):
                continue
            rest = extend(cur, j)
            if rest is not None:
                return [cur] + rest
        dead.add((prev, cur))
        return None

    return extend(-1, 0)


@dataclass(frozen=True)
class CornerCurve:
    corner: Point2
    entry: Point2
    exit: Point2
    safe_radius: float
    clip: float

    @property
    def apex(self) -> Point2:
        return self.corner

    @property
    def angle(self) -> float:
        return turning_angle(self.entry, self.corner, self.exit)


def _toward(src: Point2, dst: Point2, dist: float) -> Point2:
    d = distance(src, dst)
    s = dist / d
    return Point2(src.x + s * (dst.x - src.x), src.y + s * (dst.y - src.y))


def build_corner(ws: Workspace, prev, corner, nxt) -> CornerCurve:
    prev, corner, nxt = as_point(prev), as_point(corner), as_point(nxt)
    r = clearance(ws, corner)
    t = min(r, 0.5 * distance(prev, corner), 0.5 * distance(corner, nxt))
    return CornerCurve(corner, _toward(corner, prev, t), _toward(corner, nxt, t), r, t)


def bezier_eval(curve: CornerCurve, tau: float) -> Point2:
    if not 0.0 <= tau <= 1.0:
        raise OutOfRange(f"tau={tau} outside [0, 1]")
    u = 1.0 - tau
    a, b, c = u * u, 2.0 * u * tau, tau * tau
    p0, p1, p2 = curve.entry, curve.corner, curve.exit
    return Point2(a * p0.x + b * p1.x + c * p2.x, a * p0.y + b * p1.y + c * p2.y)


def bezier_tangent(curve: CornerCurve, tau: float) -> tuple[float, float]:
    u = 1.0 - tau
    p0, p1, p2 = curve.entry, curve.corner, curve.exit
    return (
        2.0 * (u * (p1.x - p0.x) + tau * (p2.x - p1.x)),
        2.0 * (u * (p1.y - p0.y) + tau * (p2.y - p1.y)),
    )


@dataclass
class SmoothedPath:
    source: list[Point2]
    curves: list[CornerCurve] = field(default_factory=list)
    samples: list[Point2] = field(default_factory=list)
    arc_length: float = 0.0


def smooth(ws: Workspace, path, samples_per_curve: int = DEFAULT_SAMPLES_PER_CURVE) -> SmoothedPath:
    """Fit a Bezier arc at every interior corner and discretise the result.

    Nearly straight corners (under ``DEGENERATE_CORNER`` rad) are kept as
    plain waypoints. Consecutive curves are joined by the straight piece of
    the original segment between them, which may have zero length.
    """
    if samples_per_curve < 2:
        raise ValueError("samples_per_curve must be >= 2")
    pts = [as_point(p) for p in path]
    out = SmoothedPath(source=pts)
    samples = [pts[0]]

    def push(p: Point2) -> None:
        if distance(samples[-1], p) >= EPS_GEOM:
            samples.append(p)

    for k in range(1, len(pts) - 1):
        if turning_angle(pts[k - 1], pts[k], pts[k + 1]) < DEGENERATE_CORNER:
            push(pts[k])
            continue
        curve = build_corner(ws, pts[k - 1], pts[k], pts[k + 1])
        out.curves.append(curve)
        for i in range(samples_per_curve):
            push(bezier_eval(curve, i / (samples_per_curve - 1)))
    if distance(samples[-1], pts[-1]) < EPS_GEOM and len(samples) > 1:
        samples[-1] = pts[-1]
    else:
        samples.append(pts[-1])
    out.samples = samples
    out.arc_length = polyline_length(samples)
    return out
