"""Planar primitives: points, segments, turning angles and exact hit tests.

All predicates treat obstacles as closed sets, so touching counts as a hit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

from .errors import DegenerateSegment

EPS_GEOM = 1e-9


class Point2(NamedTuple):
    x: float
    y: float


def as_point(p) -> Point2:
    x, y = float(p[0]), float(p[1])
    if not (math.isfinite(x) and math.isfinite(y)):
        raise ValueError(f"non-finite point ({x}, {y})")
    return Point2(x, y)


@dataclass(frozen=True)
class Segment:
    a: Point2
    b: Point2

    def __post_init__(self):
        if distance(self.a, self.b) < EPS_GEOM:
            raise DegenerateSegment(f"segment endpoints coincide: {self.a}")

    @property
    def length(self) -> float:
        return distance(self.a, self.b)


@dataclass(frozen=True)
class Rect:
    """Axis-aligned rectangle given by its lower-left and upper-right corners."""

    lo: Point2
    hi: Point2

    def __post_init__(self):
        if self.lo[0] > self.hi[0] or self.lo[1] > self.hi[1]:
            raise ValueError(f"malformed rectangle {self.lo} .. {self.hi}")

    @property
    def corners(self) -> tuple[Point2, Point2, Point2, Point2]:
        (x0, y0), (x1, y1) = self.lo, self.hi
        return Point2(x0, y0), Point2(x1, y0), Point2(x1, y1), Point2(x0, y1)


def distance(a, b) -> float:
    return math.hypot(b[0] - a[0], b[1] - a[1])


def turning_angle(prev, mid, nxt) -> float:
    """Angle in [0, pi] between the headings prev->mid and mid->nxt."""
    ux, uy = mid[0] - prev[0], mid[1] - prev[1]
    vx, vy = nxt[0] - mid[0], nxt[1] - mid[1]
    nu = math.hypot(ux, uy)
    nv = math.hypot(vx, vy)
    if nu < EPS_GEOM or nv < EPS_GEOM:
        raise DegenerateSegment("turning angle needs two non-degenerate segments")
    # atan2 stays accurate near 0 and pi, where acos of the cosine does not.
    return math.atan2(abs(ux * vy - uy * vx), ux * vx + uy * vy)


def point_segment_distance(p, a, b) -> float:
    ax, ay = a[0], a[1]
    dx, dy = b[0] - ax, b[1] - ay
    px, py = p[0] - ax, p[1] - ay
    dd = dx * dx + dy * dy
    if dd == 0.0:
        return math.hypot(px, py)
    t = (px * dx + py * dy) / dd
    if t <= 0.0:
        return math.hypot(px, py)
    if t >= 1.0:
        return math.hypot(p[0] - b[0], p[1] - b[1])
    return math.hypot(px - t * dx, py - t * dy)


def point_rect_distance(p, lo, hi) -> float:
    """Distance from p to the rectangle; zero inside or on the boundary."""
    dx = max(lo[0] - p[0], 0.0, p[0] - hi[0])
    dy = max(lo[1] - p[1], 0.0, p[1] - hi[1])
    return math.hypot(dx, dy)


def point_rect_signed_distance(p, lo, hi) -> float:
    """Like point_rect_distance but negative (penetration depth) inside."""
    dx = max(lo[0] - p[0], p[0] - hi[0])
    dy = max(lo[1] - p[1], p[1] - hi[1])
    if dx <= 0.0 and dy <= 0.0:
        return max(dx, dy)
    return math.hypot(max(dx, 0.0), max(dy, 0.0))


def segment_crosses_rect(a, b, lo, hi) -> bool:
    """Liang-Barsky clip: does segment ab share at least one point with the rectangle?"""
    t0, t1 = 0.0, 1.0
    dx, dy = b[0] - a[0], b[1] - a[1]
    for p, q in (
        (-dx, a[0] - lo[0]),
        (dx, hi[0] - a[0]),
        (-dy, a[1] - lo[1]),
        (dy, hi[1] - a[1]),
    ):
        if p == 0.0:
            if q < 0.0:
                return False
            continue
        r = q / p
        if p < 0.0:
            if r > t1:
                return False
            if r > t0:
                t0 = r
        else:
            if r < t0:
                return False
            if r < t1:
                t1 = r
    return True


def segment_rect_distance(a, b, lo, hi) -> float:
    if segment_crosses_rect(a, b, lo, hi):
        return 0.0
    # Disjoint convex sets: the minimum is attained at a vertex of one of them.
    best = min(point_rect_distance(a, lo, hi), point_rect_distance(b, lo, hi))
    for c in ((lo[0], lo[1]), (hi[0], lo[1]), (hi[0], hi[1]), (lo[0], hi[1])):
        best = min(best, point_segment_distance(c, a, b))
    return best


def segment_circle_hit(s: Segment, center, radius: float) -> bool:
    if radius < 0:
        raise ValueError("radius must be non-negative")
    return point_segment_distance(center, s.a, s.b) <= radius


def segment_rect_hit(s: Segment, rect: Rect, inflation: float = 0.0) -> bool:
    """True when the segment comes within ``inflation`` of the rectangle.

    This is an exact rounded-rectangle test; no sampling is involved.
    """
    if inflation < 0:
        raise ValueError("inflation must be non-negative")
    return segment_rect_distance(s.a, s.b, rect.lo, rect.hi) <= inflation


def polyline_length(points) -> float:
    return sum(distance(points[i], points[i + 1]) for i in range(len(points) - 1))
