"""Workspace model: bounds, inflated obstacles, collision and clearance queries."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import PointInCollision
from .geometry import (
    Point2,
    Rect,
    Segment,
    as_point,
    point_rect_signed_distance,
    point_segment_distance,
    segment_rect_distance,
)


@dataclass(frozen=True)
class Circle:
    center: Point2
    radius: float

    def __post_init__(self):
        object.__setattr__(self, "center", as_point(self.center))
        if not self.radius > 0:
            raise ValueError(f"circle radius must be > 0, got {self.radius}")


@dataclass(frozen=True)
class Box:
    """Axis-aligned rectangular obstacle."""

    lo: Point2
    hi: Point2

    def __post_init__(self):
        object.__setattr__(self, "lo", as_point(self.lo))
        object.__setattr__(self, "hi", as_point(self.hi))
        if not (self.lo.x < self.hi.x and self.lo.y < self.hi.y):
            raise ValueError(f"box corners must satisfy lo < hi per axis: {self.lo}, {self.hi}")

    @property
    def rect(self) -> Rect:
        return Rect(self.lo, self.hi)


Obstacle = Circle | Box


@dataclass(frozen=True)
class Workspace:
    """Immutable planning domain.

    Obstacles are grown by ``inflation`` (the UAV radius) and the bounds are
    shrunk by the same amount, so the vehicle can be treated as a point.
    """

    bounds: Rect
    obstacles: tuple = ()
    inflation: float = 0.0
    _circles: tuple = field(init=False, repr=False, compare=False)
    _boxes: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        b = self.bounds
        if not isinstance(b, Rect):
            b = Rect(as_point(b[0]), as_point(b[1]))
            object.__setattr__(self, "bounds", b)
        if not (b.lo.x < b.hi.x and b.lo.y < b.hi.y):
            raise ValueError("workspace bounds have zero area")
        if not self.inflation >= 0:
            raise ValueError("inflation must be >= 0")
        if 2 * self.inflation >= min(b.hi.x - b.lo.x, b.hi.y - b.lo.y):
            raise ValueError("inflation leaves no free space inside the bounds")
        object.__setattr__(self, "obstacles", tuple(self.obstacles))
        infl = self.inflation
        # Flattened tuples for the hot collision loop:
        # circles as (cx, cy, r + infl), boxes as (x0, y0, x1, y1) plus inflated bbox.
        circles, boxes = [], []
        for ob in self.obstacles:
            if isinstance(ob, Circle):
                circles.append((ob.center.x, ob.center.y, ob.radius + infl))
            elif isinstance(ob, Box):
                boxes.append((ob.lo, ob.hi))
            else:
                raise TypeError(f"unsupported obstacle {ob!r}")
        object.__setattr__(self, "_circles", tuple(circles))
        object.__setattr__(self, "_boxes", tuple(boxes))

    @property
    def free_lo(self) -> Point2:
        return Point2(self.bounds.lo.x + self.inflation, self.bounds.lo.y + self.inflation)

    @property
    def free_hi(self) -> Point2:
        return Point2(self.bounds.hi.x - self.inflation, self.bounds.hi.y - self.inflation)

    def _inside_free_bounds(self, p) -> bool:
        lo, hi = self.free_lo, self.free_hi
        return lo.x < p[0] < hi.x and lo.y < p[1] < hi.y

    def segment_free(self, a, b) -> bool:
        """Fast path of `segment_free` on raw endpoints."""
        if not (self._inside_free_bounds(a) and self._inside_free_bounds(b)):
            return False
        ax, ay, bx, by = a[0], a[1], b[0], b[1]
        xmin, xmax = (ax, bx) if ax < bx else (bx, ax)
        ymin, ymax = (ay, by) if ay < by else (by, ay)
        for cx, cy, r in self._circles:
            if cx + r < xmin or cx - r > xmax or cy + r < ymin or cy - r > ymax:
                continue
            if point_segment_distance((cx, cy), a, b) <= r:
                return False
        infl = self.inflation
        for lo, hi in self._boxes:
            if lo[0] - infl > xmax or hi[0] + infl < xmin or lo[1] - infl > ymax or hi[1] + infl < ymin:
                continue
            if segment_rect_distance(a, b, lo, hi) <= infl:
                return False
        return True

    def signed_clearance(self, p) -> float:
        """Distance to the nearest inflated obstacle or shrunk boundary; <= 0 when in collision."""
        lo, hi = self.free_lo, self.free_hi
        best = min(p[0] - lo.x, hi.x - p[0], p[1] - lo.y, hi.y - p[1])
        for cx, cy, r in self._circles:
            d = math.hypot(p[0] - cx, p[1] - cy) - r
            if d < best:
                best = d
        for blo, bhi in self._boxes:
            d = point_rect_signed_distance(p, blo, bhi) - self.inflation
            if d < best:
                best = d
        return best

    def point_free(self, p) -> bool:
        return self.signed_clearance(p) > 0.0


def segment_free(ws: Workspace, s: Segment) -> bool:
    return ws.segment_free(s.a, s.b)


def clearance(ws: Workspace, p) -> float:
    """Safe-zone radius at ``p``: distance to the nearest inflated obstacle or bound edge."""
    c = ws.signed_clearance(p)
    if c <= 0.0:
        raise PointInCollision(f"point ({p[0]}, {p[1]}) is not in free space (clearance {c:.6g})")
    return c


def sample_uniform(ws: Workspace, rng) -> Point2:
    """Uniform point over the bounds rectangle; ``rng`` is a numpy Generator."""
    u, v = rng.random(2)
    lo, hi = ws.bounds.lo, ws.bounds.hi
    return Point2(lo.x + float(u) * (hi.x - lo.x), lo.y + float(v) * (hi.y - lo.y))
