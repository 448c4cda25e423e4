import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from multirrt.environment import Box, Circle, Workspace, clearance, sample_uniform, segment_free
from multirrt.errors import PointInCollision
from multirrt.geometry import Point2, Rect, Segment

HUGE = Rect(Point2(-1e4, -1e4), Point2(1e4, 1e4))

# numpy PCG64 seeded with 42, bounds [0, 1000]^2; frozen regression value.
GOLDEN_FIRST_SAMPLE = (773.9560485559633, 438.8784397520523)


def test_segment_free_examples(open_ws):
    assert segment_free(open_ws, Segment(Point2(10, 10), Point2(90, 80)))
    ws = Workspace(Rect(Point2(0, 0), Point2(100, 100)), (Circle((50, 50), 5),), inflation=1.0)
    assert not segment_free(ws, Segment(Point2(10, 50), Point2(90, 50)))
    # Tangent to the inflated circle (radius 6) counts as collision.
    assert not segment_free(ws, Segment(Point2(10, 56), Point2(90, 56)))
    assert segment_free(ws, Segment(Point2(10, 56.001), Point2(90, 56.001)))


def test_segment_free_respects_bounds_shrunk_by_inflation():
    ws = Workspace(Rect(Point2(0, 0), Point2(100, 100)), inflation=2.0)
    assert not segment_free(ws, Segment(Point2(1, 50), Point2(50, 50)))
    assert not segment_free(ws, Segment(Point2(2, 50), Point2(50, 50)))
    assert segment_free(ws, Segment(Point2(2.5, 50), Point2(50, 50)))


def test_segment_free_rect_obstacle():
    ws = Workspace(Rect(Point2(0, 0), Point2(20, 20)), (Box((8, 8), (12, 12)),), inflation=1.0)
    assert not segment_free(ws, Segment(Point2(2, 10), Point2(18, 10)))
    assert not segment_free(ws, Segment(Point2(2, 13), Point2(18, 13)))
    assert segment_free(ws, Segment(Point2(2, 13.01), Point2(18, 13.01)))
    # Corner of the inflated rectangle is rounded: distance from (13, 13) to the box is sqrt(2) > 1.
    assert segment_free(ws, Segment(Point2(11.5, 14.5), Point2(14.5, 11.5)))


def test_clearance_examples():
    ws = Workspace(HUGE, (Circle((10, 0), 3),), inflation=1.0)
    assert clearance(ws, (0, 0)) == pytest.approx(6.0)
    ws = Workspace(Rect(Point2(0, 0), Point2(100, 100)))
    assert clearance(ws, (50, 50)) == pytest.approx(50.0)
    ws = Workspace(HUGE, (Circle((10, 0), 3),), inflation=1.0)
    with pytest.raises(PointInCollision):
        clearance(ws, (7, 0))
    with pytest.raises(PointInCollision):
        clearance(ws, (6, 0))


def test_clearance_rect_and_boundary(mixed_ws):
    # Nearest to the box (110..150, 30..90) at (100, 60): 10 minus inflation.
    assert clearance(mixed_ws, (100, 60)) == pytest.approx(9.0)
    # Boundary measured to the shrunk bounds.
    assert clearance(mixed_ws, (5, 190)) == pytest.approx(4.0)


def test_workspace_rejects_degenerate_bounds():
    with pytest.raises(ValueError):
        Workspace(Rect(Point2(0, 0), Point2(0, 10)))
    with pytest.raises(ValueError):
        Circle((0, 0), 0.0)
    with pytest.raises(ValueError):
        Box((1, 1), (1, 5))


def test_sample_uniform_golden_and_reproducible():
    ws = Workspace(Rect(Point2(0, 0), Point2(1000, 1000)))
    first = sample_uniform(ws, np.random.default_rng(42))
    assert first == GOLDEN_FIRST_SAMPLE
    assert sample_uniform(ws, np.random.default_rng(42)) == first


def test_sample_uniform_statistics():
    ws = Workspace(Rect(Point2(-20, 100), Point2(180, 300)))
    rng = np.random.default_rng(3)
    pts = np.array([sample_uniform(ws, rng) for _ in range(100_000)])
    assert ((pts[:, 0] >= -20) & (pts[:, 0] <= 180) & (pts[:, 1] >= 100) & (pts[:, 1] <= 300)).all()
    center = np.array([80.0, 200.0])
    # Within 1% of the bounds extent.
    assert np.all(np.abs(pts.mean(axis=0) - center) <= 0.01 * 200)


coord = st.floats(0.5, 199.5)
SYM_WS = Workspace(
    Rect(Point2(0, 0), Point2(200, 200)),
    (Circle((60, 60), 15), Box((110, 30), (150, 90)), Circle((120, 150), 20)),
    inflation=1.0,
)


@settings(max_examples=200, deadline=None)
@given(st.tuples(coord, coord), st.tuples(coord, coord))
def test_segment_free_symmetric(a, b):
    if math.dist(a, b) < 1e-6:
        return
    assert SYM_WS.segment_free(a, b) == SYM_WS.segment_free(b, a)


def test_clearance_disk_implies_free_segments(mixed_ws):
    rng = np.random.default_rng(11)
    checked = 0
    while checked < 40:
        p = rng.uniform(0, 200, 2)
        if not mixed_ws.point_free(p):
            continue
        r = clearance(mixed_ws, p)
        checked += 1
        for _ in range(1000):
            # Two random points strictly inside the open disk.
            ang = rng.uniform(0, 2 * math.pi, 2)
            rad = r * np.sqrt(rng.uniform(0, 1, 2)) * 0.999999
            a = p + rad[0] * np.array([math.cos(ang[0]), math.sin(ang[0])])
            b = p + rad[1] * np.array([math.cos(ang[1]), math.sin(ang[1])])
            if math.dist(a, b) < 1e-9:
                continue
            assert mixed_ws.segment_free(a, b)
