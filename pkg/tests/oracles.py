"""Independent brute-force oracles used by the test-suite.

These deliberately avoid the package's own geometry kernels.
"""

import itertools
import math

import numpy as np


def sampled_segment_distance(a, b, center, n=10_000):
    t = np.linspace(0.0, 1.0, n)
    xs = a[0] + t * (b[0] - a[0])
    ys = a[1] + t * (b[1] - a[1])
    return float(np.min(np.hypot(xs - center[0], ys - center[1])))


def sampled_segment_rect_distance(a, b, lo, hi, n=10_000):
    t = np.linspace(0.0, 1.0, n)
    xs = a[0] + t * (b[0] - a[0])
    ys = a[1] + t * (b[1] - a[1])
    dx = np.maximum(np.maximum(lo[0] - xs, 0.0), xs - hi[0])
    dy = np.maximum(np.maximum(lo[1] - ys, 0.0), ys - hi[1])
    return float(np.min(np.hypot(dx, dy)))


def angle_between(u, v):
    """Heading change as the wrapped difference of the two absolute headings."""
    d = math.atan2(v[1], v[0]) - math.atan2(u[1], u[0])
    return abs((d + math.pi) % (2 * math.pi) - math.pi)


def length(pts):
    return sum(math.dist(pts[i], pts[i + 1]) for i in range(len(pts) - 1))


def brute_force_reduction(ws, pts, gamma_max):
    """Minimum length over all admissible order-preserving subsequences keeping both ends."""
    n = len(pts)
    best = None
    for r in range(n - 1):
        for sub in itertools.combinations(range(1, n - 1), r):
            q = [pts[i] for i in (0, *sub, n - 1)]
            if not all(ws.segment_free(q[i], q[i + 1]) for i in range(len(q) - 1)):
                continue
            turns = [
                angle_between((q[i][0] - q[i - 1][0], q[i][1] - q[i - 1][1]), (q[i + 1][0] - q[i][0], q[i + 1][1] - q[i][1]))
                for i in range(1, len(q) - 1)
            ]
            if any(t > gamma_max for t in turns):
                continue
            L = length(q)
            if best is None or L < best:
                best = L
    return best


def dynamics_by_trig(m, g, v, ct, cf, omega_max):
    """Turning radius at full thrust through the explicit pitch and roll angles."""
    f_max = 4 * ct * omega_max ** 2
    pitch = math.atan(cf * v / (m * g))
    roll = math.acos(m * g / (f_max * math.cos(pitch)))
    radius = m * v * v / (f_max * math.sin(roll))
    return f_max, pitch, radius
