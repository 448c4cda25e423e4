"""Regenerate the bundled scenario JSON files.

The maps are synthetic: non-overlapping circles and boxes scattered over a
1 km square until a target area coverage is reached. Obstacles keep a
minimum gap between each other and stay clear of the start and goals.

    python scripts/make_scenarios.py
"""

import json
import math
from pathlib import Path

import numpy as np

OUT = Path(__file__).resolve().parents[1] / "src" / "multirrt" / "scenarios"
SIZE = 1000.0
START = (60.0, 60.0)
GOALS3 = [(940.0, 900.0), (920.0, 480.0), (480.0, 930.0)]
GOALS10 = [
    (940.0, 900.0), (920.0, 480.0), (480.0, 930.0), (940.0, 120.0), (120.0, 940.0),
    (700.0, 940.0), (940.0, 700.0), (940.0, 300.0), (300.0, 940.0), (760.0, 760.0),
]
KEEP_OUT = 45.0


def _grid(n):
    g = (np.arange(n) + 0.5) * SIZE / n
    return np.meshgrid(g, g)


def _mark(hit, xx, yy, ob):
    if ob["type"] == "circle":
        (cx, cy), r = ob["center"], ob["radius"]
        hit |= (xx - cx) ** 2 + (yy - cy) ** 2 <= r * r
    else:
        (x0, y0), (x1, y1) = ob["min"], ob["max"]
        hit |= (xx >= x0) & (xx <= x1) & (yy >= y0) & (yy <= y1)


def coverage(obstacles, n=400):
    xx, yy = _grid(n)
    hit = np.zeros_like(xx, dtype=bool)
    for ob in obstacles:
        _mark(hit, xx, yy, ob)
    return float(hit.mean())


def _rect_point(p, lo, hi):
    dx = max(lo[0] - p[0], 0.0, p[0] - hi[0])
    dy = max(lo[1] - p[1], 0.0, p[1] - hi[1])
    return math.hypot(dx, dy)


def gap(a, b):
    """Distance between two obstacle shapes (0 when they overlap)."""
    if a["type"] == "rect" and b["type"] == "circle":
        a, b = b, a
    if a["type"] == "circle" and b["type"] == "circle":
        return max(0.0, math.dist(a["center"], b["center"]) - a["radius"] - b["radius"])
    if a["type"] == "circle":
        return max(0.0, _rect_point(a["center"], b["min"], b["max"]) - a["radius"])
    dx = max(a["min"][0] - b["max"][0], b["min"][0] - a["max"][0], 0.0)
    dy = max(a["min"][1] - b["max"][1], b["min"][1] - a["max"][1], 0.0)
    return math.hypot(dx, dy)


def point_gap(ob, p):
    if ob["type"] == "circle":
        return math.dist(ob["center"], p) - ob["radius"]
    return _rect_point(p, ob["min"], ob["max"])


def generate(target, seed, keep, rmax, wmax, min_gap):
    rng = np.random.default_rng(seed)
    obstacles = []
    xx, yy = _grid(200)
    hit = np.zeros_like(xx, dtype=bool)
    tries = 0
    while hit.mean() < target and tries < 50000:
        tries += 1
        if rng.random() < 0.5:
            r = float(np.round(rng.uniform(20, rmax), 1))
            c = [float(np.round(v, 1)) for v in rng.uniform(80, SIZE - 80, 2)]
            ob = {"type": "circle", "center": c, "radius": r}
        else:
            w, h = (float(np.round(v, 1)) for v in rng.uniform(30, wmax, 2))
            x0, y0 = (float(np.round(v, 1)) for v in rng.uniform(60, SIZE - 60 - wmax, 2))
            ob = {"type": "rect", "min": [x0, y0], "max": [round(x0 + w, 1), round(y0 + h, 1)]}
        if any(point_gap(ob, p) < KEEP_OUT for p in keep):
            continue
        if any(gap(ob, other) < min_gap for other in obstacles):
            continue
        obstacles.append(ob)
        _mark(hit, xx, yy, ob)
    return obstacles


def scenario(name, description, goals, obstacles, seed):
    return {
        "version": 1,
        "name": name,
        "description": description,
        "bounds": {"min": [0.0, 0.0], "max": [SIZE, SIZE]},
        "start": list(START),
        "goals": [list(g) for g in goals],
        "obstacles": obstacles,
        "planner": {"step": 50.0, "max_iterations": 5000, "gamma_max_deg": 75.0, "seed": seed},
        "smoothing": {"samples_per_curve": 20},
        "mission": {"altitude_base": 5.0, "altitude_step": 5.0},
    }


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    keep = [START, *GOALS10]
    specs = [
        ("scenario1", 0.10, 11, 55, 110, 25.0),
        ("scenario2", 0.16, 12, 60, 120, 25.0),
        ("scenario3", 0.22, 13, 75, 150, 22.0),
        ("scenario4", 0.30, 14, 100, 220, 18.0),
    ]
    for name, target, seed, rmax, wmax, min_gap in specs:
        obs = generate(target, seed, keep, rmax, wmax, min_gap)
        cov = coverage(obs)
        desc = f"synthetic map, {len(obs)} obstacles, area coverage {cov:.3f}"
        doc = scenario(name, desc, GOALS3, obs, 42)
        (OUT / f"{name}.json").write_text(json.dumps(doc, indent=2) + "\n")
        print(name, desc)
        if name == "scenario2":
            doc = scenario("scalability", desc + ", 10 goals", GOALS10, obs, 42)
            (OUT / "scalability.json").write_text(json.dumps(doc, indent=2) + "\n")


if __name__ == "__main__":
    main()
