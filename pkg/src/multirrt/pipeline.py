"""End-to-end run: plan, reduce, smooth, assign speeds/altitudes, and the result file.

Result files are plain JSON. Everything in them except the optional
``timing`` block is a deterministic function of the scenario and seed, so
two runs with the same inputs produce byte-identical files unless timing
capture is switched on.
"""

from __future__ import annotations

import json
import math
import time
from dataclasses import dataclass, field
from pathlib import Path

from .dynamics import derivation_report
from .errors import InsufficientThrust, InvalidResult, MetricsMismatch
from .geometry import polyline_length
from .mission import MissionPlan, assign_velocities, build_mission, path_length_metric, smooth_score_metric
from .planner import PlanResult, plan
from .refine import SmoothedPath, reduce_nodes, smooth
from .scenario import Scenario, parse_scenario, scenario_to_dict

RESULT_FORMAT = "multirrt-result"
RESULT_VERSION = 1
REPRESENTATIONS = ("raw", "reduced", "smoothed")


@dataclass
class PipelineRun:
    scenario: Scenario
    seed: int
    plan: PlanResult
    reduced: dict[int, list] = field(default_factory=dict)
    smoothed: dict[int, SmoothedPath] = field(default_factory=dict)
    mission: MissionPlan | None = None
    timing: dict[str, float] = field(default_factory=dict)

    @property
    def all_reached(self) -> bool:
        return self.plan.all_reached

    def paths(self, representation: str) -> dict[int, list]:
        if representation == "raw":
            return {i: g.path for i, g in enumerate(self.plan.goals) if g.reached}
        if representation == "reduced":
            return dict(self.reduced)
        if representation == "smoothed":
            return {i: sp.samples for i, sp in self.smoothed.items()}
        raise ValueError(f"unknown representation {representation!r}")


def run_pipeline(sc: Scenario, seed: int | None = None) -> PipelineRun:
    seed = sc.planner.seed if seed is None else int(seed)
    ws = sc.workspace()
    cfg = sc.planner_config(seed)
    result = plan(ws, sc.start, sc.goals, cfg)
    run = PipelineRun(sc, seed, result)

    t0 = time.perf_counter()
    for i, g in enumerate(result.goals):
        if g.reached:
            run.reduced[i] = reduce_nodes(ws, g.path, cfg.gamma_max)
    t1 = time.perf_counter()
    for i, path in run.reduced.items():
        run.smoothed[i] = smooth(ws, path, sc.samples_per_curve)
    t2 = time.perf_counter()
    if run.smoothed:
        run.mission = build_mission(
            sorted(run.smoothed.items()), sc.uav.forward_speed, sc.altitude_base, sc.altitude_step
        )
    run.timing = {"plan_s": result.wall_time, "reduce_s": t1 - t0, "smooth_s": t2 - t1}
    return run


def _pts(path) -> list[list[float]]:
    return [[p[0], p[1]] for p in path]


def metric_block(paths: list) -> dict | None:
    if not paths:
        return None
    return {"F_L": path_length_metric(paths), "F_S": smooth_score_metric(paths)}


def _finite_or_none(v):
    if isinstance(v, float) and not math.isfinite(v):
        return None
    return v


def _dynamics_block(sc: Scenario) -> dict:
    try:
        rep = derivation_report(sc.uav, sc.planner.gamma_max_deg)
    except InsufficientThrust as exc:
        return {"error": str(exc)}
    return {k: _finite_or_none(v) for k, v in rep.items()}


def result_document(run: PipelineRun, *, record_timing: bool = False, include_tree: bool = False) -> dict:
    sc = run.scenario
    scen = scenario_to_dict(sc)
    scen["planner"]["seed"] = run.seed
    by_goal = {a.goal_index: a for a in run.mission.assignments} if run.mission else {}

    goals = []
    for i, g in enumerate(run.plan.goals):
        entry = {"index": i, "goal": [g.goal.x, g.goal.y], "status": "reached" if g.reached else "unreached"}
        if g.reached:
            sp = run.smoothed[i]
            entry.update(
                reached_at_iteration=g.iteration,
                raw_path=_pts(g.path),
                reduced_path=_pts(run.reduced[i]),
                smoothed_samples=_pts(sp.samples),
                corners=[
                    {
                        "corner": list(c.corner),
                        "entry": list(c.entry),
                        "exit": list(c.exit),
                        "safe_radius": c.safe_radius,
                        "clip": c.clip,
                    }
                    for c in sp.curves
                ],
                length={
                    "raw": polyline_length(g.path),
                    "reduced": polyline_length(run.reduced[i]),
                    "smoothed": sp.arc_length,
                },
                speed=by_goal[i].speed,
                altitude=by_goal[i].altitude,
            )
        goals.append(entry)

    doc = {
        "format": RESULT_FORMAT,
        "version": RESULT_VERSION,
        "seed": run.seed,
        "scenario": scen,
        "dynamics": _dynamics_block(sc),
        "iterations_used": run.plan.iterations_used,
        "tree_size": len(run.plan.tree),
        "all_reached": run.all_reached,
        "goals": goals,
        "mission": None,
        "metrics": {rep: metric_block([p for _, p in sorted(run.paths(rep).items())]) for rep in REPRESENTATIONS},
    }
    if run.mission:
        doc["mission"] = {
            "arrival_time": run.mission.arrival_time,
            "max_arrival_error": run.mission.max_arrival_error(),
        }
    if record_timing:
        doc["timing"] = dict(run.timing, F_T=run.timing["plan_s"])
    if include_tree:
        tree = run.plan.tree
        doc["tree"] = {
            "nodes": [[n.position.x, n.position.y] for n in tree.nodes],
            "parents": [n.parent for n in tree.nodes],
            "is_goal": [n.is_goal for n in tree.nodes],
        }
    return doc


def dumps_result(doc: dict) -> str:
    return json.dumps(doc, indent=1, sort_keys=True, allow_nan=False) + "\n"


def write_result(doc: dict, path) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(dumps_result(doc))


def load_result(path) -> dict:
    try:
        doc = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise InvalidResult(f"{path}: cannot read result file ({exc})") from None
    if not isinstance(doc, dict) or doc.get("format") != RESULT_FORMAT or doc.get("version") != RESULT_VERSION:
        raise InvalidResult(f"{path}: not a {RESULT_FORMAT} v{RESULT_VERSION} file")
    for key in ("scenario", "goals", "metrics"):
        if key not in doc:
            raise InvalidResult(f"{path}: missing '{key}'")
    return doc


_PATH_KEYS = {"raw": "raw_path", "reduced": "reduced_path", "smoothed": "smoothed_samples"}


def recompute_metrics(doc: dict) -> dict:
    """Recompute every derived number from the paths embedded in ``doc``."""
    reached = [g for g in doc["goals"] if g["status"] == "reached"]
    out = {
        "metrics": {rep: metric_block([g[_PATH_KEYS[rep]] for g in reached]) for rep in REPRESENTATIONS},
        "goals": {},
        "mission": None,
    }
    for g in reached:
        out["goals"][g["index"]] = {
            "length": {rep: polyline_length(g[_PATH_KEYS[rep]]) for rep in REPRESENTATIONS},
            "F_S": {rep: smooth_score_metric([g[_PATH_KEYS[rep]]]) for rep in REPRESENTATIONS},
        }
    if reached:
        v_max = doc["scenario"]["uav"]["forward_speed"]
        speeds, arrival = assign_velocities([out["goals"][g["index"]]["length"]["smoothed"] for g in reached], v_max)
        out["speeds"] = dict(zip((g["index"] for g in reached), speeds))
        out["mission"] = {"arrival_time": arrival}
    return out


def audit_result(doc: dict) -> dict:
    """Cross-check embedded metrics against a fresh recomputation.

    Returns the recomputed values; raises MetricsMismatch listing every
    disagreement. Comparison is exact since JSON round-trips doubles.
    """
    try:
        parse_scenario(doc["scenario"])
    except ValueError as exc:
        raise InvalidResult(f"embedded scenario is invalid: {exc}") from None
    fresh = recompute_metrics(doc)
    bad = []
    for rep in REPRESENTATIONS:
        if fresh["metrics"][rep] != doc["metrics"].get(rep):
            bad.append(f"metrics.{rep}: stored {doc['metrics'].get(rep)} != recomputed {fresh['metrics'][rep]}")
    for g in doc["goals"]:
        if g["status"] != "reached":
            continue
        i = g["index"]
        if g.get("length") != fresh["goals"][i]["length"]:
            bad.append(f"goals[{i}].length: stored {g.get('length')} != recomputed {fresh['goals'][i]['length']}")
        if g.get("speed") != fresh["speeds"][i]:
            bad.append(f"goals[{i}].speed: stored {g.get('speed')} != recomputed {fresh['speeds'][i]}")
    stored_T = (doc.get("mission") or {}).get("arrival_time")
    fresh_T = (fresh["mission"] or {}).get("arrival_time")
    if stored_T != fresh_T:
        bad.append(f"mission.arrival_time: stored {stored_T} != recomputed {fresh_T}")
    if bad:
        raise MetricsMismatch(bad)
    return fresh
