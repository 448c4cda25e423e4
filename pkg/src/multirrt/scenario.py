"""Scenario files: JSON schema, parsing, serialisation and bundled maps."""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field, fields
from importlib import resources
from pathlib import Path

import jsonschema

from .dynamics import DEFAULT_GAMMA_MAX_DEG, UavParams
from .environment import Box, Circle, Workspace
from .errors import InvalidScenario
from .geometry import EPS_GEOM, Point2, Rect, distance
from .planner import PlannerConfig

SCENARIO_VERSION = 1

_POINT = {"type": "array", "items": {"type": "number"}, "minItems": 2, "maxItems": 2}
_POS = {"type": "number", "exclusiveMinimum": 0}

SCENARIO_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["version", "bounds", "start", "goals", "obstacles"],
    "additionalProperties": False,
    "properties": {
        "version": {"const": SCENARIO_VERSION},
        "name": {"type": "string"},
        "description": {"type": "string"},
        "bounds": {
            "type": "object",
            "required": ["min", "max"],
            "additionalProperties": False,
            "properties": {"min": _POINT, "max": _POINT},
        },
        "start": _POINT,
        "goals": {"type": "array", "items": _POINT, "minItems": 1},
        "obstacles": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["type"],
                "properties": {"type": {"enum": ["circle", "rect"]}},
                "allOf": [
                    {
                        "if": {"properties": {"type": {"const": "circle"}}},
                        "then": {
                            "required": ["center", "radius"],
                            "additionalProperties": False,
                            "properties": {"type": {}, "center": _POINT, "radius": _POS},
                        },
                    },
                    {
                        "if": {"properties": {"type": {"const": "rect"}}},
                        "then": {
                            "required": ["min", "max"],
                            "additionalProperties": False,
                            "properties": {"type": {}, "min": _POINT, "max": _POINT},
                        },
                    },
                ],
            },
        },
        "uav": {
            "type": "object",
            "additionalProperties": False,
            "properties": {f.name: _POS for f in fields(UavParams)},
        },
        "planner": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                "step": _POS,
                "max_iterations": {"type": "integer", "minimum": 1},
                "gamma_max_deg": {"type": "number", "exclusiveMinimum": 0, "maximum": 180},
                "seed": {"type": "integer", "minimum": 0, "maximum": 2**64 - 1},
            },
        },
        "smoothing": {
            "type": "object",
            "additionalProperties": False,
            "properties": {"samples_per_curve": {"type": "integer", "minimum": 2}},
        },
        "mission": {
            "type": "object",
            "additionalProperties": False,
            "properties": {"altitude_base": {"type": "number"}, "altitude_step": _POS},
        },
    },
}


@dataclass(frozen=True)
class PlannerSettings:
    step: float = 50.0
    max_iterations: int = 5000
    gamma_max_deg: float = DEFAULT_GAMMA_MAX_DEG
    seed: int = 0


@dataclass(frozen=True)
class Scenario:
    bounds: Rect
    start: Point2
    goals: tuple
    obstacles: tuple = ()
    uav: UavParams = field(default_factory=UavParams)
    planner: PlannerSettings = field(default_factory=PlannerSettings)
    samples_per_curve: int = 20
    altitude_base: float = 5.0
    altitude_step: float = 5.0
    name: str = ""
    description: str = ""

    def workspace(self) -> Workspace:
        return Workspace(self.bounds, self.obstacles, self.uav.uav_radius)

    def planner_config(self, seed: int | None = None) -> PlannerConfig:
        p = self.planner
        return PlannerConfig(
            step=p.step,
            max_iterations=p.max_iterations,
            gamma_max=math.radians(p.gamma_max_deg),
            rng_seed=p.seed if seed is None else seed,
        )

    def with_goals(self, goals) -> "Scenario":
        d = scenario_to_dict(self)
        d["goals"] = [list(g) for g in goals]
        return parse_scenario(d)


def _schema_error_message(err: jsonschema.ValidationError) -> str:
    where = err.json_path
    if err.validator == "required":
        missing = [r for r in err.validator_value if r not in err.instance]
        if missing:
            return f"{where}.{missing[0]}: required field is missing"
    return f"{where}: {err.message}"


def _pt(v) -> Point2:
    return Point2(float(v[0]), float(v[1]))


def parse_scenario(data) -> Scenario:
    """Validate a decoded JSON document and build a Scenario.

    Raises InvalidScenario whose message starts with the JSON path of the
    offending field.
    """
    validator = jsonschema.Draft202012Validator(SCENARIO_SCHEMA)
    errors = sorted(validator.iter_errors(data), key=lambda e: (e.json_path, e.message))
    if errors:
        raise InvalidScenario(_schema_error_message(errors[0]))

    lo, hi = _pt(data["bounds"]["min"]), _pt(data["bounds"]["max"])
    if not (lo.x < hi.x and lo.y < hi.y):
        raise InvalidScenario("$.bounds: min must be < max on both axes")
    obstacles = []
    for i, ob in enumerate(data["obstacles"]):
        if ob["type"] == "circle":
            obstacles.append(Circle(_pt(ob["center"]), float(ob["radius"])))
        else:
            omin, omax = _pt(ob["min"]), _pt(ob["max"])
            if not (omin.x < omax.x and omin.y < omax.y):
                raise InvalidScenario(f"$.obstacles[{i}]: min must be < max on both axes")
            obstacles.append(Box(omin, omax))
    try:
        uav = UavParams(**{k: float(v) for k, v in data.get("uav", {}).items()})
    except ValueError as exc:
        raise InvalidScenario(f"$.uav: {exc}") from None
    planner = PlannerSettings(**data.get("planner", {}))
    planner = PlannerSettings(
        float(planner.step), int(planner.max_iterations), float(planner.gamma_max_deg), int(planner.seed)
    )
    sc = Scenario(
        bounds=Rect(lo, hi),
        start=_pt(data["start"]),
        goals=tuple(_pt(g) for g in data["goals"]),
        obstacles=tuple(obstacles),
        uav=uav,
        planner=planner,
        samples_per_curve=int(data.get("smoothing", {}).get("samples_per_curve", 20)),
        altitude_base=float(data.get("mission", {}).get("altitude_base", 5.0)),
        altitude_step=float(data.get("mission", {}).get("altitude_step", 5.0)),
        name=data.get("name", ""),
        description=data.get("description", ""),
    )
    try:
        ws = sc.workspace()
    except ValueError as exc:
        raise InvalidScenario(f"$.uav.uav_radius: {exc}") from None
    if not ws.point_free(sc.start):
        raise InvalidScenario("$.start: outside the free space (bounds or inflated obstacle)")
    for i, g in enumerate(sc.goals):
        if not ws.point_free(g):
            raise InvalidScenario(f"$.goals[{i}]: outside the free space (bounds or inflated obstacle)")
        if distance(g, sc.start) < EPS_GEOM:
            raise InvalidScenario(f"$.goals[{i}]: coincides with the start")
        for j in range(i):
            if distance(g, sc.goals[j]) < EPS_GEOM:
                raise InvalidScenario(f"$.goals[{i}]: duplicates goal {j}")
    return sc


def scenario_to_dict(sc: Scenario) -> dict:
    obstacles = []
    for ob in sc.obstacles:
        if isinstance(ob, Circle):
            obstacles.append({"type": "circle", "center": list(ob.center), "radius": ob.radius})
        else:
            obstacles.append({"type": "rect", "min": list(ob.lo), "max": list(ob.hi)})
    out = {
        "version": SCENARIO_VERSION,
        "bounds": {"min": list(sc.bounds.lo), "max": list(sc.bounds.hi)},
        "start": list(sc.start),
        "goals": [list(g) for g in sc.goals],
        "obstacles": obstacles,
        "uav": asdict(sc.uav),
        "planner": asdict(sc.planner),
        "smoothing": {"samples_per_curve": sc.samples_per_curve},
        "mission": {"altitude_base": sc.altitude_base, "altitude_step": sc.altitude_step},
    }
    if sc.name:
        out["name"] = sc.name
    if sc.description:
        out["description"] = sc.description
    return out


def load_scenario(path) -> Scenario:
    path = Path(path)
    try:
        data = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise InvalidScenario(f"{path}: not valid JSON ({exc})") from None
    return parse_scenario(data)


def dump_scenario(sc: Scenario, path) -> None:
    Path(path).write_text(json.dumps(scenario_to_dict(sc), indent=2, sort_keys=True) + "\n")


BUNDLED = ("scenario1", "scenario2", "scenario3", "scenario4")


def bundled_path(name: str):
    """Filesystem path of a bundled scenario (``scenario1`` .. ``scenario4``, ``scalability``)."""
    return resources.files("multirrt") / "scenarios" / f"{name}.json"


def load_bundled(name: str) -> Scenario:
    return parse_scenario(json.loads(bundled_path(name).read_text()))
