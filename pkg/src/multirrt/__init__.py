"""Multi-goal RRT path planning for cooperative UAV missions."""

from .dynamics import UavParams, gamma_max, turning_radius
from .environment import Box, Circle, Workspace
from .geometry import Point2, Rect, Segment
from .mission import assign_velocities, build_mission
from .pipeline import run_pipeline
from .planner import PlannerConfig, PlanResult, plan
from .refine import reduce_nodes, smooth
from .scenario import Scenario, load_bundled, load_scenario, parse_scenario

__all__ = [
    "Box",
    "Circle",
    "PlanResult",
    "PlannerConfig",
    "Point2",
    "Rect",
    "Scenario",
    "Segment",
    "UavParams",
    "Workspace",
    "assign_velocities",
    "build_mission",
    "gamma_max",
    "load_bundled",
    "load_scenario",
    "parse_scenario",
    "plan",
    "reduce_nodes",
    "run_pipeline",
    "smooth",
    "turning_radius",
]

__version__ = "0.1.0"
