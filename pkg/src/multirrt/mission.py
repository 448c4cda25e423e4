"""Cooperative layer: simultaneous-arrival speeds, altitude layering, metrics."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import EmptyInput, IncompletePlan
from .geometry import polyline_length, turning_angle


def assign_velocities(lengths, v_max: float) -> tuple[list[float], float]:
    """Scale speeds with path length so every UAV arrives at the same time.

    The longest path is flown at ``v_max``; the shared arrival time is
    ``max(lengths) / v_max``.
    """
    lengths = [float(x) for x in lengths]
    if not lengths:
        raise EmptyInput("no path lengths given")
    if not v_max > 0:
        raise ValueError("v_max must be > 0")
    if any(not x > 0 for x in lengths):
        raise ValueError("path lengths must be > 0")
    longest = max(lengths)
    arrival = longest / v_max
    # Ratio first: x / longest <= 1 exactly, so no speed rounds above v_max.
    return [v_max * (x / longest) for x in lengths], arrival


def assign_altitudes(n: int, base: float = 5.0, step: float = 5.0) -> list[float]:
    if n < 1:
        raise ValueError("n must be >= 1")
    if not step > 0:
        raise ValueError("altitude step must be > 0")
    return [base + i * step for i in range(n)]


def path_length_metric(paths) -> float:
    """Mean polyline length over all paths."""
    if not paths:
        raise EmptyInput("no paths")
    return sum(polyline_length(p) for p in paths) / len(paths)


def mean_turning_angle(path) -> float:
    angles = [turning_angle(path[j - 1], path[j], path[j + 1]) for j in range(1, len(path) - 1)]
    return sum(angles) / len(angles)


def smooth_score_metric(paths) -> float:
    # Per-path mean of interior turning angles, then averaged over the paths
    # that have at least one interior vertex.
    if not paths:
        raise EmptyInput("no paths")
    per_path = [mean_turning_angle(p) for p in paths if len(p) >= 3]
    if not per_path:
        return 0.0
    return sum(per_path) / len(per_path)


@dataclass(frozen=True)
class Metrics:
    path_length: float
    smooth_score: float
    compute_time: float

    def as_dict(self) -> dict:
        return {"F_L": self.path_length, "F_S": self.smooth_score, "F_T": self.compute_time}


def compute_metrics(result, final_paths) -> Metrics:
    """F_L and F_S over ``final_paths``; F_T is the planner's wall time."""
    if not result.all_reached:
        missing = [i for i, g in enumerate(result.goals) if not g.reached]
        raise IncompletePlan(f"goals {missing} were not reached")
    return Metrics(
        path_length_metric(final_paths),
        smooth_score_metric(final_paths),
        float(result.wall_time),
    )


@dataclass(frozen=True)
class UavAssignment:
    goal_index: int
    samples: list
    length: float
    speed: float
    altitude: float


@dataclass(frozen=True)
class MissionPlan:
    assignments: list[UavAssignment]
    arrival_time: float

    def max_arrival_error(self) -> float:
        """Largest relative deviation of L_i / v_i from the shared arrival time."""
        T = self.arrival_time
        return max(abs(a.length / a.speed - T) / T for a in self.assignments)


def build_mission(smoothed, v_max: float, altitude_base: float = 5.0, altitude_step: float = 5.0) -> MissionPlan:
    """Assign speeds and altitudes to ``(goal_index, SmoothedPath)`` pairs."""
    smoothed = list(smoothed)
    if not smoothed:
        raise EmptyInput("no reached goals to fly to")
    lengths = [sp.arc_length for _, sp in smoothed]
    speeds, arrival = assign_velocities(lengths, v_max)
    alts = assign_altitudes(len(smoothed), altitude_base, altitude_step)
    out = [
        UavAssignment(gi, sp.samples, L, v, h)
        for (gi, sp), L, v, h in zip(smoothed, lengths, speeds, alts)
    ]
    if any(not math.isfinite(a.speed) for a in out):
        raise ValueError("non-finite speed assignment")
    return MissionPlan(out, arrival)
