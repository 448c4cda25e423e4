"""Quadrotor thrust/drag model and the turning limit it implies.

The derivation assumes level flight at constant forward speed ``v_x``.
Balancing drag along the heading and gravity vertically fixes the pitch
angle; whatever thrust is left over after that balance can be banked
sideways to supply centripetal force. That leftover lateral force sets the
tightest turning radius, and its reciprocal is the maximum curvature.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, fields

import numpy as np

from .errors import InsufficientThrust, OutOfRange

# Planner default angle bound. The closed-form curvature from the default
# parameters is ~1.1985 1/m (68.67 deg when read as radians), not 75 deg;
# both are reported side by side by `derivation_report`.
DEFAULT_GAMMA_MAX_DEG = 75.0

# Relative slack under which f_Tmax^2 is treated as exactly at the hover limit.
_HOVER_LIMIT_RTOL = 1e-12


@dataclass(frozen=True)
class UavParams:
    """Physical constants of a 3DR Solo class quadrotor."""

    mass: float = 1.5
    gravity: float = 9.81
    forward_speed: float = 8.0
    thrust_coeff: float = 2.9e-5
    friction_coeff: float = 1.1e-6
    max_motor_speed: float = 1000.0
    uav_radius: float = 0.5

    def __post_init__(self):
        for f in fields(self):
            v = getattr(self, f.name)
            if not (math.isfinite(v) and v > 0):
                raise ValueError(f"UavParams.{f.name} must be finite and > 0, got {v!r}")

    @property
    def hover_drag_force(self) -> float:
        """Magnitude of the combined gravity and cruise-drag load, in newtons."""
        return math.hypot(self.friction_coeff * self.forward_speed, self.mass * self.gravity)


@dataclass(frozen=True)
class AttitudeState:
    roll: float = 0.0
    pitch: float = 0.0
    yaw: float = 0.0


def propeller_thrust(params: UavParams, omega: float) -> float:
    if not 0.0 <= omega <= params.max_motor_speed:
        raise OutOfRange(f"rotor speed {omega} outside [0, {params.max_motor_speed}]")
    return params.thrust_coeff * omega * omega


def max_total_thrust(params: UavParams) -> float:
    return 4.0 * propeller_thrust(params, params.max_motor_speed)


def rotation_matrix(att: AttitudeState) -> np.ndarray:
    """Body-to-inertial rotation R_z(yaw) @ R_y(pitch) @ R_x(roll)."""
    cr, sr = math.cos(att.roll), math.sin(att.roll)
    cp, sp = math.cos(att.pitch), math.sin(att.pitch)
    cy, sy = math.cos(att.yaw), math.sin(att.yaw)
    rz = np.array([[cy, -sy, 0.0], [sy, cy, 0.0], [0.0, 0.0, 1.0]])
    ry = np.array([[cp, 0.0, sp], [0.0, 1.0, 0.0], [-sp, 0.0, cp]])
    rx = np.array([[1.0, 0.0, 0.0], [0.0, cr, -sr], [0.0, sr, cr]])
    return rz @ ry @ rx


def linear_acceleration(params: UavParams, att: AttitudeState, thrust: float, velocity) -> np.ndarray:
    if thrust < 0:
        raise OutOfRange("thrust must be non-negative")
    v = np.asarray(velocity, dtype=float).reshape(3)
    force = rotation_matrix(att) @ np.array([0.0, 0.0, thrust])
    force = force - params.friction_coeff * v - np.array([0.0, 0.0, params.mass * params.gravity])
    return force / params.mass


def pitch_angle(params: UavParams) -> float:
    return math.atan(params.friction_coeff * params.forward_speed / (params.mass * params.gravity))


def _lateral_force_sq(params: UavParams, thrust: float) -> float:
    # Thrust squared minus the part spent on holding altitude and cancelling
    # drag; what remains is the squared sideways (centripetal) component.
    cv = params.friction_coeff * params.forward_speed
    mg = params.mass * params.gravity
    return thrust * thrust - cv * cv - mg * mg


def turning_radius(params: UavParams, thrust: float) -> float:
    """Radius of a level turn at ``forward_speed`` when ``thrust`` newtons are available."""
    lat_sq = _lateral_force_sq(params, thrust)
    if lat_sq <= 0.0:
        raise InsufficientThrust(
            f"thrust {thrust:.6g} N does not exceed the hover/drag load "
            f"{params.hover_drag_force:.6g} N; no lateral force is left for turning"
        )
    return params.mass * params.forward_speed ** 2 / math.sqrt(lat_sq)


def gamma_max(params: UavParams) -> float:
    """Maximum turning curvature 1/R_min (units 1/m) at full thrust.

    Returns 0 when full thrust exactly matches the hover/drag load.
    """
    f_max = max_total_thrust(params)
    lat_sq = _lateral_force_sq(params, f_max)
    if abs(lat_sq) <= _HOVER_LIMIT_RTOL * params.hover_drag_force ** 2:
        return 0.0
    if lat_sq < 0.0:
        raise InsufficientThrust(
            f"maximum thrust {f_max:.6g} N is below the hover/drag load "
            f"{params.hover_drag_force:.6g} N; the vehicle cannot hold altitude"
        )
    return math.sqrt(lat_sq) / (params.mass * params.forward_speed ** 2)


def derivation_report(params: UavParams, configured_gamma_max_deg: float = DEFAULT_GAMMA_MAX_DEG) -> dict:
    g = gamma_max(params)
    r_min = math.inf if g == 0.0 else 1.0 / g
    return {
        "max_total_thrust_N": max_total_thrust(params),
        "pitch_angle_rad": pitch_angle(params),
        "min_turning_radius_m": r_min,
        "gamma_max_curvature_per_m": g,
        "gamma_max_read_as_deg": math.degrees(g),
        "configured_gamma_max_deg": configured_gamma_max_deg,
        "note": (
            "the closed-form value is a curvature (1/m); reading it as radians gives "
            f"{math.degrees(g):.2f} deg, while the planner uses the configured "
            f"{configured_gamma_max_deg:g} deg bound"
        ),
    }
