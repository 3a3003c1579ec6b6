"""Agent motion for the eight basic control functions.

Movement translates along the yaw-derived heading at a fixed walking speed
and is swept against all object boxes plus the scene bounds: the agent
stops at the first obstacle, keeping a small standoff margin, and never
errors. Rotation and look actions only touch yaw/pitch.
"""

from __future__ import annotations

import math

from .camera import heading_vector
from .types import Pose, Scene, Vec3, angle_to_grid, grid_to_angle

MOVE_SPEED = 1.5  # world units per second
TURN_SPEED = 45.0  # degrees per second
PITCH_SPEED = 30.0  # degrees per second
COLLISION_MARGIN = 0.2  # standoff kept between the camera and any surface

_EPS = 1e-12

# clamp stops shy of the exact surface so rounding can never deposit the
# agent a hair's breadth inside the margin band, where it would wedge
_CLAMP_BACKOFF = 1e-9


def _strict_crossing(
    origin: Vec3, direction: Vec3, lo: Vec3, hi: Vec3
) -> tuple[float, float] | None:
    """Parameter span over which the ray is strictly inside [lo, hi].

    Touching a face, sliding exactly along one, or grazing an edge is not a
    crossing and returns None; only rays that truly pass through the open
    interior constrain movement.
    """
    t0, t1 = -math.inf, math.inf
    for axis in range(3):
        d = direction[axis]
        if abs(d) < _EPS:
            if not (lo[axis] < origin[axis] < hi[axis]):
                return None
            continue
        a = (lo[axis] - origin[axis]) / d
        b = (hi[axis] - origin[axis]) / d
        if a > b:
            a, b = b, a
        t0 = max(t0, a)
        t1 = min(t1, b)
        if t0 >= t1:
            return None
    return t0, t1


def _inflate(lo: Vec3, hi: Vec3, amount: float) -> tuple[Vec3, Vec3]:
    return (
        tuple(c - amount for c in lo),  # type: ignore[return-value]
        tuple(c + amount for c in hi),  # type: ignore[return-value]
    )


def sweep_move(scene: Scene, origin: Vec3, direction: Vec3, distance: float) -> Vec3:
    """Translate along a unit direction, clamped at the first obstruction.

    Obstructions are object boxes inflated by the collision margin and the
    scene bounds shrunk by the same margin. An agent standing exactly on a
    margin surface can still slide along it or move away; only motion that
    would cross into the band is stopped.
    """
    allowed = distance
    for obj in scene.objects:
        if obj.contains(origin):
            continue  # already overlapping (authored pose): never block escape
        lo, hi = _inflate(obj.box_min, obj.box_max, COLLISION_MARGIN)
        span = _strict_crossing(origin, direction, lo, hi)
        if span is None:
            continue
        enter, leave = span
        if leave <= 0.0:
            continue  # the crossing lies behind us
        enter = max(enter - _CLAMP_BACKOFF, 0.0)
        if enter < allowed:
            allowed = enter

    inner_lo, inner_hi = (
        tuple(c + COLLISION_MARGIN for c in scene.bounds_min),
        tuple(c - COLLISION_MARGIN for c in scene.bounds_max),
    )
    for axis in range(3):
        d = direction[axis]
        if abs(d) < _EPS:
            continue
        limit = inner_hi[axis] if d > 0 else inner_lo[axis]
        t = max((limit - origin[axis]) / d - _CLAMP_BACKOFF, 0.0)
        if t < allowed:
            allowed = t

    allowed = max(allowed, 0.0)
    return (
        origin[0] + direction[0] * allowed,
        origin[1] + direction[1] * allowed,
        origin[2] + direction[2] * allowed,
    )


def apply_action(scene: Scene, pose: Pose, action) -> Pose:
    """Advance a pose by one validated control call; clamping, never failing.

    `scan_360` never reaches this level: the orchestrator decomposes it
    into individual rotation steps.
    """
    name = action.name
    duration = action.duration if action.duration is not None else 0.0

    # angle deltas go through the integer grid so equal-and-opposite
    # rotations cancel exactly
    if name == "in_place_rotate_to_left":
        return pose.rotated(grid_to_angle(angle_to_grid(TURN_SPEED * duration)))
    if name == "in_place_rotate_to_right":
        return pose.rotated(grid_to_angle(-angle_to_grid(TURN_SPEED * duration)))
    if name == "look_up":
        return pose.pitched(grid_to_angle(angle_to_grid(PITCH_SPEED * duration)))
    if name == "look_down":
        return pose.pitched(grid_to_angle(-angle_to_grid(PITCH_SPEED * duration)))

    if name == "move_forward":
        direction = heading_vector(pose.yaw)
    elif name == "move_left":
        direction = heading_vector(pose.yaw + 90.0)
    elif name == "move_right":
        direction = heading_vector(pose.yaw - 90.0)
    else:
        raise ValueError(f"cannot apply action {name!r}")

    target = sweep_move(scene, pose.position, direction, MOVE_SPEED * duration)
    return pose.moved_to(target)
