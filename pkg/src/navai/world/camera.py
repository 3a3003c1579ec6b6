"""Pinhole camera derived from a Pose: 90-degree horizontal field of view."""

from __future__ import annotations

import math

from .types import Pose, Vec3

HFOV_DEG = 90.0
NEAR_PLANE = 0.05

# tan of half the horizontal FOV; 90 degrees makes this exactly 1.
TAN_HALF_HFOV = math.tan(math.radians(HFOV_DEG / 2.0))


def heading_vector(yaw_deg: float) -> Vec3:
    """Horizontal unit vector the given yaw faces (pitch ignored)."""
    rad = math.radians(yaw_deg)
    return (math.cos(rad), 0.0, -math.sin(rad))


def camera_axes(pose: Pose) -> tuple[Vec3, Vec3, Vec3]:
    """Orthonormal (right, up, forward) axes for the pose, pitch included."""
    yaw = math.radians(pose.yaw)
    pitch = math.radians(pose.pitch)
    cy, sy = math.cos(yaw), math.sin(yaw)
    cp, sp = math.cos(pitch), math.sin(pitch)
    forward = (cp * cy, sp, -cp * sy)
    right = (sy, 0.0, cy)
    # right x forward, already unit length for this parameterization
    up = (
        right[1] * forward[2] - right[2] * forward[1],
        right[2] * forward[0] - right[0] * forward[2],
        right[0] * forward[1] - right[1] * forward[0],
    )
    return right, up, forward


def to_camera(point: Vec3, pose: Pose) -> Vec3:
    """World point -> camera coordinates (x right, y up, z forward)."""
    right, up, forward = camera_axes(pose)
    rel = (
        point[0] - pose.position[0],
        point[1] - pose.position[1],
        point[2] - pose.position[2],
    )
    return (
        rel[0] * right[0] + rel[1] * right[1] + rel[2] * right[2],
        rel[0] * up[0] + rel[1] * up[1] + rel[2] * up[2],
        rel[0] * forward[0] + rel[1] * forward[1] + rel[2] * forward[2],
    )


def project_to_viewport(cam: Vec3) -> tuple[float, float] | None:
    """Camera point -> (u, v) in the canonical square viewport, origin top-left.

    The canonical viewport assumes a square aspect (vertical FOV equals the
    horizontal 90 degrees), matching the default square frames the
    orchestrator renders. Returns None for points on or behind the near
    plane.
    """
    x, y, z = cam
    if z <= NEAR_PLANE:
        return None
    u = 0.5 + x / (2.0 * z * TAN_HALF_HFOV)
    v = 0.5 - y / (2.0 * z * TAN_HALF_HFOV)
    return u, v


def in_view_frustum(cam: Vec3) -> bool:
    """Strict containment in the canonical square 90-degree frustum."""
    x, y, z = cam
    if z <= NEAR_PLANE:
        return False
    half_extent = z * TAN_HALF_HFOV
    return abs(x) < half_extent and abs(y) < half_extent
