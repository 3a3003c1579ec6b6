"""Deterministic first-person scene simulator: geometry, motion, rendering."""

from .camera import HFOV_DEG, NEAR_PLANE, camera_axes, heading_vector
from .kinematics import (
    COLLISION_MARGIN,
    MOVE_SPEED,
    PITCH_SPEED,
    TURN_SPEED,
    apply_action,
    sweep_move,
)
from .rendering import BACKGROUND, render
from .scene_io import (
    BUNDLED_SCENES,
    SceneParseError,
    load_bundled_scene,
    load_scene,
    load_scene_file,
    resolve_scene,
)
from .types import Frame, Pose, Scene, SceneObject, SceneValidationError, Vec3
from .visibility import visible_objects

__all__ = [
    "BACKGROUND",
    "BUNDLED_SCENES",
    "COLLISION_MARGIN",
    "Frame",
    "HFOV_DEG",
    "MOVE_SPEED",
    "NEAR_PLANE",
    "PITCH_SPEED",
    "Pose",
    "Scene",
    "SceneObject",
    "SceneParseError",
    "SceneValidationError",
    "TURN_SPEED",
    "Vec3",
    "apply_action",
    "camera_axes",
    "heading_vector",
    "load_bundled_scene",
    "load_scene",
    "load_scene_file",
    "render",
    "resolve_scene",
    "sweep_move",
    "visible_objects",
]
