from __future__ import annotations

import pytest

from navai.world import Pose, Scene, SceneObject


@pytest.fixture
def open_scene() -> Scene:
    """40x40 empty floor, agent at the center facing +X."""
    return Scene(
        name="open",
        bounds_min=(-20, 0, -20),
        bounds_max=(20, 8, 20),
        agent_start=Pose((0, 1.6, 0), yaw=0, pitch=0),
    )


@pytest.fixture
def wall_scene() -> Scene:
    """A single slab 1 unit ahead of the start pose, spanning the full width."""
    wall = SceneObject(
        id="wall",
        label="wall",
        color=(180, 180, 180),
        box_min=(1.0, 0, -20),
        box_max=(1.5, 8, 20),
    )
    return Scene(
        name="walled",
        bounds_min=(-20, 0, -20),
        bounds_max=(20, 8, 20),
        agent_start=Pose((0, 1.6, 0), yaw=0, pitch=0),
        objects=(wall,),
    )


def make_box(object_id: str, center, size, label=None, color=(200, 60, 60)) -> SceneObject:
    half = (size[0] / 2, size[1] / 2, size[2] / 2)
    return SceneObject(
        id=object_id,
        label=label or object_id,
        color=color,
        box_min=(center[0] - half[0], center[1] - half[1], center[2] - half[2]),
        box_max=(center[0] + half[0], center[1] + half[1], center[2] + half[2]),
    )
