"""Ground-truth object visibility: the oracle side of scene interpretation.

An object counts as visible when its centroid lies strictly inside the
canonical square 90-degree frustum and the eye-to-centroid ray is not cut
by any nearer object's box. Each visible object is tagged with the grid
cell its centroid projects into, using the same cell mapping the
interpreter uses for frame overlays.
"""

from __future__ import annotations

import math

from ..grid import GridSpec, cell_for_point
from .camera import in_view_frustum, project_to_viewport, to_camera
from .types import Pose, Scene, SceneObject, Vec3


def _segment_hits_box(origin: Vec3, target: Vec3, lo: Vec3, hi: Vec3) -> bool:
    """True if the open segment origin->target passes through [lo, hi]."""
    t0, t1 = 0.0, 1.0
    for axis in range(3):
        d = target[axis] - origin[axis]
        if abs(d) < 1e-12:
            if not (lo[axis] <= origin[axis] <= hi[axis]):
                return False
            continue
        a = (lo[axis] - origin[axis]) / d
        b = (hi[axis] - origin[axis]) / d
        if a > b:
            a, b = b, a
        t0 = max(t0, a)
        t1 = min(t1, b)
        if t0 > t1:
            return False
    return t0 < 1.0 - 1e-9  # entering at/after the target does not occlude


def visible_objects(
    scene: Scene, pose: Pose, grid: GridSpec | None = None
) -> list[tuple[SceneObject, str, float]]:
    """(object, grid cell, distance) for every visible object, nearest first."""
    grid = grid or GridSpec()
    eye = pose.position
    candidates: list[tuple[float, SceneObject, str]] = []
    for obj in scene.objects:
        centroid = obj.centroid
        cam = to_camera(centroid, pose)
        if not in_view_frustum(cam):
            continue
        uv = project_to_viewport(cam)
        if uv is None:
            continue
        distance = math.dist(eye, centroid)
        candidates.append((distance, obj, cell_for_point(uv[0], uv[1], grid)))

    candidates.sort(key=lambda item: (item[0], item[1].id))

    result: list[tuple[SceneObject, str, float]] = []
    for distance, obj, cell in candidates:
        centroid = obj.centroid
        occluded = False
        for other in scene.objects:
            if other.id == obj.id:
                continue
            if math.dist(eye, other.centroid) >= distance:
                continue  # only nearer objects can block the centroid ray
            if _segment_hits_box(eye, centroid, other.box_min, other.box_max):
                occluded = True
                break
        if not occluded:
            result.append((obj, cell, distance))
    return result
