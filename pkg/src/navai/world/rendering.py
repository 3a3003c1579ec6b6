"""Deterministic software renderer for box scenes.

Perspective projection with a 90-degree horizontal FOV, painter's algorithm
ordered by object-centroid distance, flat per-face shading derived from the
object color, constant background. Equal inputs always produce equal bytes.
"""

from __future__ import annotations

import math

import numpy as np

from .camera import NEAR_PLANE, TAN_HALF_HFOV, camera_axes
from .types import Frame, Pose, Scene, SceneObject, Vec3

BACKGROUND = (46, 52, 64)

# Brightness per outward face axis: lit from above, x faces brighter than z.
_FACE_SHADE = {
    (0, 1, 0): 1.00,
    (0, -1, 0): 0.40,
    (1, 0, 0): 0.80,
    (-1, 0, 0): 0.80,
    (0, 0, 1): 0.62,
    (0, 0, -1): 0.62,
}

# Corner index pattern for the 6 faces of a box; corners numbered by bits (x, y, z).
_FACES = (
    ((0, 1, 0), (2, 3, 7, 6)),
    ((0, -1, 0), (0, 4, 5, 1)),
    ((1, 0, 0), (4, 6, 7, 5)),
    ((-1, 0, 0), (0, 1, 3, 2)),
    ((0, 0, 1), (1, 5, 7, 3)),
    ((0, 0, -1), (0, 2, 6, 4)),
)


def _box_corners(lo: Vec3, hi: Vec3) -> list[Vec3]:
    return [
        (hi[0] if i & 4 else lo[0], hi[1] if i & 2 else lo[1], hi[2] if i & 1 else lo[2])
        for i in range(8)
    ]


def _clip_near(poly: list[Vec3]) -> list[Vec3]:
    """Sutherland-Hodgman clip of a camera-space polygon against z = NEAR."""
    out: list[Vec3] = []
    n = len(poly)
    for i in range(n):
        a, b = poly[i], poly[(i + 1) % n]
        a_in, b_in = a[2] > NEAR_PLANE, b[2] > NEAR_PLANE
        if a_in:
            out.append(a)
        if a_in != b_in:
            t = (NEAR_PLANE - a[2]) / (b[2] - a[2])
            out.append(
                (
                    a[0] + (b[0] - a[0]) * t,
                    a[1] + (b[1] - a[1]) * t,
                    NEAR_PLANE,
                )
            )
    return out


def _fill_triangle(buf: np.ndarray, color: np.ndarray, pts: list[tuple[float, float]]) -> None:
    (x0, y0), (x1, y1), (x2, y2) = pts
    area = (x1 - x0) * (y2 - y0) - (x2 - x0) * (y1 - y0)
    if area == 0.0:
        return
    if area < 0.0:  # force counterclockwise so all edge tests share a sign
        (x1, y1), (x2, y2) = (x2, y2), (x1, y1)
    height, width = buf.shape[0], buf.shape[1]
    min_x = max(int(math.floor(min(x0, x1, x2))), 0)
    max_x = min(int(math.ceil(max(x0, x1, x2))), width - 1)
    min_y = max(int(math.floor(min(y0, y1, y2))), 0)
    max_y = min(int(math.ceil(max(y0, y1, y2))), height - 1)
    if min_x > max_x or min_y > max_y:
        return
    xs = np.arange(min_x, max_x + 1, dtype=np.float64) + 0.5
    ys = np.arange(min_y, max_y + 1, dtype=np.float64) + 0.5
    px, py = np.meshgrid(xs, ys)
    e0 = (x1 - x0) * (py - y0) - (y1 - y0) * (px - x0)
    e1 = (x2 - x1) * (py - y1) - (y2 - y1) * (px - x1)
    e2 = (x0 - x2) * (py - y2) - (y0 - y2) * (px - x2)
    mask = (e0 >= 0.0) & (e1 >= 0.0) & (e2 >= 0.0)
    buf[min_y : max_y + 1, min_x : max_x + 1][mask] = color


def _shaded_color(obj: SceneObject, normal: tuple[int, int, int]) -> np.ndarray:
    factor = _FACE_SHADE[normal]
    return np.array(
        [min(255, max(0, round(c * factor))) for c in obj.color], dtype=np.uint8
    )


def render(scene: Scene, pose: Pose, width: int, height: int) -> Frame:
    """Draw the scene from the pose into a width x height RGB frame."""
    if width <= 0 or height <= 0:
        raise ValueError("render size must be positive")
    buf = np.empty((height, width, 3), dtype=np.uint8)
    buf[:, :] = BACKGROUND

    right, up, forward = camera_axes(pose)
    eye = pose.position
    tan_h = TAN_HALF_HFOV
    tan_v = tan_h * height / width

    def to_cam(p: Vec3) -> Vec3:
        rel = (p[0] - eye[0], p[1] - eye[1], p[2] - eye[2])
        return (
            rel[0] * right[0] + rel[1] * right[1] + rel[2] * right[2],
            rel[0] * up[0] + rel[1] * up[1] + rel[2] * up[2],
            rel[0] * forward[0] + rel[1] * forward[1] + rel[2] * forward[2],
        )

    def to_screen(cam: Vec3) -> tuple[float, float]:
        u = 0.5 + cam[0] / (2.0 * cam[2] * tan_h)
        v = 0.5 - cam[1] / (2.0 * cam[2] * tan_v)
        return u * width, v * height

    def centroid_dist(obj: SceneObject) -> float:
        c = obj.centroid
        return math.dist(c, eye)

    # far to near; ties broken by id so the order never depends on dict/EPS noise
    ordered = sorted(scene.objects, key=lambda o: (-centroid_dist(o), o.id))

    for obj in ordered:
        corners = _box_corners(obj.box_min, obj.box_max)
        cam_corners = [to_cam(c) for c in corners]
        for normal, idxs in _FACES:
            # backface cull: face visible only if the eye is on its outer side
            face_point = corners[idxs[0]]
            outward = (
                (eye[0] - face_point[0]) * normal[0]
                + (eye[1] - face_point[1]) * normal[1]
                + (eye[2] - face_point[2]) * normal[2]
            )
            if outward <= 0.0:
                continue
            poly = _clip_near([cam_corners[i] for i in idxs])
            if len(poly) < 3:
                continue
            pts = [to_screen(p) for p in poly]
            color = _shaded_color(obj, normal)
            for k in range(1, len(pts) - 1):
                _fill_triangle(buf, color, [pts[0], pts[k], pts[k + 1]])

    return Frame(width=width, height=height, pixels=buf.tobytes())
