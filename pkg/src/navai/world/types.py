"""Core simulator value types: poses, scene geometry, and raw frames."""

from __future__ import annotations

import hashlib
import io
import struct
import zlib
from dataclasses import dataclass, field

Vec3 = tuple[float, float, float]

PITCH_MIN = -60.0
PITCH_MAX = 60.0

# Angles live on a micro-degree grid. Rotations then compose as integer
# arithmetic, so a rotation followed by its exact opposite restores the
# original yaw bit for bit — plain float adds cannot promise that.
ANGLE_QUANTUM = 1_000_000  # grid steps per degree
_FULL_TURN = 360 * ANGLE_QUANTUM


def angle_to_grid(degrees: float) -> int:
    return round(degrees * ANGLE_QUANTUM)


def grid_to_angle(steps: int) -> float:
    return steps / ANGLE_QUANTUM


def normalize_yaw(yaw: float) -> float:
    """Wrap a yaw angle into [0, 360), snapped to the angle grid."""
    return grid_to_angle(angle_to_grid(yaw) % _FULL_TURN)


def clamp_pitch(pitch: float) -> float:
    steps = min(max(angle_to_grid(pitch), angle_to_grid(PITCH_MIN)), angle_to_grid(PITCH_MAX))
    return grid_to_angle(steps)


@dataclass(frozen=True)
class Pose:
    """Agent viewpoint: world position plus yaw/pitch in degrees.

    Yaw 0 looks along +X and grows counterclockwise when seen from above
    (a left turn increases yaw). Pitch is clamped so the view never
    degenerates to straight up/down.
    """

    position: Vec3
    yaw: float = 0.0
    pitch: float = 0.0

    def __post_init__(self) -> None:
        object.__setattr__(self, "position", tuple(float(c) for c in self.position))
        object.__setattr__(self, "yaw", normalize_yaw(float(self.yaw)))
        object.__setattr__(self, "pitch", clamp_pitch(float(self.pitch)))

    def moved_to(self, position: Vec3) -> "Pose":
        return Pose(position, self.yaw, self.pitch)

    def rotated(self, dyaw: float) -> "Pose":
        return Pose(self.position, self.yaw + dyaw, self.pitch)

    def pitched(self, dpitch: float) -> "Pose":
        return Pose(self.position, self.yaw, self.pitch + dpitch)

    def to_dict(self) -> dict:
        return {"pos": list(self.position), "yaw": self.yaw, "pitch": self.pitch}


class SceneValidationError(ValueError):
    """A scene document parsed but violates a geometric invariant."""

    def __init__(self, field_name: str, message: str):
        self.field_name = field_name
        super().__init__(f"{field_name}: {message}")


@dataclass(frozen=True)
class SceneObject:
    id: str
    label: str
    color: tuple[int, int, int]
    box_min: Vec3
    box_max: Vec3
    features: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "box_min", tuple(float(c) for c in self.box_min))
        object.__setattr__(self, "box_max", tuple(float(c) for c in self.box_max))
        object.__setattr__(self, "color", tuple(int(c) for c in self.color))
        object.__setattr__(self, "features", tuple(self.features))
        for axis in range(3):
            if not self.box_min[axis] < self.box_max[axis]:
                raise SceneValidationError(
                    f"objects[{self.id}].box",
                    f"min must be strictly below max on axis {axis} "
                    f"({self.box_min[axis]} >= {self.box_max[axis]})",
                )

    @property
    def centroid(self) -> Vec3:
        return tuple(
            (self.box_min[i] + self.box_max[i]) / 2.0 for i in range(3)
        )  # type: ignore[return-value]

    def contains(self, point: Vec3) -> bool:
        return all(self.box_min[i] <= point[i] <= self.box_max[i] for i in range(3))


@dataclass(frozen=True)
class Scene:
    name: str
    bounds_min: Vec3
    bounds_max: Vec3
    agent_start: Pose
    objects: tuple[SceneObject, ...] = field(default_factory=tuple)

    def __post_init__(self) -> None:
        object.__setattr__(self, "bounds_min", tuple(float(c) for c in self.bounds_min))
        object.__setattr__(self, "bounds_max", tuple(float(c) for c in self.bounds_max))
        object.__setattr__(self, "objects", tuple(self.objects))
        for axis in range(3):
            if not self.bounds_min[axis] < self.bounds_max[axis]:
                raise SceneValidationError(
                    "bounds", f"min must be strictly below max on axis {axis}"
                )
        seen: set[str] = set()
        for obj in self.objects:
            if obj.id in seen:
                raise SceneValidationError(f"objects[{obj.id}].id", "duplicate object id")
            seen.add(obj.id)
        start = self.agent_start.position
        if not all(
            self.bounds_min[i] <= start[i] <= self.bounds_max[i] for i in range(3)
        ):
            raise SceneValidationError("agent_start", "start pose outside scene bounds")
        for obj in self.objects:
            if obj.contains(start):
                raise SceneValidationError(
                    "agent_start", f"start pose inside object {obj.id!r}"
                )

    def object_by_id(self, object_id: str) -> SceneObject:
        for obj in self.objects:
            if obj.id == object_id:
                return obj
        raise KeyError(object_id)

    def find_by_label(self, label: str) -> SceneObject | None:
        """First object whose label matches (case-insensitive, substring either way)."""
        wanted = label.strip().lower()
        for obj in self.objects:
            have = obj.label.lower()
            if wanted == have or wanted in have or have in wanted:
                return obj
        return None


@dataclass(frozen=True)
class Frame:
    """Raw RGB image, row-major, 3 bytes per pixel."""

    width: int
    height: int
    pixels: bytes

    def __post_init__(self) -> None:
        expected = self.width * self.height * 3
        if self.width <= 0 or self.height <= 0:
            raise ValueError("frame dimensions must be positive")
        if len(self.pixels) != expected:
            raise ValueError(
                f"pixel buffer is {len(self.pixels)} bytes, expected {expected}"
            )

    def pixel(self, x: int, y: int) -> tuple[int, int, int]:
        off = (y * self.width + x) * 3
        return self.pixels[off], self.pixels[off + 1], self.pixels[off + 2]

    def digest(self) -> str:
        h = hashlib.sha256()
        h.update(struct.pack(">II", self.width, self.height))
        h.update(self.pixels)
        return h.hexdigest()

    def to_ppm(self) -> bytes:
        return b"P6\n%d %d\n255\n" % (self.width, self.height) + self.pixels

    def to_png(self) -> bytes:
        # Hand-rolled encoder keeps the byte stream independent of Pillow's
        # version-specific chunk layout; frames are small so speed is fine.
        def chunk(kind: bytes, payload: bytes) -> bytes:
            return (
                struct.pack(">I", len(payload))
                + kind
                + payload
                + struct.pack(">I", zlib.crc32(kind + payload) & 0xFFFFFFFF)
            )

        ihdr = struct.pack(">IIBBBBB", self.width, self.height, 8, 2, 0, 0, 0)
        stride = self.width * 3
        raw = b"".join(
            b"\x00" + self.pixels[y * stride : (y + 1) * stride]
            for y in range(self.height)
        )
        body = zlib.compress(raw, 6)
        out = io.BytesIO()
        out.write(b"\x89PNG\r\n\x1a\n")
        out.write(chunk(b"IHDR", ihdr))
        out.write(chunk(b"IDAT", body))
        out.write(chunk(b"IEND", b""))
        return out.getvalue()
