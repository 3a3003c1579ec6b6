"""Scene file loading.

Scenes are JSON documents:

    {"name": ..., "bounds": {"min": [x,y,z], "max": [x,y,z]},
     "agent_start": {"pos": [x,y,z], "yaw": 0, "pitch": 0},
     "objects": [{"id", "label", "color": [r,g,b],
                  "min": [...], "max": [...], "features": [...]}]}

Three scenes ship with the package (highway, country_house, ship) so the
evaluation tasks are runnable out of the box.
"""

from __future__ import annotations

import json
from importlib import resources
from pathlib import Path

from .types import Scene, SceneObject, SceneValidationError, Pose

BUNDLED_SCENES = ("highway", "country_house", "ship")


class SceneParseError(ValueError):
    """The scene document is structurally malformed."""

    def __init__(self, field_name: str, message: str):
        self.field_name = field_name
        super().__init__(f"{field_name}: {message}")


def _require(doc: dict, key: str, kind, where: str):
    if key not in doc:
        raise SceneParseError(f"{where}.{key}", "missing required field")
    value = doc[key]
    if kind is float:
        if not isinstance(value, (int, float)) or isinstance(value, bool):
            raise SceneParseError(f"{where}.{key}", "expected a number")
        return float(value)
    if not isinstance(value, kind):
        raise SceneParseError(f"{where}.{key}", f"expected {kind.__name__}")
    return value


def _vec3(doc: dict, key: str, where: str) -> tuple[float, float, float]:
    raw = _require(doc, key, list, where)
    if len(raw) != 3 or not all(
        isinstance(c, (int, float)) and not isinstance(c, bool) for c in raw
    ):
        raise SceneParseError(f"{where}.{key}", "expected [x, y, z] numbers")
    return (float(raw[0]), float(raw[1]), float(raw[2]))


def load_scene(document: bytes | str) -> Scene:
    """Parse and validate a scene document; raises with the offending field."""
    if isinstance(document, bytes):
        document = document.decode("utf-8")
    try:
        doc = json.loads(document)
    except json.JSONDecodeError as exc:
        raise SceneParseError("document", f"invalid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise SceneParseError("document", "top level must be an object")

    name = _require(doc, "name", str, "scene")
    bounds = _require(doc, "bounds", dict, "scene")
    bounds_min = _vec3(bounds, "min", "bounds")
    bounds_max = _vec3(bounds, "max", "bounds")

    start_doc = _require(doc, "agent_start", dict, "scene")
    start = Pose(
        position=_vec3(start_doc, "pos", "agent_start"),
        yaw=_require(start_doc, "yaw", float, "agent_start"),
        pitch=_require(start_doc, "pitch", float, "agent_start"),
    )

    objects = []
    raw_objects = doc.get("objects", [])
    if not isinstance(raw_objects, list):
        raise SceneParseError("objects", "expected a list")
    for i, raw in enumerate(raw_objects):
        where = f"objects[{i}]"
        if not isinstance(raw, dict):
            raise SceneParseError(where, "expected an object")
        color = _require(raw, "color", list, where)
        if len(color) != 3 or not all(isinstance(c, int) and 0 <= c <= 255 for c in color):
            raise SceneParseError(f"{where}.color", "expected [r, g, b] in 0..255")
        features = raw.get("features", [])
        if not isinstance(features, list) or not all(isinstance(f, str) for f in features):
            raise SceneParseError(f"{where}.features", "expected a list of strings")
        objects.append(
            SceneObject(
                id=_require(raw, "id", str, where),
                label=_require(raw, "label", str, where),
                color=(color[0], color[1], color[2]),
                box_min=_vec3(raw, "min", where),
                box_max=_vec3(raw, "max", where),
                features=tuple(features),
            )
        )

    return Scene(
        name=name,
        bounds_min=bounds_min,
        bounds_max=bounds_max,
        agent_start=start,
        objects=tuple(objects),
    )


def load_scene_file(path: str | Path) -> Scene:
    return load_scene(Path(path).read_bytes())


def load_bundled_scene(name: str) -> Scene:
    """Load one of the scenes shipped inside the package."""
    if name not in BUNDLED_SCENES:
        raise KeyError(f"no bundled scene {name!r}; have {', '.join(BUNDLED_SCENES)}")
    data = resources.files("navai.world").joinpath(f"data/{name}.scene").read_bytes()
    return load_scene(data)


def resolve_scene(name_or_path: str) -> Scene:
    """Bundled scene name, or a path to a .scene file."""
    if name_or_path in BUNDLED_SCENES:
        return load_bundled_scene(name_or_path)
    path = Path(name_or_path)
    if path.exists():
        return load_scene_file(path)
    raise SceneParseError(
        "scene", f"{name_or_path!r} is neither a bundled scene nor an existing file"
    )


__all__ = [
    "BUNDLED_SCENES",
    "SceneParseError",
    "SceneValidationError",
    "load_scene",
    "load_scene_file",
    "load_bundled_scene",
    "resolve_scene",
]
