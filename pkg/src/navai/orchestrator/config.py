"""Run configuration: backend selection, endpoints, cassette, defaults.

Secrets never live here — endpoint entries name the environment variable
holding their token. Config files are JSON; TOML works on interpreters
that ship tomllib.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from ..gateway import (
    Cassette,
    GatewayClient,
    HttpTransport,
    ModelEndpoint,
    RecordingTransport,
    ReplayTransport,
)
from ..grid import GridSpec

COMPONENTS = ("interpreter", "classifier", "voter", "action")


@dataclass
class RunConfig:
    frame_width: int = 256
    frame_height: int = 256
    grid: GridSpec = field(default_factory=GridSpec)
    reach_distance: float = 1.5
    oracle_voter_count: int = 3  # mirrors the three-model voting panel

    gateway: GatewayClient | None = None
    interpreter_endpoint: ModelEndpoint | None = None
    classifier_endpoint: ModelEndpoint | None = None
    action_endpoint: ModelEndpoint | None = None
    voter_endpoints: tuple[ModelEndpoint, ...] = ()
    interpreter_temperature: float | None = None

    # mixed mode: which backend each component uses ("oracle" | "llm")
    components: dict[str, str] = field(default_factory=dict)

    # populated when a cassette is being recorded, so callers can save it
    recording: RecordingTransport | None = None
    cassette_path: str | None = None

    def component_choice(self, name: str, mode: str) -> str:
        if mode == "oracle":
            return "oracle"
        if mode == "llm":
            return "llm"
        choice = self.components.get(name, "oracle")
        if choice not in ("oracle", "llm"):
            raise ValueError(f"component {name}: unknown backend {choice!r}")
        return choice

    def save_recording(self) -> None:
        if self.recording is not None and self.cassette_path:
            self.recording.cassette.save(self.cassette_path)

    @classmethod
    def from_dict(cls, doc: dict) -> "RunConfig":
        cfg = cls()
        frame = doc.get("frame", {})
        cfg.frame_width = int(frame.get("width", cfg.frame_width))
        cfg.frame_height = int(frame.get("height", cfg.frame_height))
        grid = doc.get("grid", {})
        if grid:
            cfg.grid = GridSpec(
                columns=int(grid.get("columns", 8)), rows=int(grid.get("rows", 8))
            )
        cfg.reach_distance = float(doc.get("reach_distance", cfg.reach_distance))
        cfg.interpreter_temperature = doc.get("interpreter_temperature")

        endpoints = doc.get("endpoints", {})
        if "interpreter" in endpoints:
            cfg.interpreter_endpoint = ModelEndpoint.from_dict(endpoints["interpreter"])
        if "classifier" in endpoints:
            cfg.classifier_endpoint = ModelEndpoint.from_dict(endpoints["classifier"])
        if "action" in endpoints:
            cfg.action_endpoint = ModelEndpoint.from_dict(endpoints["action"])
        cfg.voter_endpoints = tuple(
            ModelEndpoint.from_dict(e) for e in endpoints.get("voters", [])
        )

        components = doc.get("components", {})
        unknown = set(components) - set(COMPONENTS)
        if unknown:
            raise ValueError(f"unknown component keys: {sorted(unknown)}")
        cfg.components = dict(components)

        cassette = doc.get("cassette")
        if cassette:
            cfg.cassette_path = cassette["path"]
            mode = cassette.get("mode", "replay")
            if mode == "replay":
                cfg.gateway = GatewayClient(
                    ReplayTransport(Cassette.load(cfg.cassette_path))
                )
            elif mode == "record":
                cfg.recording = RecordingTransport(HttpTransport())
                cfg.gateway = GatewayClient(cfg.recording)
            elif mode == "passthrough":
                cfg.gateway = GatewayClient(HttpTransport())
            else:
                raise ValueError(f"unknown cassette mode {mode!r}")
        return cfg

    @classmethod
    def from_file(cls, path: str | Path) -> "RunConfig":
        path = Path(path)
        if path.suffix == ".toml":
            try:
                import tomllib
            except ModuleNotFoundError as exc:  # Python 3.10
                raise RuntimeError(
                    "TOML configs need Python 3.11+; use the JSON form instead"
                ) from exc
            doc = tomllib.loads(path.read_text())
        else:
            doc = json.loads(path.read_text())
        return cls.from_dict(doc)

    def require_gateway(self) -> GatewayClient:
        if self.gateway is None:
            self.gateway = GatewayClient(HttpTransport())
        return self.gateway
