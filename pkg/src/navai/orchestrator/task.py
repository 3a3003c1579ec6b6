"""Task definitions, per-turn telemetry, and end-of-task reports."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path

from ..nav.types import ActionCall, VoterDecision
from ..world.types import Pose

TIMING_COLUMNS = ("voter_s", "visual_s", "textual_s", "action_s", "total_s")


class Mode(str, Enum):
    ORACLE = "oracle"
    LLM = "llm"
    MIXED = "mixed"


class Termination(str, Enum):
    GOAL_REACHED = "GOAL_REACHED"
    MAX_TURNS = "max_turns"
    ERROR = "error"


@dataclass(frozen=True)
class TaskSpec:
    scene: str
    query: str
    mode: str = Mode.ORACLE.value
    target_label: str | None = None
    max_turns: int = 25
    rotation_step_deg: float = 45.0

    def __post_init__(self) -> None:
        if self.max_turns < 1:
            raise ValueError("max_turns must be at least 1")
        Mode(self.mode)  # raises on unknown modes
        steps = 360.0 / self.rotation_step_deg
        if abs(steps - round(steps)) > 1e-9:
            raise ValueError("rotation step must divide 360 degrees")

    @property
    def scan_steps(self) -> int:
        return round(360.0 / self.rotation_step_deg)

    def to_dict(self) -> dict:
        return {
            "scene": self.scene,
            "query": self.query,
            "mode": self.mode,
            "target_label": self.target_label,
            "max_turns": self.max_turns,
            "rotation_step": self.rotation_step_deg,
        }

    @classmethod
    def from_dict(cls, doc: dict) -> "TaskSpec":
        return cls(
            scene=doc["scene"],
            query=doc["query"],
            mode=doc.get("mode", Mode.ORACLE.value),
            target_label=doc.get("target_label"),
            max_turns=int(doc.get("max_turns", 25)),
            rotation_step_deg=float(doc.get("rotation_step", 45.0)),
        )

    @classmethod
    def from_file(cls, path: str | Path) -> "TaskSpec":
        return cls.from_dict(json.loads(Path(path).read_text()))


@dataclass(frozen=True)
class TurnTimings:
    voter_s: float = 0.0
    visual_s: float = 0.0
    textual_s: float = 0.0
    action_s: float = 0.0
    total_s: float = 0.0

    @property
    def components_sum(self) -> float:
        return self.voter_s + self.visual_s + self.textual_s + self.action_s

    @property
    def overhead_s(self) -> float:
        """Framework time not attributed to any component."""
        return self.total_s - self.components_sum

    def to_dict(self) -> dict:
        return {name: getattr(self, name) for name in TIMING_COLUMNS}


@dataclass(frozen=True)
class TurnRecord:
    index: int  # 1-based; scan rotation steps count as turns of their own
    decision: VoterDecision
    action: ActionCall | None
    timings: TurnTimings
    pose_after: Pose
    frame_digest: str

    def to_dict(self) -> dict:
        return {
            "turn": self.index,
            "decision": self.decision.to_dict(),
            "action": self.action.to_dict() if self.action else None,
            "timings": self.timings.to_dict(),
            "pose_after": self.pose_after.to_dict(),
            "frame_digest": self.frame_digest,
        }


@dataclass
class TaskReport:
    spec: TaskSpec
    success: bool
    turns: int
    records: list[TurnRecord] = field(default_factory=list)
    termination: Termination = Termination.ERROR
    rotations: int = 0  # scan tasks: completed rotation steps
    answer: str | None = None  # semantic queries: the textual context served back
    error: str | None = None

    @property
    def averages(self) -> dict[str, float]:
        """Arithmetic mean of each timing column over the recorded turns."""
        if not self.records:
            return {name: 0.0 for name in TIMING_COLUMNS}
        n = len(self.records)
        return {
            name: sum(getattr(r.timings, name) for r in self.records) / n
            for name in TIMING_COLUMNS
        }

    def to_dict(self) -> dict:
        return {
            "task": self.spec.to_dict(),
            "success": self.success,
            "turns": self.turns,
            "termination": self.termination.value,
            "rotations": self.rotations,
            "answer": self.answer,
            "error": self.error,
            "averages": self.averages,
            "records": [r.to_dict() for r in self.records],
        }

    def save(self, path: str | Path) -> None:
        Path(path).write_text(json.dumps(self.to_dict(), indent=2))
