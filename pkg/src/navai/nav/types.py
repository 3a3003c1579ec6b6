"""Navigation domain types: queries, categories, control calls, votes."""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from enum import Enum

MOVEMENT_ACTIONS = ("move_forward", "move_left", "move_right")
STABILITY_ACTIONS = (
    "in_place_rotate_to_left",
    "in_place_rotate_to_right",
    "look_up",
    "look_down",
    "scan_360",
)
ACTION_NAMES = MOVEMENT_ACTIONS + STABILITY_ACTIONS

DEFAULT_DURATION_S = 2.0
MAX_DURATION_S = 10.0


class CategoryKind(str, Enum):
    SEMANTIC_INTERPRETER = "SEMANTIC_INTERPRETER"
    ACTION_NAVIGATOR = "ACTION_NAVIGATOR"
    GOAL_NAVIGATOR = "GOAL_NAVIGATOR"


class ActionSubtype(str, Enum):
    MOVEMENT_EXECUTOR = "MovementExecutor"
    STABILITY_EXECUTOR = "StabilityExecutor"


class GoalSubtype(str, Enum):
    DIRECT = "Direct"
    EXPLORATORY = "Exploratory"


class DecisionKind(str, Enum):
    SEMANTIC_INTERPRETER = "SEMANTIC_INTERPRETER"
    ACTION_NAVIGATOR = "ACTION_NAVIGATOR"
    GOAL_REACHED = "GOAL_REACHED"
    GOAL_PROGRESS = "GOAL_PROGRESS"


class Vote(str, Enum):
    REACHED = "REACHED"
    NOT_REACHED = "NOT_REACHED"


class ClassificationError(RuntimeError):
    """The classifier backend produced no usable category."""


class MappingError(RuntimeError):
    """A tool invocation could not be mapped to a valid control call."""

    def __init__(self, message: str, raw=None):
        self.raw = raw
        super().__init__(message if raw is None else f"{message} (raw: {raw!r})")


class VotingError(RuntimeError):
    """Every voting agent failed; no verdict is possible."""


@dataclass(frozen=True)
class NavQuery:
    text: str
    submitted_at: float = 0.0

    def __post_init__(self) -> None:
        if not self.text.strip():
            raise ValueError("query text is empty")
        if self.submitted_at == 0.0:
            object.__setattr__(self, "submitted_at", time.time())


@dataclass(frozen=True)
class NavCategory:
    kind: CategoryKind
    subtype: ActionSubtype | GoalSubtype | None = None

    def __post_init__(self) -> None:
        if self.kind is CategoryKind.SEMANTIC_INTERPRETER:
            if self.subtype is not None:
                raise ValueError("semantic queries carry no subtype")
        elif self.kind is CategoryKind.ACTION_NAVIGATOR:
            if not isinstance(self.subtype, ActionSubtype):
                raise ValueError("action category requires an executor subtype")
        elif self.kind is CategoryKind.GOAL_NAVIGATOR:
            if not isinstance(self.subtype, GoalSubtype):
                raise ValueError("goal category requires Direct or Exploratory")

    def serialized(self) -> str:
        if self.subtype is None:
            return self.kind.value
        return f"{self.kind.value}/{self.subtype.value}"


@dataclass(frozen=True)
class ActionCall:
    """Validated invocation of one basic control function."""

    name: str
    duration: float | None = None

    def __post_init__(self) -> None:
        if self.name not in ACTION_NAMES:
            raise ValueError(f"unknown action {self.name!r}")
        if self.name == "scan_360":
            if self.duration is not None:
                raise ValueError("scan_360 takes no duration")
        else:
            if self.duration is None:
                raise ValueError(f"{self.name} requires a duration")
            if not math.isfinite(self.duration) or not 0.0 < self.duration <= MAX_DURATION_S:
                raise ValueError(
                    f"duration must be in (0, {MAX_DURATION_S}], got {self.duration}"
                )

    def to_dict(self) -> dict:
        out: dict = {"name": self.name}
        if self.duration is not None:
            out["duration"] = self.duration
        return out


@dataclass(frozen=True)
class Ballot:
    agent_id: str
    vote: Vote | None = None
    error: str | None = None

    def __post_init__(self) -> None:
        if (self.vote is None) == (self.error is None):
            raise ValueError("a ballot is exactly one of: vote, error")


@dataclass(frozen=True)
class VoteOutcome:
    verdict: Vote
    ballots: tuple[Ballot, ...]
    quorum_used: int

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict.value,
            "quorum_used": self.quorum_used,
            "ballots": [
                {"agent": b.agent_id, "vote": b.vote.value if b.vote else None, "error": b.error}
                for b in self.ballots
            ],
        }


@dataclass(frozen=True)
class VoterDecision:
    kind: DecisionKind
    category: NavCategory
    vote: VoteOutcome | None = None

    def __post_init__(self) -> None:
        needs_vote = self.category.kind is CategoryKind.GOAL_NAVIGATOR
        if needs_vote and self.vote is None:
            raise ValueError("goal decisions must carry the vote outcome")
        if not needs_vote and self.vote is not None:
            raise ValueError("non-goal decisions never carry a vote")

    def to_dict(self) -> dict:
        return {
            "kind": self.kind.value,
            "category": self.category.serialized(),
            "vote": self.vote.to_dict() if self.vote else None,
        }
