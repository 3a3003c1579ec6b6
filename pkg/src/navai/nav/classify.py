"""Query classification into the navigation taxonomy.

Two interchangeable backends: a deterministic keyword classifier for
oracle-mode runs and tests, and a model-backed classifier that is asked to
make exactly the same distinctions.
"""

from __future__ import annotations

from typing import Protocol

from ..gateway import ChatMessage, ChatRequest, GatewayClient, GatewayError, ModelEndpoint
from ..interpreter.context import SceneContext, context_to_prompt_block
from ..prompts import render_prompt
from .types import (
    ActionSubtype,
    CategoryKind,
    ClassificationError,
    GoalSubtype,
    NavCategory,
    NavQuery,
)

# Checked before action phrases: "move to the bus" is a goal, not a move.
GOAL_PHRASES = (
    "go to",
    "go over to",
    "get to",
    "walk to",
    "walk over",
    "walk through",
    "navigate to",
    "head to",
    "head over",
    "move to",
    "take me to",
    "bring me to",
    "find the",
    "find a",
    "reach the",
    "approach the",
    "enter the",
)

# First match wins, so longer/more specific phrases come first.
ACTION_PHRASES: tuple[tuple[str, str], ...] = (
    ("move forward", "move_forward"),
    ("go forward", "move_forward"),
    ("walk forward", "move_forward"),
    ("step forward", "move_forward"),
    ("move ahead", "move_forward"),
    ("move left", "move_left"),
    ("strafe left", "move_left"),
    ("step left", "move_left"),
    ("sidestep left", "move_left"),
    ("move right", "move_right"),
    ("strafe right", "move_right"),
    ("step right", "move_right"),
    ("sidestep right", "move_right"),
    ("turn left", "in_place_rotate_to_left"),
    ("rotate left", "in_place_rotate_to_left"),
    ("turn to the left", "in_place_rotate_to_left"),
    ("rotate to the left", "in_place_rotate_to_left"),
    ("turn right", "in_place_rotate_to_right"),
    ("rotate right", "in_place_rotate_to_right"),
    ("turn to the right", "in_place_rotate_to_right"),
    ("rotate to the right", "in_place_rotate_to_right"),
    ("look up", "look_up"),
    ("tilt up", "look_up"),
    ("look down", "look_down"),
    ("tilt down", "look_down"),
    ("scan", "scan_360"),
    ("look around", "scan_360"),
    ("survey the", "scan_360"),
    ("do a 360", "scan_360"),
)

MOVEMENT_SET = {"move_forward", "move_left", "move_right"}


def action_for_query(text: str) -> str | None:
    """Control function an explicit action request maps to, if any."""
    q = " ".join(text.lower().split())
    for phrase, action in ACTION_PHRASES:
        if phrase in q:
            return action
    return None


def _target_visible(text: str, ctx: SceneContext) -> bool:
    q = " ".join(text.lower().split())
    return any(label.lower() in q for label in ctx.visual.labels())


class ClassifierBackend(Protocol):
    def classify(self, query: NavQuery, ctx: SceneContext) -> NavCategory: ...


class RuleClassifier:
    """Deterministic pattern classifier mirroring the taxonomy definitions."""

    def classify(self, query: NavQuery, ctx: SceneContext) -> NavCategory:
        q = " ".join(query.text.lower().split())
        if any(phrase in q for phrase in GOAL_PHRASES):
            subtype = (
                GoalSubtype.DIRECT if _target_visible(q, ctx) else GoalSubtype.EXPLORATORY
            )
            return NavCategory(CategoryKind.GOAL_NAVIGATOR, subtype)
        action = action_for_query(q)
        if action is not None:
            subtype = (
                ActionSubtype.MOVEMENT_EXECUTOR
                if action in MOVEMENT_SET
                else ActionSubtype.STABILITY_EXECUTOR
            )
            return NavCategory(CategoryKind.ACTION_NAVIGATOR, subtype)
        return NavCategory(CategoryKind.SEMANTIC_INTERPRETER)


_CATEGORY_TOKENS: tuple[tuple[str, NavCategory], ...] = (
    ("GOAL_NAVIGATOR/DIRECT", NavCategory(CategoryKind.GOAL_NAVIGATOR, GoalSubtype.DIRECT)),
    (
        "GOAL_NAVIGATOR/EXPLORATORY",
        NavCategory(CategoryKind.GOAL_NAVIGATOR, GoalSubtype.EXPLORATORY),
    ),
    (
        "ACTION_NAVIGATOR/MOVEMENTEXECUTOR",
        NavCategory(CategoryKind.ACTION_NAVIGATOR, ActionSubtype.MOVEMENT_EXECUTOR),
    ),
    (
        "ACTION_NAVIGATOR/STABILITYEXECUTOR",
        NavCategory(CategoryKind.ACTION_NAVIGATOR, ActionSubtype.STABILITY_EXECUTOR),
    ),
    ("SEMANTIC_INTERPRETER", NavCategory(CategoryKind.SEMANTIC_INTERPRETER)),
)


class LlmClassifier:
    """Model-backed classifier with constrained-choice output."""

    def __init__(
        self,
        client: GatewayClient,
        endpoint: ModelEndpoint,
        temperature: float = 0.0,  # keep routing as deterministic as the model allows
    ):
        self.client = client
        self.endpoint = endpoint
        self.temperature = temperature

    def classify(self, query: NavQuery, ctx: SceneContext) -> NavCategory:
        prompt = render_prompt(
            "classify", query=query.text, context=context_to_prompt_block(ctx)
        )
        request = ChatRequest(
            messages=(ChatMessage("user", prompt),), temperature=self.temperature
        )
        try:
            response = self.client.complete(self.endpoint, request)
        except GatewayError as exc:
            raise ClassificationError(f"classifier call failed: {exc}") from exc
        if response.text is None:
            raise ClassificationError("classifier answered with a tool call")
        normalized = response.text.strip().upper().replace(" ", "")
        for token, category in _CATEGORY_TOKENS:
            if token in normalized:
                return category
        raise ClassificationError(
            f"unparseable category reply: {response.text.strip()[:120]!r}"
        )


def classify_category(
    query: NavQuery, ctx: SceneContext, backend: ClassifierBackend
) -> NavCategory:
    return backend.classify(query, ctx)
