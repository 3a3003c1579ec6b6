"""Control-function schema and decision-to-control mapping.

The eight basic actions are exposed to models as standard tool definitions;
whatever the model invokes is validated here before it can reach the
simulator. The greedy oracle resolver provides the deterministic
counterpart used in oracle-mode runs.
"""

from __future__ import annotations

from typing import Protocol

from ..gateway import (
    ChatMessage,
    ChatRequest,
    GatewayClient,
    GatewayError,
    ModelEndpoint,
    ToolInvocation,
)
from ..grid import GridSpec, parse_cell
from ..interpreter.context import SceneContext, context_to_prompt_block
from ..prompts import render_prompt
from ..world.kinematics import TURN_SPEED
from .classify import action_for_query
from .types import (
    ACTION_NAMES,
    DEFAULT_DURATION_S,
    MAX_DURATION_S,
    ActionCall,
    DecisionKind,
    MappingError,
    NavQuery,
    VoterDecision,
)

_DESCRIPTIONS = {
    "move_forward": "Walk straight ahead for the given number of seconds.",
    "move_left": "Sidestep to the left for the given number of seconds.",
    "move_right": "Sidestep to the right for the given number of seconds.",
    "in_place_rotate_to_left": "Turn left on the spot for the given number of seconds.",
    "in_place_rotate_to_right": "Turn right on the spot for the given number of seconds.",
    "look_up": "Tilt the view upward for the given number of seconds.",
    "look_down": "Tilt the view downward for the given number of seconds.",
    "scan_360": "Survey the surroundings with a full in-place circle.",
}


def tool_schema() -> list[dict]:
    """All eight control functions as tool definitions, in a stable order."""
    schema = []
    for name in ACTION_NAMES:
        if name == "scan_360":
            parameters = {"type": "object", "properties": {}, "required": []}
        else:
            parameters = {
                "type": "object",
                "properties": {
                    "duration": {
                        "type": "number",
                        "description": "seconds to keep the action running",
                        "exclusiveMinimum": 0,
                        "maximum": MAX_DURATION_S,
                    }
                },
                "required": ["duration"],
            }
        schema.append(
            {
                "type": "function",
                "function": {
                    "name": name,
                    "description": _DESCRIPTIONS[name],
                    "parameters": parameters,
                },
            }
        )
    return schema


def validate_tool_invocation(invocation: ToolInvocation) -> ActionCall:
    """Model output -> validated ActionCall.

    A missing duration falls back to the 2-second default; everything else
    out of contract is an error carrying the raw invocation.
    """
    if invocation.name not in ACTION_NAMES:
        raise MappingError(f"unknown control function {invocation.name!r}", raw=invocation)
    args = dict(invocation.arguments)
    if invocation.name == "scan_360":
        if args:
            raise MappingError("scan_360 takes no parameters", raw=invocation)
        return ActionCall("scan_360")
    duration = args.pop("duration", None)
    if args:
        raise MappingError(f"unexpected parameters {sorted(args)}", raw=invocation)
    if duration is None:
        duration = DEFAULT_DURATION_S
    if isinstance(duration, bool) or not isinstance(duration, (int, float)):
        raise MappingError(f"duration must be a number, got {duration!r}", raw=invocation)
    try:
        return ActionCall(invocation.name, float(duration))
    except ValueError as exc:
        raise MappingError(str(exc), raw=invocation) from exc


class ActionResolver(Protocol):
    def resolve(
        self, query: NavQuery, ctx: SceneContext, decision: VoterDecision
    ) -> ActionCall: ...


class GreedyOracleResolver:
    """Deterministic controller for oracle-mode runs.

    Explicit action requests map by keyword. Goal progress steers at the
    declared target's grid cell: rotate toward it while it sits off-center,
    walk forward while centered, and take the next scan rotation step while
    it is not in view at all.
    """

    ROTATE_NUDGE_S = 0.5
    FORWARD_STEP_S = 1.0

    def __init__(
        self,
        target_label: str | None = None,
        grid: GridSpec | None = None,
        rotation_step_deg: float = 45.0,
    ):
        self.target_label = target_label
        self.grid = grid or GridSpec()
        self.rotation_step_deg = rotation_step_deg

    def resolve(
        self, query: NavQuery, ctx: SceneContext, decision: VoterDecision
    ) -> ActionCall:
        if decision.kind is DecisionKind.ACTION_NAVIGATOR:
            name = action_for_query(query.text)
            if name is None:
                raise MappingError(
                    f"no control function matches {query.text!r}", raw=query.text
                )
            if name == "scan_360":
                return ActionCall("scan_360")
            return ActionCall(name, DEFAULT_DURATION_S)

        cell = ctx.visual.cell_of(self.target_label) if self.target_label else None
        if cell is None:
            # target not in view: next scan rotation step
            return ActionCall("in_place_rotate_to_left", self.rotation_step_deg / TURN_SPEED)
        col, _row = parse_cell(cell, self.grid)
        center_lo = (self.grid.columns - 1) // 2
        center_hi = self.grid.columns // 2
        if col < center_lo:
            return ActionCall("in_place_rotate_to_left", self.ROTATE_NUDGE_S)
        if col > center_hi:
            return ActionCall("in_place_rotate_to_right", self.ROTATE_NUDGE_S)
        return ActionCall("move_forward", self.FORWARD_STEP_S)


class LlmActionResolver:
    """Hands the tool schema to the model and validates its invocation."""

    def __init__(
        self,
        client: GatewayClient,
        endpoint: ModelEndpoint,
        temperature: float | None = None,
    ):
        self.client = client
        self.endpoint = endpoint
        self.temperature = temperature

    def resolve(
        self, query: NavQuery, ctx: SceneContext, decision: VoterDecision
    ) -> ActionCall:
        prompt = render_prompt(
            "action", query=query.text, context=context_to_prompt_block(ctx)
        )
        request = ChatRequest(
            messages=(ChatMessage("user", prompt),),
            tools=tuple(tool_schema()),
            temperature=self.temperature,
        )
        try:
            response = self.client.complete(self.endpoint, request)
        except GatewayError as exc:
            raise MappingError(f"action call failed: {exc}") from exc
        if response.tool_call is None:
            raise MappingError("model answered with text instead of a tool call", raw=response.text)
        return validate_tool_invocation(response.tool_call)


def resolve_action(
    query: NavQuery,
    ctx: SceneContext,
    decision: VoterDecision,
    backend: ActionResolver,
) -> ActionCall:
    if decision.kind not in (DecisionKind.ACTION_NAVIGATOR, DecisionKind.GOAL_PROGRESS):
        raise ValueError(f"no action to resolve for {decision.kind.value}")
    return backend.resolve(query, ctx, decision)
