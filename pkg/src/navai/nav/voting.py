"""Goal-completion voting across several independent agents.

Each agent answers REACHED or NOT_REACHED for (query, context); the verdict
is the strict majority of the ballots that came back. Agent failures shrink
the quorum instead of aborting, a tie keeps navigating, and only a total
wipeout is an error.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from typing import Protocol, Sequence

from ..gateway import ChatMessage, ChatRequest, GatewayClient, ModelEndpoint
from ..interpreter.context import SceneContext, context_to_prompt_block
from ..prompts import render_prompt
from ..world.types import Pose, Scene, Vec3
from .types import Ballot, NavQuery, Vote, VoteOutcome, VotingError


class VoterBackend(Protocol):
    agent_id: str

    def vote(self, query: NavQuery, ctx: SceneContext) -> Vote: ...


def vote_goal_reached(
    query: NavQuery,
    ctx: SceneContext,
    agents: Sequence[VoterBackend],
    concurrent: bool = True,
) -> VoteOutcome:
    if not agents:
        raise ValueError("voting needs at least one agent")

    def ballot_for(agent: VoterBackend) -> Ballot:
        try:
            return Ballot(agent_id=agent.agent_id, vote=agent.vote(query, ctx))
        except Exception as exc:  # any agent failure becomes an error ballot
            return Ballot(agent_id=agent.agent_id, error=f"{type(exc).__name__}: {exc}")

    if concurrent and len(agents) > 1:
        with ThreadPoolExecutor(max_workers=len(agents)) as pool:
            ballots = tuple(pool.map(ballot_for, agents))
    else:
        ballots = tuple(ballot_for(agent) for agent in agents)

    reached = sum(1 for b in ballots if b.vote is Vote.REACHED)
    not_reached = sum(1 for b in ballots if b.vote is Vote.NOT_REACHED)
    quorum = reached + not_reached
    if quorum == 0:
        raise VotingError(
            "all voting agents failed: " + "; ".join(b.error or "?" for b in ballots)
        )
    # strict majority; an even split keeps navigating
    verdict = Vote.REACHED if reached > not_reached else Vote.NOT_REACHED
    return VoteOutcome(verdict=verdict, ballots=ballots, quorum_used=quorum)


def horizontal_distance_to_box(point: Vec3, box_min: Vec3, box_max: Vec3) -> float:
    """Ground-plane distance from a point to an axis-aligned box (0 inside)."""
    dx = max(box_min[0] - point[0], 0.0, point[0] - box_max[0])
    dz = max(box_min[2] - point[2], 0.0, point[2] - box_max[2])
    return math.hypot(dx, dz)


class OracleVoter:
    """Ground-truth judge: REACHED once the agent stands next to the target.

    "Next to" means the horizontal distance to the target's box is within
    `reach_distance`, comfortably above the collision standoff, so every
    approach direction can satisfy it. With no declared target it always
    votes NOT_REACHED.
    """

    def __init__(
        self,
        scene: Scene,
        pose_fn,
        target_label: str | None,
        reach_distance: float = 1.5,
        agent_id: str = "oracle",
    ):
        self.scene = scene
        self.pose_fn = pose_fn
        self.target_label = target_label
        self.reach_distance = reach_distance
        self.agent_id = agent_id

    def vote(self, query: NavQuery, ctx: SceneContext) -> Vote:
        if not self.target_label:
            return Vote.NOT_REACHED
        target = self.scene.find_by_label(self.target_label)
        if target is None:
            return Vote.NOT_REACHED
        pose: Pose = self.pose_fn()
        distance = horizontal_distance_to_box(pose.position, target.box_min, target.box_max)
        return Vote.REACHED if distance <= self.reach_distance else Vote.NOT_REACHED


class LlmVoter:
    """Model-backed judge; any reply other than the two tokens is an error."""

    def __init__(
        self,
        client: GatewayClient,
        endpoint: ModelEndpoint,
        agent_id: str | None = None,
        temperature: float = 0.0,
    ):
        self.client = client
        self.endpoint = endpoint
        self.agent_id = agent_id or endpoint.model
        self.temperature = temperature

    def vote(self, query: NavQuery, ctx: SceneContext) -> Vote:
        prompt = render_prompt(
            "vote", query=query.text, context=context_to_prompt_block(ctx)
        )
        request = ChatRequest(
            messages=(ChatMessage("user", prompt),), temperature=self.temperature
        )
        response = self.client.complete(self.endpoint, request)
        if response.text is None:
            raise ValueError("voter answered with a tool call")
        token = response.text.strip().upper()
        if token == "NOT_REACHED":
            return Vote.NOT_REACHED
        if token == "REACHED":
            return Vote.REACHED
        raise ValueError(f"unparseable verdict {response.text.strip()[:60]!r}")
