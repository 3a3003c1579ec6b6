"""Decision flow for one navigation turn.

Semantic and explicit-action queries return straight away; goal queries put
the completion question to the voting agents, stopping navigation on a
REACHED verdict and continuing otherwise.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from ..interpreter.context import SceneContext
from .classify import ClassifierBackend, classify_category
from .types import CategoryKind, DecisionKind, NavQuery, Vote, VoterDecision
from .voting import VoterBackend, vote_goal_reached


@dataclass
class DecisionConfig:
    classifier: ClassifierBackend
    voters: Sequence[VoterBackend] = field(default_factory=tuple)
    concurrent_votes: bool = True


def decide(query: NavQuery, ctx: SceneContext, cfg: DecisionConfig) -> VoterDecision:
    category = classify_category(query, ctx, cfg.classifier)

    if category.kind is CategoryKind.SEMANTIC_INTERPRETER:
        return VoterDecision(DecisionKind.SEMANTIC_INTERPRETER, category)
    if category.kind is CategoryKind.ACTION_NAVIGATOR:
        return VoterDecision(DecisionKind.ACTION_NAVIGATOR, category)

    outcome = vote_goal_reached(query, ctx, cfg.voters, concurrent=cfg.concurrent_votes)
    if outcome.verdict is Vote.REACHED:
        return VoterDecision(DecisionKind.GOAL_REACHED, category, outcome)
    return VoterDecision(DecisionKind.GOAL_PROGRESS, category, outcome)
