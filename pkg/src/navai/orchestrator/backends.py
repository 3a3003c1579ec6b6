"""Assemble per-component backends for a task, honoring the run mode."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from ..interpreter import InterpreterBackend, LlmInterpreter, OracleInterpreter
from ..nav import (
    ActionResolver,
    DecisionConfig,
    GreedyOracleResolver,
    LlmActionResolver,
    LlmClassifier,
    LlmVoter,
    OracleVoter,
    RuleClassifier,
)
from ..world.types import Pose, Scene
from .config import RunConfig
from .task import TaskSpec


@dataclass
class ComponentBundle:
    interpreter: InterpreterBackend
    decision: DecisionConfig
    resolver: ActionResolver
    # ground-truth voters cannot judge scan completion, so scans then stop
    # on the rotation budget (or on the declared target entering the view)
    scan_stop_by_rotation: bool


def _need(endpoint, what: str):
    if endpoint is None:
        raise ValueError(f"llm backend for {what} requires an endpoint in the config")
    return endpoint


def build_bundle(
    spec: TaskSpec,
    scene: Scene,
    pose_fn: Callable[[], Pose],
    config: RunConfig,
) -> ComponentBundle:
    mode = spec.mode

    if config.component_choice("interpreter", mode) == "oracle":
        interpreter: InterpreterBackend = OracleInterpreter(
            scene, pose_fn, grid=config.grid
        )
    else:
        interpreter = LlmInterpreter(
            config.require_gateway(),
            _need(config.interpreter_endpoint, "interpreter"),
            grid=config.grid,
            temperature=config.interpreter_temperature,
        )

    if config.component_choice("classifier", mode) == "oracle":
        classifier = RuleClassifier()
    else:
        classifier = LlmClassifier(
            config.require_gateway(), _need(config.classifier_endpoint, "classifier")
        )

    voters_oracle = config.component_choice("voter", mode) == "oracle"
    if voters_oracle:
        voters = tuple(
            OracleVoter(
                scene,
                pose_fn,
                spec.target_label,
                reach_distance=config.reach_distance,
                agent_id=f"oracle-{i + 1}",
            )
            for i in range(config.oracle_voter_count)
        )
    else:
        if not config.voter_endpoints:
            raise ValueError("llm voting requires voter endpoints in the config")
        voters = tuple(
            LlmVoter(config.require_gateway(), ep) for ep in config.voter_endpoints
        )

    if config.component_choice("action", mode) == "oracle":
        resolver: ActionResolver = GreedyOracleResolver(
            target_label=spec.target_label,
            grid=config.grid,
            rotation_step_deg=spec.rotation_step_deg,
        )
    else:
        resolver = LlmActionResolver(
            config.require_gateway(), _need(config.action_endpoint, "action")
        )

    return ComponentBundle(
        interpreter=interpreter,
        decision=DecisionConfig(classifier=classifier, voters=voters),
        resolver=resolver,
        scan_stop_by_rotation=voters_oracle,
    )
