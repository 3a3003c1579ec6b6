"""The turn loop: capture, interpret, decide, map, execute.

One turn is one decide call; scan rotations are turns of their own. The
loop stops when a decision terminates the task (semantic answer, single
action done, goal reached), on the turn cap, or on a component error —
whose diagnostic is attached to the report with all partial records kept.
"""

from __future__ import annotations

import time
from typing import Callable

from ..gateway import GatewayError
from ..interpreter import InterpreterError, interpret
from ..interpreter.context import EMPTY_SENTINEL, SceneContext
from ..nav import (
    ActionCall,
    ClassificationError,
    DecisionKind,
    MappingError,
    NavQuery,
    VotingError,
    action_for_query,
    decide,
    resolve_action,
)
from ..world import TURN_SPEED, apply_action, render, resolve_scene
from ..world.types import Pose, Scene
from .backends import ComponentBundle, build_bundle
from .config import RunConfig
from .task import TaskReport, TaskSpec, Termination, TurnRecord, TurnTimings

COMPONENT_ERRORS = (
    InterpreterError,
    ClassificationError,
    MappingError,
    VotingError,
    GatewayError,
)


def is_scan_task(spec: TaskSpec) -> bool:
    """A task whose query is an explicit full-circle survey request."""
    return action_for_query(spec.query) == "scan_360"


def _semantic_answer(ctx: SceneContext) -> str:
    if not ctx.textual.entries:
        return EMPTY_SENTINEL
    return "\n".join(
        f"{name}: {features}" if features else name
        for name, features in sorted(ctx.textual.entries)
    )


class TaskRunner:
    """Executes one task over a scene; owns the live pose (single writer)."""

    def __init__(
        self,
        spec: TaskSpec,
        config: RunConfig | None = None,
        scene: Scene | None = None,
        initial_pose: Pose | None = None,
        on_turn: Callable[[TurnRecord], None] | None = None,
        clock: Callable[[], float] = time.perf_counter,
    ):
        self.spec = spec
        self.config = config or RunConfig()
        self.scene = scene if scene is not None else resolve_scene(spec.scene)
        self.pose = initial_pose or self.scene.agent_start
        self.on_turn = on_turn
        self.clock = clock
        self.bundle: ComponentBundle = build_bundle(
            spec, self.scene, lambda: self.pose, self.config
        )
        self._records: list[TurnRecord] = []
        self._turn = 0
        self._rotations = 0

    # -- helpers ---------------------------------------------------------

    def _render_and_interpret(self) -> tuple[SceneContext, str]:
        frame = render(
            self.scene, self.pose, self.config.frame_width, self.config.frame_height
        )
        ctx = interpret(frame, self.bundle.interpreter, clock=self.clock)
        return ctx, ctx.frame_digest

    def _record(self, t0, decision, action, ctx, voter_s, action_s, digest) -> TurnRecord:
        wall = self.clock() - t0
        components = voter_s + ctx.visual_seconds + ctx.textual_seconds + action_s
        record = TurnRecord(
            index=self._turn,
            decision=decision,
            action=action,
            timings=TurnTimings(
                voter_s=voter_s,
                visual_s=ctx.visual_seconds,
                textual_s=ctx.textual_seconds,
                action_s=action_s,
                # concurrent interpretation can make per-half times overlap,
                # so totals never dip below the component sum
                total_s=max(wall, components),
            ),
            pose_after=self.pose,
            frame_digest=digest,
        )
        self._records.append(record)
        if self.on_turn is not None:
            self.on_turn(record)
        return record

    def _report(self, success, termination, answer=None, error=None) -> TaskReport:
        return TaskReport(
            spec=self.spec,
            success=success,
            turns=self._turn,
            records=self._records,
            termination=termination,
            rotations=self._rotations,
            answer=answer,
            error=error,
        )

    def _target_in_view(self, ctx: SceneContext) -> bool:
        label = self.spec.target_label
        return bool(label) and ctx.visual.cell_of(label) is not None

    # -- main loops --------------------------------------------------------

    def run(self) -> TaskReport:
        query = NavQuery(self.spec.query)
        try:
            while self._turn < self.spec.max_turns:
                self._turn += 1
                t0 = self.clock()
                ctx, digest = self._render_and_interpret()

                tv = self.clock()
                decision = decide(query, ctx, self.bundle.decision)
                voter_s = self.clock() - tv

                if decision.kind is DecisionKind.SEMANTIC_INTERPRETER:
                    self._record(t0, decision, None, ctx, voter_s, 0.0, digest)
                    return self._report(
                        True, Termination.GOAL_REACHED, answer=_semantic_answer(ctx)
                    )
                if decision.kind is DecisionKind.GOAL_REACHED:
                    # absorbing: nothing executes after a reached goal
                    self._record(t0, decision, None, ctx, voter_s, 0.0, digest)
                    return self._report(True, Termination.GOAL_REACHED)

                ta = self.clock()
                action = resolve_action(query, ctx, decision, self.bundle.resolver)
                if action.name != "scan_360":
                    self.pose = apply_action(self.scene, self.pose, action)
                action_s = self.clock() - ta
                self._record(t0, decision, action, ctx, voter_s, action_s, digest)

                if action.name == "scan_360":
                    goal_mode = decision.kind is DecisionKind.GOAL_PROGRESS
                    done = self._scan_loop(query, goal_mode=goal_mode)
                    if done is not None:
                        return done
                    if not goal_mode:
                        # the explicit scan command completed its circle
                        return self._report(True, Termination.GOAL_REACHED)
                    continue

                if decision.kind is DecisionKind.ACTION_NAVIGATOR:
                    # a basic command is a complete task once executed
                    return self._report(True, Termination.GOAL_REACHED)

            return self._report(False, Termination.MAX_TURNS)
        except COMPONENT_ERRORS as exc:
            return self._report(False, Termination.ERROR, error=f"{type(exc).__name__}: {exc}")

    def run_scan(self) -> TaskReport:
        """Dedicated full-circle survey protocol, one decide per rotation."""
        query = NavQuery(self.spec.query)
        try:
            done = self._scan_loop(query, goal_mode=False)
            if done is not None:
                return done
            return self._report(True, Termination.GOAL_REACHED)
        except COMPONENT_ERRORS as exc:
            return self._report(False, Termination.ERROR, error=f"{type(exc).__name__}: {exc}")

    def _scan_loop(self, query: NavQuery, goal_mode: bool) -> TaskReport | None:
        """Rotate step by step, deciding after each.

        Returns a finished report when the scan ends the whole task, or
        None when the scan is over but the surrounding goal loop should
        resume (the one-full-circle budget in goal mode).
        """
        step = ActionCall(
            "in_place_rotate_to_left", self.spec.rotation_step_deg / TURN_SPEED
        )
        steps_this_scan = 0
        while self._turn < self.spec.max_turns:
            self._turn += 1
            t0 = self.clock()

            ta = self.clock()
            self.pose = apply_action(self.scene, self.pose, step)
            action_s = self.clock() - ta
            steps_this_scan += 1
            self._rotations += 1

            ctx, digest = self._render_and_interpret()
            tv = self.clock()
            decision = decide(query, ctx, self.bundle.decision)
            voter_s = self.clock() - tv
            self._record(t0, decision, step, ctx, voter_s, action_s, digest)

            if decision.kind is DecisionKind.GOAL_REACHED:
                return self._report(True, Termination.GOAL_REACHED)

            if self.bundle.scan_stop_by_rotation:
                if self._target_in_view(ctx):
                    # declared target spotted: the survey part is over
                    return None if goal_mode else self._report(True, Termination.GOAL_REACHED)
                if steps_this_scan >= self.spec.scan_steps:
                    return None if goal_mode else self._report(True, Termination.GOAL_REACHED)
            else:
                if goal_mode and steps_this_scan >= self.spec.scan_steps:
                    return None  # full circle done; let the model pick the next move
                # standalone verdict-driven scans keep rotating until the
                # voters call it or the turn cap trips

        return self._report(False, Termination.MAX_TURNS)


def run_task(spec: TaskSpec, config: RunConfig | None = None) -> TaskReport:
    return TaskRunner(spec, config).run()


def run_scan(spec: TaskSpec, config: RunConfig | None = None) -> TaskReport:
    return TaskRunner(spec, config).run_scan()
