from __future__ import annotations

import itertools
import json
import time

import pytest

from navai.gateway import (
    Cassette,
    ChatResponse,
    GatewayClient,
    ModelEndpoint,
    ReplayTransport,
    ToolInvocation,
)
from navai.interpreter import SceneContext, TextualDescription, VisualInterpretation
from navai.nav import (
    ACTION_NAMES,
    ActionCall,
    ActionSubtype,
    Ballot,
    CategoryKind,
    ClassificationError,
    DecisionConfig,
    DecisionKind,
    GoalSubtype,
    GreedyOracleResolver,
    MappingError,
    NavCategory,
    NavQuery,
    OracleVoter,
    RuleClassifier,
    Vote,
    VoteOutcome,
    VoterDecision,
    VotingError,
    decide,
    resolve_action,
    tool_schema,
    validate_tool_invocation,
    vote_goal_reached,
)
from navai.world import Pose, Scene

from .conftest import make_box


def ctx_with(visual=(), textual=()) -> SceneContext:
    return SceneContext(
        visual=VisualInterpretation(tuple(visual)),
        textual=TextualDescription(tuple(textual)),
        frame_digest="0" * 64,
        produced_at=time.time(),
        timing=(0.0, 0.0),
    )


EMPTY_CTX = ctx_with()
BUS_CTX = ctx_with(visual=[("yellow bus", "D3")], textual=[("yellow bus", "long")])


class ScriptedVoter:
    def __init__(self, agent_id, outcome):
        self.agent_id = agent_id
        self.outcome = outcome

    def vote(self, query, ctx):
        if isinstance(self.outcome, Exception):
            raise self.outcome
        return self.outcome


# --- classification -----------------------------------------------------------


def test_where_am_i_is_semantic():
    cat = RuleClassifier().classify(NavQuery("Where am I?"), EMPTY_CTX)
    assert cat.kind is CategoryKind.SEMANTIC_INTERPRETER
    assert cat.serialized() == "SEMANTIC_INTERPRETER"


def test_move_forward_is_movement_executor():
    cat = RuleClassifier().classify(NavQuery("move forward"), EMPTY_CTX)
    assert cat.kind is CategoryKind.ACTION_NAVIGATOR
    assert cat.subtype is ActionSubtype.MOVEMENT_EXECUTOR


def test_turn_left_is_stability_executor():
    cat = RuleClassifier().classify(NavQuery("turn left"), EMPTY_CTX)
    assert cat.subtype is ActionSubtype.STABILITY_EXECUTOR


def test_goal_query_splits_on_target_visibility():
    query = NavQuery("I want to go to the yellow bus")
    absent = RuleClassifier().classify(query, EMPTY_CTX)
    present = RuleClassifier().classify(query, BUS_CTX)
    assert absent.kind is CategoryKind.GOAL_NAVIGATOR
    assert absent.subtype is GoalSubtype.EXPLORATORY
    assert present.subtype is GoalSubtype.DIRECT


@pytest.mark.parametrize(
    "sentence",
    [
        "Get to the back of the yellow bus and avoid hitting other cars, going around them.",
        "Walk through the doorway on the left and enter the bedroom.",
        "Walk over to the cannon on your right.",
    ],
)
def test_evaluation_sentences_classify_as_goals(sentence):
    cat = RuleClassifier().classify(NavQuery(sentence), EMPTY_CTX)
    assert cat.kind is CategoryKind.GOAL_NAVIGATOR


def test_category_invariants():
    with pytest.raises(ValueError):
        NavCategory(CategoryKind.SEMANTIC_INTERPRETER, GoalSubtype.DIRECT)
    with pytest.raises(ValueError):
        NavCategory(CategoryKind.ACTION_NAVIGATOR)
    with pytest.raises(ValueError):
        NavCategory(CategoryKind.GOAL_NAVIGATOR, ActionSubtype.MOVEMENT_EXECUTOR)


# --- voting ---------------------------------------------------------------------


def q() -> NavQuery:
    return NavQuery("go to the yellow bus")


def test_majority_of_three_reaches():
    agents = [
        ScriptedVoter("a", Vote.REACHED),
        ScriptedVoter("b", Vote.REACHED),
        ScriptedVoter("c", Vote.NOT_REACHED),
    ]
    outcome = vote_goal_reached(q(), BUS_CTX, agents)
    assert outcome.verdict is Vote.REACHED
    assert outcome.quorum_used == 3


def test_majority_not_reached():
    agents = [
        ScriptedVoter("a", Vote.NOT_REACHED),
        ScriptedVoter("b", Vote.NOT_REACHED),
        ScriptedVoter("c", Vote.REACHED),
    ]
    assert vote_goal_reached(q(), BUS_CTX, agents).verdict is Vote.NOT_REACHED


def test_degraded_quorum_still_reaches():
    agents = [
        ScriptedVoter("a", Vote.REACHED),
        ScriptedVoter("b", RuntimeError("model down")),
        ScriptedVoter("c", Vote.REACHED),
    ]
    outcome = vote_goal_reached(q(), BUS_CTX, agents)
    assert outcome.verdict is Vote.REACHED
    assert outcome.quorum_used == 2
    assert outcome.ballots[1].error is not None


def test_even_tie_keeps_navigating():
    agents = [ScriptedVoter("a", Vote.REACHED), ScriptedVoter("b", Vote.NOT_REACHED)]
    assert vote_goal_reached(q(), BUS_CTX, agents).verdict is Vote.NOT_REACHED


def test_all_agents_erroring_is_a_voting_error():
    agents = [ScriptedVoter(i, RuntimeError("x")) for i in "abc"]
    with pytest.raises(VotingError):
        vote_goal_reached(q(), BUS_CTX, agents)


def _expected_verdict(ballots):
    reached = ballots.count("R")
    not_reached = ballots.count("N")
    if reached + not_reached == 0:
        return None  # voting error
    return Vote.REACHED if reached > not_reached else Vote.NOT_REACHED


def test_all_27_three_ballot_combinations():
    for combo in itertools.product("RNE", repeat=3):
        agents = [
            ScriptedVoter(
                f"agent{i}",
                {"R": Vote.REACHED, "N": Vote.NOT_REACHED, "E": RuntimeError("boom")}[c],
            )
            for i, c in enumerate(combo)
        ]
        expected = _expected_verdict(list(combo))
        if expected is None:
            with pytest.raises(VotingError):
                vote_goal_reached(q(), BUS_CTX, agents)
        else:
            outcome = vote_goal_reached(q(), BUS_CTX, agents)
            assert outcome.verdict is expected, combo
            assert outcome.quorum_used == 3 - combo.count("E")


def test_verdict_invariant_under_ballot_permutation():
    for combo in itertools.permutations(["R", "R", "N"]):
        agents = [
            ScriptedVoter(f"a{i}", Vote.REACHED if c == "R" else Vote.NOT_REACHED)
            for i, c in enumerate(combo)
        ]
        assert vote_goal_reached(q(), BUS_CTX, agents).verdict is Vote.REACHED


def test_oracle_voter_uses_ground_truth_distance():
    target = make_box("bus", center=(5, 1.6, 0), size=(2, 2, 2), label="yellow bus")
    scene = Scene(
        name="s",
        bounds_min=(-20, 0, -20),
        bounds_max=(20, 8, 20),
        agent_start=Pose((0, 1.6, 0)),
        objects=(target,),
    )
    pose_holder = {"pose": Pose((0, 1.6, 0))}
    voter = OracleVoter(scene, lambda: pose_holder["pose"], "yellow bus", reach_distance=1.5)
    assert voter.vote(q(), BUS_CTX) is Vote.NOT_REACHED  # 4 units from the box
    pose_holder["pose"] = Pose((2.8, 1.6, 0))  # 1.2 units from the box face
    assert voter.vote(q(), BUS_CTX) is Vote.REACHED


# --- decide -------------------------------------------------------------------


class CountingVoter(ScriptedVoter):
    def __init__(self, agent_id, outcome):
        super().__init__(agent_id, outcome)
        self.calls = 0

    def vote(self, query, ctx):
        self.calls += 1
        return super().vote(query, ctx)


def _cfg(vote=Vote.NOT_REACHED):
    voters = [CountingVoter(f"v{i}", vote) for i in range(3)]
    return DecisionConfig(classifier=RuleClassifier(), voters=voters), voters


def test_turn_left_never_invokes_voting():
    cfg, voters = _cfg()
    decision = decide(NavQuery("turn left"), EMPTY_CTX, cfg)
    assert decision.kind is DecisionKind.ACTION_NAVIGATOR
    assert decision.vote is None
    assert all(v.calls == 0 for v in voters)


def test_semantic_query_never_invokes_voting():
    cfg, voters = _cfg()
    decision = decide(NavQuery("Where am I?"), EMPTY_CTX, cfg)
    assert decision.kind is DecisionKind.SEMANTIC_INTERPRETER
    assert all(v.calls == 0 for v in voters)


def test_goal_with_unanimous_reached_stops_navigation():
    cfg, voters = _cfg(vote=Vote.REACHED)
    decision = decide(NavQuery("go to the yellow bus"), BUS_CTX, cfg)
    assert decision.kind is DecisionKind.GOAL_REACHED
    assert decision.vote is not None and decision.vote.verdict is Vote.REACHED
    assert all(v.calls == 1 for v in voters)


def test_goal_with_unanimous_not_reached_progresses():
    cfg, _ = _cfg(vote=Vote.NOT_REACHED)
    decision = decide(NavQuery("go to the yellow bus"), BUS_CTX, cfg)
    assert decision.kind is DecisionKind.GOAL_PROGRESS


def test_decision_invariants():
    goal = NavCategory(CategoryKind.GOAL_NAVIGATOR, GoalSubtype.DIRECT)
    action = NavCategory(CategoryKind.ACTION_NAVIGATOR, ActionSubtype.MOVEMENT_EXECUTOR)
    outcome = VoteOutcome(Vote.REACHED, (Ballot("a", vote=Vote.REACHED),), 1)
    with pytest.raises(ValueError):
        VoterDecision(DecisionKind.GOAL_REACHED, goal)  # goal without vote
    with pytest.raises(ValueError):
        VoterDecision(DecisionKind.ACTION_NAVIGATOR, action, outcome)  # non-goal with vote


# --- tool schema and mapping -----------------------------------------------------


def test_tool_schema_has_exactly_eight_stable_entries():
    schema = tool_schema()
    assert len(schema) == 8
    assert [e["function"]["name"] for e in schema] == list(ACTION_NAMES)
    assert json.dumps(schema) == json.dumps(tool_schema())  # stable ordering


def test_move_forward_entry_declares_numeric_duration():
    entry = next(e for e in tool_schema() if e["function"]["name"] == "move_forward")
    duration = entry["function"]["parameters"]["properties"]["duration"]
    assert duration["type"] == "number"
    assert duration["maximum"] == 10


def test_scan_entry_has_zero_parameters():
    entry = next(e for e in tool_schema() if e["function"]["name"] == "scan_360")
    assert entry["function"]["parameters"]["properties"] == {}


def test_schema_names_round_trip_to_action_calls():
    for entry in tool_schema():
        name = entry["function"]["name"]
        call = validate_tool_invocation(
            ToolInvocation(name, {} if name == "scan_360" else {"duration": 1.0})
        )
        assert call.name == name


def test_missing_duration_defaults_to_two_seconds():
    call = validate_tool_invocation(ToolInvocation("move_forward", {}))
    assert call.duration == 2.0


@pytest.mark.parametrize(
    "invocation",
    [
        ToolInvocation("fly_up", {"duration": 2}),
        ToolInvocation("move_forward", {"duration": 0}),
        ToolInvocation("move_forward", {"duration": 11}),
        ToolInvocation("move_forward", {"duration": "fast"}),
        ToolInvocation("move_forward", {"duration": 2, "speed": 9}),
        ToolInvocation("scan_360", {"duration": 2}),
    ],
)
def test_bad_invocations_are_mapping_errors_with_raw_attached(invocation):
    with pytest.raises(MappingError) as err:
        validate_tool_invocation(invocation)
    assert err.value.raw is invocation


# --- greedy resolver ---------------------------------------------------------------


def _goal_decision() -> VoterDecision:
    return VoterDecision(
        DecisionKind.GOAL_PROGRESS,
        NavCategory(CategoryKind.GOAL_NAVIGATOR, GoalSubtype.DIRECT),
        VoteOutcome(Vote.NOT_REACHED, (Ballot("a", vote=Vote.NOT_REACHED),), 1),
    )


def _action_decision() -> VoterDecision:
    return VoterDecision(
        DecisionKind.ACTION_NAVIGATOR,
        NavCategory(CategoryKind.ACTION_NAVIGATOR, ActionSubtype.MOVEMENT_EXECUTOR),
    )


def test_greedy_target_in_rightmost_column_rotates_right():
    ctx = ctx_with(visual=[("cannon", "H5")])
    resolver = GreedyOracleResolver(target_label="cannon")
    call = resolver.resolve(NavQuery("walk over to the cannon"), ctx, _goal_decision())
    assert call == ActionCall("in_place_rotate_to_right", 0.5)


def test_greedy_target_left_of_center_rotates_left():
    ctx = ctx_with(visual=[("cannon", "B2")])
    call = GreedyOracleResolver("cannon").resolve(q(), ctx, _goal_decision())
    assert call == ActionCall("in_place_rotate_to_left", 0.5)


def test_greedy_centered_target_moves_forward():
    for col in ("D", "E"):
        ctx = ctx_with(visual=[("cannon", f"{col}4")])
        call = GreedyOracleResolver("cannon").resolve(q(), ctx, _goal_decision())
        assert call == ActionCall("move_forward", 1.0)


def test_greedy_absent_target_takes_scan_step():
    call = GreedyOracleResolver("cannon", rotation_step_deg=45).resolve(
        q(), EMPTY_CTX, _goal_decision()
    )
    assert call == ActionCall("in_place_rotate_to_left", 1.0)  # 45 deg at 45 deg/s


def test_greedy_maps_explicit_commands():
    call = GreedyOracleResolver().resolve(
        NavQuery("move forward"), EMPTY_CTX, _action_decision()
    )
    assert call == ActionCall("move_forward", 2.0)


def test_resolver_rejects_wrong_decision_kinds():
    semantic = VoterDecision(
        DecisionKind.SEMANTIC_INTERPRETER, NavCategory(CategoryKind.SEMANTIC_INTERPRETER)
    )
    with pytest.raises(ValueError):
        resolve_action(q(), EMPTY_CTX, semantic, GreedyOracleResolver())


# --- llm classifier over replay ------------------------------------------------------


def test_llm_classifier_parses_and_rejects():
    from navai.gateway import ChatMessage, ChatRequest, request_digest
    from navai.nav import LlmClassifier
    from navai.interpreter import context_to_prompt_block
    from navai.prompts import render_prompt

    ep = ModelEndpoint(base_url="http://x", model="cls")
    query = NavQuery("go to the yellow bus")
    prompt = render_prompt(
        "classify", query=query.text, context=context_to_prompt_block(BUS_CTX)
    )
    request = ChatRequest(messages=(ChatMessage("user", prompt),), temperature=0.0)

    cassette = Cassette()
    cassette.append(request_digest(ep, request), ChatResponse(text="GOAL_NAVIGATOR/Direct"))
    classifier = LlmClassifier(GatewayClient(ReplayTransport(cassette)), ep)
    cat = classifier.classify(query, BUS_CTX)
    assert cat.kind is CategoryKind.GOAL_NAVIGATOR
    assert cat.subtype is GoalSubtype.DIRECT

    garbage = Cassette()
    garbage.append(request_digest(ep, request), ChatResponse(text="hmm, hard to say"))
    classifier = LlmClassifier(GatewayClient(ReplayTransport(garbage)), ep)
    with pytest.raises(ClassificationError):
        classifier.classify(query, BUS_CTX)
