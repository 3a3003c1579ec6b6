"""Navigation decision engine: taxonomy, voting, decision-to-control mapping."""

from .actions import (
    ActionResolver,
    GreedyOracleResolver,
    LlmActionResolver,
    resolve_action,
    tool_schema,
    validate_tool_invocation,
)
from .classify import (
    ClassifierBackend,
    LlmClassifier,
    RuleClassifier,
    action_for_query,
    classify_category,
)
from .decide import DecisionConfig, decide
from .types import (
    ACTION_NAMES,
    DEFAULT_DURATION_S,
    MAX_DURATION_S,
    MOVEMENT_ACTIONS,
    STABILITY_ACTIONS,
    ActionCall,
    ActionSubtype,
    Ballot,
    CategoryKind,
    ClassificationError,
    DecisionKind,
    GoalSubtype,
    MappingError,
    NavCategory,
    NavQuery,
    Vote,
    VoteOutcome,
    VoterDecision,
    VotingError,
)
from .voting import LlmVoter, OracleVoter, VoterBackend, vote_goal_reached

__all__ = [
    "ACTION_NAMES",
    "ActionCall",
    "ActionResolver",
    "ActionSubtype",
    "Ballot",
    "CategoryKind",
    "ClassificationError",
    "ClassifierBackend",
    "DEFAULT_DURATION_S",
    "DecisionConfig",
    "DecisionKind",
    "GoalSubtype",
    "GreedyOracleResolver",
    "LlmActionResolver",
    "LlmClassifier",
    "LlmVoter",
    "MAX_DURATION_S",
    "MOVEMENT_ACTIONS",
    "MappingError",
    "NavCategory",
    "NavQuery",
    "OracleVoter",
    "RuleClassifier",
    "STABILITY_ACTIONS",
    "Vote",
    "VoteOutcome",
    "VoterBackend",
    "VoterDecision",
    "VotingError",
    "action_for_query",
    "classify_category",
    "decide",
    "resolve_action",
    "tool_schema",
    "validate_tool_invocation",
    "vote_goal_reached",
]
