"""Scene interpretation: paired visual (grid cells) and textual context."""

from .backends import (
    InterpreterBackend,
    InterpreterError,
    LlmInterpreter,
    OracleInterpreter,
    interpret,
)
from .context import (
    EMPTY_SENTINEL,
    SceneContext,
    TextualDescription,
    VisualInterpretation,
    context_to_prompt_block,
)
from .overlay import label_scale, line_positions, overlay_grid

__all__ = [
    "EMPTY_SENTINEL",
    "InterpreterBackend",
    "InterpreterError",
    "LlmInterpreter",
    "OracleInterpreter",
    "SceneContext",
    "TextualDescription",
    "VisualInterpretation",
    "context_to_prompt_block",
    "interpret",
    "label_scale",
    "line_positions",
    "overlay_grid",
]
