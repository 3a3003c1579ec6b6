"""Aggregated scene context: the paired visual and textual interpretation."""

from __future__ import annotations

from dataclasses import dataclass, field

from ..grid import GridSpec, is_valid_cell

EMPTY_SENTINEL = "no objects observed"
_HEADER = "Observed scene:"


@dataclass(frozen=True)
class VisualInterpretation:
    """(object label, grid cell) pairs, e.g. ("yellow bus", "D3")."""

    entries: tuple[tuple[str, str], ...]
    grid: GridSpec = field(default_factory=GridSpec)

    def __post_init__(self) -> None:
        object.__setattr__(self, "entries", tuple((str(a), str(b)) for a, b in self.entries))
        for label, cell in self.entries:
            if not is_valid_cell(cell, self.grid):
                raise ValueError(f"cell {cell!r} for {label!r} is not on the grid")

    def labels(self) -> list[str]:
        return [label for label, _ in self.entries]

    def cell_of(self, label: str) -> str | None:
        wanted = label.strip().lower()
        for have, cell in self.entries:
            lowered = have.lower()
            if wanted == lowered or wanted in lowered or lowered in wanted:
                return cell
        return None


@dataclass(frozen=True)
class TextualDescription:
    """(object name, feature text) pairs."""

    entries: tuple[tuple[str, str], ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "entries", tuple((str(a), str(b)) for a, b in self.entries))
        for name, _ in self.entries:
            if not name.strip():
                raise ValueError("object names must be non-empty")


@dataclass(frozen=True)
class SceneContext:
    visual: VisualInterpretation
    textual: TextualDescription
    frame_digest: str
    produced_at: float
    timing: tuple[float, float]  # (visual seconds, textual seconds)

    def __post_init__(self) -> None:
        if self.timing[0] < 0 or self.timing[1] < 0:
            raise ValueError("timing components must be non-negative")

    @property
    def visual_seconds(self) -> float:
        return self.timing[0]

    @property
    def textual_seconds(self) -> float:
        return self.timing[1]

    def to_dict(self) -> dict:
        return {
            "visual": [{"label": l, "cell": c} for l, c in self.visual.entries],
            "textual": [{"name": n, "features": f} for n, f in self.textual.entries],
            "frame_digest": self.frame_digest,
            "produced_at": self.produced_at,
            "timing": {"visual_s": self.timing[0], "textual_s": self.timing[1]},
        }

    @classmethod
    def from_dict(cls, doc: dict, grid: GridSpec | None = None) -> "SceneContext":
        return cls(
            visual=VisualInterpretation(
                tuple((e["label"], e["cell"]) for e in doc["visual"]),
                grid or GridSpec(),
            ),
            textual=TextualDescription(
                tuple((e["name"], e["features"]) for e in doc["textual"])
            ),
            frame_digest=doc["frame_digest"],
            produced_at=doc["produced_at"],
            timing=(doc["timing"]["visual_s"], doc["timing"]["textual_s"]),
        )


def context_to_prompt_block(ctx: SceneContext) -> str:
    """Stable plain-text serialization used inside every downstream prompt.

    Visual entries sort by (cell, label), textual by name, so the same
    context always produces the same block no matter how it was assembled.
    """
    lines = [_HEADER]
    if not ctx.visual.entries and not ctx.textual.entries:
        lines.append(f"  {EMPTY_SENTINEL}")
        return "\n".join(lines)
    if ctx.visual.entries:
        lines.append("Grid positions:")
        for label, cell in sorted(ctx.visual.entries, key=lambda e: (e[1], e[0])):
            lines.append(f"  {cell}: {label}")
    if ctx.textual.entries:
        lines.append("Descriptions:")
        for name, features in sorted(ctx.textual.entries, key=lambda e: e[0]):
            lines.append(f"  {name}: {features}" if features else f"  {name}")
    return "\n".join(lines)
