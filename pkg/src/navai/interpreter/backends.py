"""Interpretation backends: simulator ground truth or a vision model.

Both produce the same pair of halves — grid coordinates and textual
descriptions — which `interpret` times and aggregates into a SceneContext.
"""

from __future__ import annotations

import json
import random
import time
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Protocol

from ..gateway import ChatMessage, ChatRequest, GatewayClient, GatewayError, ModelEndpoint
from ..grid import GridSpec, all_cells, cell_name, parse_cell
from ..prompts import render_prompt
from ..world.types import Frame, Pose, Scene
from ..world.visibility import visible_objects
from .context import SceneContext, TextualDescription, VisualInterpretation
from .overlay import overlay_grid

Entries = list[tuple[str, str]]


class InterpreterError(RuntimeError):
    """One half of the interpretation failed; `half` says which."""

    def __init__(self, half: str, message: str):
        self.half = half
        super().__init__(f"{half} interpretation failed: {message}")


class InterpreterBackend(Protocol):
    grid: GridSpec
    concurrent: bool

    def visual(self, frame: Frame) -> Entries: ...

    def textual(self, frame: Frame) -> Entries: ...


class OracleInterpreter:
    """Ground-truth backend wrapping the simulator's visibility query.

    Optional seeded noise exercises robustness paths: each visible object
    may be dropped with probability `drop_p`, and a reported cell shifted
    one column with probability `perturb_p`. The random stream is keyed by
    (seed, frame digest), so identical scene+pose stays deterministic.
    """

    concurrent = False

    def __init__(
        self,
        scene: Scene,
        pose_fn: Callable[[], Pose],
        grid: GridSpec | None = None,
        drop_p: float = 0.0,
        perturb_p: float = 0.0,
        seed: int = 0,
    ):
        self.scene = scene
        self.pose_fn = pose_fn
        self.grid = grid or GridSpec()
        self.drop_p = drop_p
        self.perturb_p = perturb_p
        self.seed = seed

    def _observed(self, frame: Frame) -> list[tuple[str, str, tuple[str, ...]]]:
        rng = random.Random(f"{self.seed}:{frame.digest()}")
        out = []
        for obj, cell, _dist in visible_objects(self.scene, self.pose_fn(), self.grid):
            dropped = rng.random() < self.drop_p
            perturbed = rng.random() < self.perturb_p
            direction = 1 if rng.random() < 0.5 else -1
            if dropped:
                continue
            if perturbed:
                col, row = parse_cell(cell, self.grid)
                col = min(max(col + direction, 0), self.grid.columns - 1)
                cell = cell_name(col, row)
            out.append((obj.label, cell, obj.features))
        return out

    def visual(self, frame: Frame) -> Entries:
        return [(label, cell) for label, cell, _ in self._observed(frame)]

    def textual(self, frame: Frame) -> Entries:
        return [(label, ", ".join(features)) for label, _, features in self._observed(frame)]


def _extract_entries(raw: str, half: str) -> Entries:
    """Pull the first JSON array of pairs out of a model reply."""
    text = raw.strip()
    try:
        doc = json.loads(text)
    except json.JSONDecodeError:
        start, end = text.find("["), text.rfind("]")
        if start < 0 or end <= start:
            raise InterpreterError(half, f"no JSON array in reply: {text[:120]!r}")
        try:
            doc = json.loads(text[start : end + 1])
        except json.JSONDecodeError as exc:
            raise InterpreterError(half, f"unparseable JSON array: {exc}")
    if not isinstance(doc, list):
        raise InterpreterError(half, "reply is not a JSON array")
    entries: Entries = []
    for item in doc:
        if isinstance(item, (list, tuple)) and len(item) == 2:
            entries.append((str(item[0]), str(item[1])))
        elif isinstance(item, dict):
            name = item.get("name") or item.get("label") or item.get("object")
            value = item.get("cell") if "cell" in item else item.get("features")
            if isinstance(value, list):
                value = ", ".join(str(v) for v in value)
            if name is None or value is None:
                raise InterpreterError(half, f"entry missing fields: {item!r}")
            entries.append((str(name), str(value)))
        else:
            raise InterpreterError(half, f"unexpected entry shape: {item!r}")
    return entries


class LlmInterpreter:
    """Vision-model backend: two requests, one per half.

    The textual pass sees the clean frame; the visual pass sees the frame
    with the grid overlay. The two requests are independent and may run
    concurrently.
    """

    concurrent = True

    def __init__(
        self,
        client: GatewayClient,
        endpoint: ModelEndpoint,
        grid: GridSpec | None = None,
        temperature: float | None = None,
    ):
        self.client = client
        self.endpoint = endpoint
        self.grid = grid or GridSpec()
        self.temperature = temperature

    def _ask(self, prompt: str, image: Frame, half: str) -> str:
        request = ChatRequest(
            messages=(ChatMessage("user", prompt, image.to_png()),),
            temperature=self.temperature,
        )
        try:
            response = self.client.complete(self.endpoint, request)
        except GatewayError as exc:
            raise InterpreterError(half, str(exc)) from exc
        if response.text is None:
            raise InterpreterError(half, "model answered with a tool call, not text")
        return response.text

    def visual(self, frame: Frame) -> Entries:
        overlaid = overlay_grid(frame, self.grid)
        prompt = render_prompt(
            "interpret_visual", grid_labels=", ".join(all_cells(self.grid))
        )
        entries = _extract_entries(self._ask(prompt, overlaid, "visual"), "visual")
        return [(label, cell.strip().upper()) for label, cell in entries]

    def textual(self, frame: Frame) -> Entries:
        prompt = render_prompt("interpret_textual")
        return _extract_entries(self._ask(prompt, frame, "textual"), "textual")


def interpret(
    frame: Frame,
    backend: InterpreterBackend,
    clock: Callable[[], float] = time.perf_counter,
) -> SceneContext:
    """Produce the aggregated SceneContext for one frame, timing each half."""

    def run_visual() -> tuple[VisualInterpretation, float]:
        started = clock()
        try:
            entries = backend.visual(frame)
            visual = VisualInterpretation(tuple(entries), backend.grid)
        except InterpreterError:
            raise
        except ValueError as exc:
            raise InterpreterError("visual", str(exc)) from exc
        return visual, clock() - started

    def run_textual() -> tuple[TextualDescription, float]:
        started = clock()
        try:
            textual = TextualDescription(tuple(backend.textual(frame)))
        except InterpreterError:
            raise
        except ValueError as exc:
            raise InterpreterError("textual", str(exc)) from exc
        return textual, clock() - started

    if backend.concurrent:
        with ThreadPoolExecutor(max_workers=2) as pool:
            visual_future = pool.submit(run_visual)
            textual_future = pool.submit(run_textual)
            visual, visual_s = visual_future.result()
            textual, textual_s = textual_future.result()
    else:
        visual, visual_s = run_visual()
        textual, textual_s = run_textual()

    return SceneContext(
        visual=visual,
        textual=textual,
        frame_digest=frame.digest(),
        produced_at=time.time(),
        timing=(visual_s, textual_s),
    )
