"""Record/replay fixtures for model traffic.

A cassette is an ordered list of (request digest, canned response). Replay
consumes matching entries in recording order and performs zero network
activity; an unmatched digest is always an error, never a silent live call.
"""

from __future__ import annotations

import json
from collections import deque
from enum import Enum
from pathlib import Path

from .types import ChatRequest, ChatResponse, ModelEndpoint, ReplayMiss, request_digest


class CassetteMode(str, Enum):
    RECORD = "record"
    REPLAY = "replay"
    PASSTHROUGH = "passthrough"


class Cassette:
    def __init__(self, entries: list[tuple[str, dict]] | None = None):
        self.entries: list[tuple[str, dict]] = list(entries or [])

    def __len__(self) -> int:
        return len(self.entries)

    def append(self, digest: str, response: ChatResponse) -> None:
        self.entries.append((digest, response.to_dict()))

    def queues(self) -> dict[str, deque]:
        by_digest: dict[str, deque] = {}
        for digest, doc in self.entries:
            by_digest.setdefault(digest, deque()).append(doc)
        return by_digest

    def save(self, path: str | Path) -> None:
        doc = {
            "version": 1,
            "entries": [{"digest": d, "response": r} for d, r in self.entries],
        }
        Path(path).write_text(json.dumps(doc, indent=2, sort_keys=True))

    @classmethod
    def load(cls, path: str | Path) -> "Cassette":
        doc = json.loads(Path(path).read_text())
        return cls([(e["digest"], e["response"]) for e in doc["entries"]])


class ReplayTransport:
    """Serves recorded responses; raises ReplayMiss on anything unknown."""

    def __init__(self, cassette: Cassette):
        self._queues = cassette.queues()
        self.calls = 0

    def send(self, endpoint: ModelEndpoint, request: ChatRequest) -> ChatResponse:
        self.calls += 1
        digest = request_digest(endpoint, request)
        queue = self._queues.get(digest)
        if not queue:
            raise ReplayMiss(
                f"no recorded response for digest {digest[:12]}… "
                f"(model {endpoint.model}); re-record the cassette"
            )
        return ChatResponse.from_dict(queue.popleft())


class RecordingTransport:
    """Passes through to a live transport, taping every exchange."""

    def __init__(self, inner, cassette: Cassette | None = None):
        self.inner = inner
        self.cassette = cassette if cassette is not None else Cassette()

    def send(self, endpoint: ModelEndpoint, request: ChatRequest) -> ChatResponse:
        response = self.inner.send(endpoint, request)
        self.cassette.append(request_digest(endpoint, request), response)
        return response
