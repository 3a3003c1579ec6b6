"""Wire-level types for chat-completion + tool-call model endpoints."""

from __future__ import annotations

import base64
import hashlib
import json
from dataclasses import dataclass, field


class GatewayError(RuntimeError):
    """Base for transport-level failures; `retryable` drives the retry loop."""

    retryable = False


class TransportFailure(GatewayError):
    retryable = True


class GatewayTimeout(GatewayError):
    retryable = True


class AuthFailure(GatewayError):
    retryable = False


class MalformedResponse(GatewayError):
    retryable = False


class ReplayMiss(GatewayError):
    retryable = False


@dataclass(frozen=True)
class ModelEndpoint:
    """Where and how to reach one model; auth comes from the environment."""

    base_url: str
    model: str
    auth_env: str = ""
    timeout_s: float = 30.0
    max_retries: int = 2

    def __post_init__(self) -> None:
        if self.timeout_s <= 0:
            raise ValueError("timeout must be positive")
        if self.max_retries < 0:
            raise ValueError("max_retries must be non-negative")

    @classmethod
    def from_dict(cls, doc: dict) -> "ModelEndpoint":
        return cls(
            base_url=doc["base_url"],
            model=doc["model"],
            auth_env=doc.get("auth_env", ""),
            timeout_s=float(doc.get("timeout_s", 30.0)),
            max_retries=int(doc.get("max_retries", 2)),
        )


@dataclass(frozen=True)
class ChatMessage:
    role: str
    text: str
    image_png: bytes | None = None


@dataclass(frozen=True)
class ChatRequest:
    messages: tuple[ChatMessage, ...]
    tools: tuple[dict, ...] | None = None
    temperature: float | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "messages", tuple(self.messages))
        if self.tools is not None:
            object.__setattr__(self, "tools", tuple(self.tools))


@dataclass(frozen=True)
class ToolInvocation:
    name: str
    arguments: dict = field(default_factory=dict)


@dataclass(frozen=True)
class ChatResponse:
    """Exactly one of `text` / `tool_call`; transport errors raise instead."""

    text: str | None = None
    tool_call: ToolInvocation | None = None
    latency_s: float = 0.0
    prompt_tokens: int | None = None
    completion_tokens: int | None = None

    def __post_init__(self) -> None:
        if (self.text is None) == (self.tool_call is None):
            raise ValueError("a response is exactly one of: text, tool invocation")

    def to_dict(self) -> dict:
        return {
            "text": self.text,
            "tool_call": (
                {"name": self.tool_call.name, "arguments": self.tool_call.arguments}
                if self.tool_call
                else None
            ),
            "latency_s": self.latency_s,
            "prompt_tokens": self.prompt_tokens,
            "completion_tokens": self.completion_tokens,
        }

    @classmethod
    def from_dict(cls, doc: dict) -> "ChatResponse":
        call = doc.get("tool_call")
        return cls(
            text=doc.get("text"),
            tool_call=ToolInvocation(call["name"], dict(call.get("arguments", {})))
            if call
            else None,
            latency_s=float(doc.get("latency_s", 0.0)),
            prompt_tokens=doc.get("prompt_tokens"),
            completion_tokens=doc.get("completion_tokens"),
        )


def canonical_request(model: str, request: ChatRequest) -> str:
    """Stable serialization of (model id, request) used for digests.

    Images are folded in as base64 so prompt or frame changes deliberately
    invalidate stale recordings.
    """
    doc = {
        "model": model,
        "temperature": request.temperature,
        "tools": list(request.tools) if request.tools is not None else None,
        "messages": [
            {
                "role": m.role,
                "text": m.text,
                "image": base64.b64encode(m.image_png).decode("ascii")
                if m.image_png
                else None,
            }
            for m in request.messages
        ],
    }
    return json.dumps(doc, sort_keys=True, separators=(",", ":"))


def request_digest(endpoint: ModelEndpoint, request: ChatRequest) -> str:
    return hashlib.sha256(canonical_request(endpoint.model, request).encode()).hexdigest()
