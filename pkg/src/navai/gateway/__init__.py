"""Transport layer for model calls: wire client, retries, record/replay."""

from .cassette import Cassette, CassetteMode, RecordingTransport, ReplayTransport
from .client import BACKOFF_BASE_S, BACKOFF_FACTOR, GatewayClient, HttpTransport, Transport
from .types import (
    AuthFailure,
    ChatMessage,
    ChatRequest,
    ChatResponse,
    GatewayError,
    GatewayTimeout,
    MalformedResponse,
    ModelEndpoint,
    ReplayMiss,
    ToolInvocation,
    TransportFailure,
    canonical_request,
    request_digest,
)

__all__ = [
    "AuthFailure",
    "BACKOFF_BASE_S",
    "BACKOFF_FACTOR",
    "Cassette",
    "CassetteMode",
    "ChatMessage",
    "ChatRequest",
    "ChatResponse",
    "GatewayClient",
    "GatewayError",
    "GatewayTimeout",
    "HttpTransport",
    "MalformedResponse",
    "ModelEndpoint",
    "RecordingTransport",
    "ReplayMiss",
    "ReplayTransport",
    "ToolInvocation",
    "Transport",
    "TransportFailure",
    "canonical_request",
    "request_digest",
]
