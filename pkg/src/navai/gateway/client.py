"""Chat-completion client: HTTP transport, retry loop, concurrent fan-out."""

from __future__ import annotations

import base64
import json
import os
import random
import time
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Protocol, Sequence

import httpx

from .types import (
    AuthFailure,
    ChatMessage,
    ChatRequest,
    ChatResponse,
    GatewayError,
    GatewayTimeout,
    MalformedResponse,
    ModelEndpoint,
    ToolInvocation,
    TransportFailure,
)

BACKOFF_BASE_S = 1.0
BACKOFF_FACTOR = 2.0


class Transport(Protocol):
    def send(self, endpoint: ModelEndpoint, request: ChatRequest) -> ChatResponse: ...


def _wire_messages(messages: Sequence[ChatMessage]) -> list[dict]:
    out = []
    for m in messages:
        if m.image_png is None:
            out.append({"role": m.role, "content": m.text})
        else:
            b64 = base64.b64encode(m.image_png).decode("ascii")
            out.append(
                {
                    "role": m.role,
                    "content": [
                        {"type": "text", "text": m.text},
                        {
                            "type": "image_url",
                            "image_url": {"url": f"data:image/png;base64,{b64}"},
                        },
                    ],
                }
            )
    return out


def _parse_wire_response(doc: dict, latency_s: float) -> ChatResponse:
    try:
        message = doc["choices"][0]["message"]
    except (KeyError, IndexError, TypeError) as exc:
        raise MalformedResponse(f"unexpected response shape: {exc}") from exc
    usage = doc.get("usage") or {}
    prompt_tokens = usage.get("prompt_tokens")
    completion_tokens = usage.get("completion_tokens")

    tool_calls = message.get("tool_calls")
    if tool_calls:
        try:
            fn = tool_calls[0]["function"]
            name = fn["name"]
            raw_args = fn.get("arguments") or "{}"
            arguments = json.loads(raw_args) if isinstance(raw_args, str) else dict(raw_args)
        except (KeyError, IndexError, TypeError, json.JSONDecodeError) as exc:
            raise MalformedResponse(f"unparseable tool call: {exc}") from exc
        return ChatResponse(
            tool_call=ToolInvocation(name, arguments),
            latency_s=latency_s,
            prompt_tokens=prompt_tokens,
            completion_tokens=completion_tokens,
        )

    content = message.get("content")
    if not isinstance(content, str):
        raise MalformedResponse("response carries neither text nor a tool call")
    return ChatResponse(
        text=content,
        latency_s=latency_s,
        prompt_tokens=prompt_tokens,
        completion_tokens=completion_tokens,
    )


class HttpTransport:
    """Speaks the JSON chat-completions protocol over HTTP(S)."""

    def __init__(self, http: httpx.Client | None = None):
        self._http = http or httpx.Client()

    def send(self, endpoint: ModelEndpoint, request: ChatRequest) -> ChatResponse:
        payload: dict = {
            "model": endpoint.model,
            "messages": _wire_messages(request.messages),
        }
        if request.tools is not None:
            payload["tools"] = list(request.tools)
        if request.temperature is not None:
            payload["temperature"] = request.temperature

        headers = {}
        if endpoint.auth_env:
            token = os.environ.get(endpoint.auth_env)
            if not token:
                raise AuthFailure(f"environment variable {endpoint.auth_env} is not set")
            headers["Authorization"] = f"Bearer {token}"

        url = endpoint.base_url.rstrip("/") + "/chat/completions"
        started = time.perf_counter()
        try:
            reply = self._http.post(
                url, json=payload, headers=headers, timeout=endpoint.timeout_s
            )
        except httpx.TimeoutException as exc:
            raise GatewayTimeout(f"request to {url} timed out") from exc
        except httpx.HTTPError as exc:
            raise TransportFailure(f"request to {url} failed: {exc}") from exc
        latency = time.perf_counter() - started

        if reply.status_code in (401, 403):
            raise AuthFailure(f"endpoint rejected credentials ({reply.status_code})")
        if reply.status_code == 408 or reply.status_code == 429 or reply.status_code >= 500:
            raise TransportFailure(f"endpoint returned {reply.status_code}")
        if reply.status_code != 200:
            raise MalformedResponse(
                f"endpoint returned {reply.status_code}: {reply.text[:200]}"
            )
        try:
            doc = reply.json()
        except json.JSONDecodeError as exc:
            raise MalformedResponse("response body is not JSON") from exc
        return _parse_wire_response(doc, latency)


class GatewayClient:
    """Immutable front door for all model calls.

    Retries transient transport failures with jittered exponential backoff;
    auth failures, malformed bodies, and replay misses surface immediately.
    """

    def __init__(
        self,
        transport: Transport,
        sleep: Callable[[float], None] = time.sleep,
        rng: random.Random | None = None,
    ):
        self._transport = transport
        self._sleep = sleep
        self._rng = rng or random.Random()

    def complete(self, endpoint: ModelEndpoint, request: ChatRequest) -> ChatResponse:
        attempt = 0
        while True:
            try:
                return self._transport.send(endpoint, request)
            except GatewayError as err:
                if not err.retryable or attempt >= endpoint.max_retries:
                    raise
                delay = BACKOFF_BASE_S * (BACKOFF_FACTOR**attempt)
                self._sleep(delay * self._rng.uniform(0.5, 1.0))
                attempt += 1

    def fan_out(
        self,
        endpoints: Sequence[ModelEndpoint],
        build_request: Callable[[ModelEndpoint], ChatRequest],
    ) -> list[tuple[ModelEndpoint, ChatResponse | GatewayError]]:
        """Issue one request per endpoint concurrently.

        Results come back in input order regardless of completion order;
        a failing endpoint reports its error in-slot without disturbing
        its siblings.
        """
        if not endpoints:
            raise ValueError("fan_out needs at least one endpoint")

        def one(endpoint: ModelEndpoint) -> ChatResponse | GatewayError:
            try:
                return self.complete(endpoint, build_request(endpoint))
            except GatewayError as err:
                return err

        with ThreadPoolExecutor(max_workers=len(endpoints)) as pool:
            results = list(pool.map(one, endpoints))
        return list(zip(endpoints, results))
