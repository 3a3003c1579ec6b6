from __future__ import annotations

import json
import socket
import threading
import time

import httpx
import pytest
import uvicorn

from navai.orchestrator import RunConfig, TaskSpec
from navai.orchestrator.service import create_app


def _free_port() -> int:
    with socket.socket() as sock:
        sock.bind(("127.0.0.1", 0))
        return sock.getsockname()[1]


@pytest.fixture(scope="module")
def service_url():
    """The real serving stack: uvicorn on a local port, torn down after."""
    app = create_app(
        scene="ship",
        config=RunConfig(frame_width=96, frame_height=96),
        defaults=TaskSpec(scene="ship", query="placeholder"),
    )
    port = _free_port()
    server = uvicorn.Server(
        uvicorn.Config(app, host="127.0.0.1", port=port, log_level="error")
    )
    thread = threading.Thread(target=server.run, daemon=True)
    thread.start()
    base = f"http://127.0.0.1:{port}"
    for _ in range(200):
        try:
            httpx.get(f"{base}/state", timeout=1.0)
            break
        except httpx.HTTPError:
            time.sleep(0.02)
    else:
        raise RuntimeError("service never came up")
    yield base
    server.should_exit = True
    thread.join(timeout=5)


@pytest.fixture
def client(service_url):
    with httpx.Client(base_url=service_url, timeout=10.0) as c:
        wait_until_idle(c)
        c.post("/reset")
        yield c


def wait_until_idle(client, timeout=20.0) -> dict:
    deadline = time.time() + timeout
    while time.time() < deadline:
        state = client.get("/state").json()
        if state["status"] != "running":
            return state
        time.sleep(0.01)
    raise AssertionError("task never finished")


def test_state_starts_idle(client):
    state = client.get("/state").json()
    assert state["status"] == "idle"
    assert state["last_outcome"] is None
    assert state["turns"] == 0
    assert state["scene"] == "ship"
    assert "pose" in state


def test_query_moves_the_agent_then_goes_idle(client):
    before = client.get("/state").json()["pose"]
    reply = client.post("/query", json={"text": "move forward"})
    assert reply.status_code == 200
    state = wait_until_idle(client)
    assert state["status"] == "idle"
    assert state["last_outcome"] == "GOAL_REACHED"
    assert state["turns"] == 1
    assert state["pose"]["pos"][0] == pytest.approx(before["pos"][0] + 3.0)


def test_frame_bytes_are_stable_without_actions(client):
    a = client.get("/frame")
    b = client.get("/frame")
    assert a.status_code == 200
    assert a.headers["content-type"] == "image/png"
    assert a.content == b.content


def test_frame_changes_after_an_action(client):
    before = client.get("/frame").content
    client.post("/query", json={"text": "turn left"})
    wait_until_idle(client)
    assert client.get("/frame").content != before


def test_malformed_query_is_400(client):
    assert client.post("/query", json={"nope": 1}).status_code == 400
    assert client.post("/query", json={"text": "   "}).status_code == 400


def test_query_while_task_running_conflicts(client):
    # an unreachable goal keeps the loop busy long enough to observe the 409
    reply = client.post("/query", json={"text": "go to the kraken"})
    assert reply.status_code == 200
    conflict = client.post("/query", json={"text": "move forward"})
    assert conflict.status_code == 409
    wait_until_idle(client, timeout=30.0)


def test_reset_restores_start_pose(client):
    start = client.get("/state").json()["pose"]
    client.post("/query", json={"text": "move forward"})
    wait_until_idle(client)
    assert client.get("/state").json()["pose"] != start
    assert client.post("/reset").status_code == 200
    state = client.get("/state").json()
    assert state["status"] == "idle"
    assert state["pose"] == start


def test_event_stream_delivers_turn_records_as_they_complete(client, service_url):
    events: list[tuple[str, dict]] = []
    ready = threading.Event()

    def consume():
        with httpx.stream("GET", f"{service_url}/events", timeout=20.0) as stream:
            ready.set()
            current = None
            for line in stream.iter_lines():
                if line.startswith("event: "):
                    current = line.split(": ", 1)[1]
                elif line.startswith("data: ") and current:
                    events.append((current, json.loads(line.split(": ", 1)[1])))
                    current = None
                    if any(kind == "task" for kind, _ in events):
                        return

    consumer = threading.Thread(target=consume, daemon=True)
    consumer.start()
    assert ready.wait(timeout=5.0)
    time.sleep(0.2)  # subscriber attach happens on first body read
    client.post("/query", json={"text": "scan the area"})
    consumer.join(timeout=30.0)
    assert not consumer.is_alive()

    turn_events = [payload for kind, payload in events if kind == "turn"]
    task_events = [payload for kind, payload in events if kind == "task"]
    assert [e["turn"] for e in turn_events] == list(range(1, 9))  # eight ordered rotations
    for payload in turn_events:
        assert set(payload["timings"]) == {
            "voter_s",
            "visual_s",
            "textual_s",
            "action_s",
            "total_s",
        }
    assert task_events[0]["status"] == "GOAL_REACHED"
    assert task_events[0]["turns"] == 8
    wait_until_idle(client)
