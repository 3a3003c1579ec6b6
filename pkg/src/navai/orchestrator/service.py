"""HTTP service for live operation: one agent, one task at a time.

Readers (/state, /frame) see the last completed turn's snapshot while a
task runs. /events is a server-push stream of turn records; slow
subscribers are dropped rather than ever blocking the turn loop.
"""

from __future__ import annotations

import json
import queue
import threading
from dataclasses import dataclass, field

from fastapi import FastAPI
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse, Response, StreamingResponse

from ..world import render, resolve_scene
from ..world.types import Pose, Scene
from .config import RunConfig
from .runner import TaskRunner, is_scan_task
from .task import TaskSpec, TurnRecord

EVENT_QUEUE_SIZE = 256
STREAM_POLL_S = 0.2


@dataclass
class ServiceState:
    scene: Scene
    config: RunConfig
    defaults: TaskSpec
    pose: Pose = field(init=False)
    status: str = "idle"  # service availability: idle | running
    last_outcome: str | None = None  # previous task: GOAL_REACHED | failed
    task_id: int = 0
    query: str | None = None
    turns: int = 0
    lock: threading.Lock = field(default_factory=threading.Lock)
    subscribers: list[queue.Queue] = field(default_factory=list)
    worker: threading.Thread | None = None

    def __post_init__(self) -> None:
        self.pose = self.scene.agent_start

    # -- events ----------------------------------------------------------

    def subscribe(self) -> queue.Queue:
        q: queue.Queue = queue.Queue(maxsize=EVENT_QUEUE_SIZE)
        with self.lock:
            self.subscribers.append(q)
        return q

    def unsubscribe(self, q: queue.Queue) -> None:
        with self.lock:
            if q in self.subscribers:
                self.subscribers.remove(q)

    def publish(self, event: str, payload: dict) -> None:
        with self.lock:
            targets = list(self.subscribers)
        for q in targets:
            try:
                q.put_nowait((event, payload))
            except queue.Full:
                self.unsubscribe(q)  # slow subscriber: dropped, never blocking

    # -- task lifecycle -----------------------------------------------------

    def snapshot(self) -> dict:
        with self.lock:
            return {
                "status": self.status,
                "last_outcome": self.last_outcome,
                "scene": self.scene.name,
                "task_id": self.task_id,
                "query": self.query,
                "turns": self.turns,
                "pose": self.pose.to_dict(),
            }

    def start_task(self, text: str) -> int:
        with self.lock:
            if self.status == "running":
                raise RuntimeError("a task is already running")
            self.task_id += 1
            self.status = "running"
            self.last_outcome = None
            self.query = text
            self.turns = 0
            task_id = self.task_id

        spec = TaskSpec(
            scene=self.defaults.scene,
            query=text,
            mode=self.defaults.mode,
            target_label=self.defaults.target_label,
            max_turns=self.defaults.max_turns,
            rotation_step_deg=self.defaults.rotation_step_deg,
        )

        def on_turn(record: TurnRecord) -> None:
            with self.lock:
                self.pose = record.pose_after
                self.turns = record.index
            payload = record.to_dict()
            payload["task_id"] = task_id
            self.publish("turn", payload)

        def work() -> None:
            runner = TaskRunner(
                spec,
                self.config,
                scene=self.scene,
                initial_pose=self.pose,
                on_turn=on_turn,
            )
            report = runner.run_scan() if is_scan_task(spec) else runner.run()
            with self.lock:
                self.pose = runner.pose
                self.status = "idle"
                self.last_outcome = "GOAL_REACHED" if report.success else "failed"
            self.publish(
                "task",
                {
                    "task_id": task_id,
                    "status": "GOAL_REACHED" if report.success else "failed",
                    "success": report.success,
                    "turns": report.turns,
                    "termination": report.termination.value,
                    "answer": report.answer,
                    "error": report.error,
                },
            )

        self.worker = threading.Thread(target=work, name=f"task-{task_id}", daemon=True)
        self.worker.start()
        return task_id

    def reset(self) -> None:
        with self.lock:
            if self.status == "running":
                raise RuntimeError("cannot reset while a task is running")
            self.pose = self.scene.agent_start
            self.status = "idle"
            self.last_outcome = None
            self.query = None
            self.turns = 0


def create_app(
    scene: str | Scene = "highway",
    config: RunConfig | None = None,
    defaults: TaskSpec | None = None,
) -> FastAPI:
    resolved = scene if isinstance(scene, Scene) else resolve_scene(scene)
    defaults = defaults or TaskSpec(scene=resolved.name, query="placeholder")
    state = ServiceState(scene=resolved, config=config or RunConfig(), defaults=defaults)

    app = FastAPI(title="navai", version="0.1.0")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )
    app.state.service = state

    @app.get("/state")
    def get_state() -> JSONResponse:
        return JSONResponse(state.snapshot())

    @app.get("/frame")
    def get_frame() -> Response:
        with state.lock:
            pose = state.pose
        frame = render(
            state.scene, pose, state.config.frame_width, state.config.frame_height
        )
        return Response(content=frame.to_png(), media_type="image/png")

    @app.post("/query")
    async def post_query(payload: dict) -> JSONResponse:
        text = payload.get("text") if isinstance(payload, dict) else None
        if not isinstance(text, str) or not text.strip():
            return JSONResponse(
                {"error": "body must be {\"text\": \"...\"} with non-empty text"},
                status_code=400,
            )
        try:
            task_id = state.start_task(text.strip())
        except RuntimeError as exc:
            return JSONResponse({"error": str(exc)}, status_code=409)
        return JSONResponse({"accepted": True, "task_id": task_id})

    @app.post("/reset")
    def post_reset() -> JSONResponse:
        try:
            state.reset()
        except RuntimeError as exc:
            return JSONResponse({"error": str(exc)}, status_code=409)
        return JSONResponse({"reset": True})

    @app.get("/events")
    def get_events() -> StreamingResponse:
        def stream():
            q = state.subscribe()
            try:
                yield b": connected\n\n"
                while True:
                    try:
                        event, payload = q.get(timeout=STREAM_POLL_S)
                    except queue.Empty:
                        yield b": keep-alive\n\n"  # lets closed clients surface
                        continue
                    body = json.dumps(payload)
                    yield f"event: {event}\ndata: {body}\n\n".encode()
            finally:
                state.unsubscribe(q)

        return StreamingResponse(stream(), media_type="text/event-stream")

    return app


def serve(
    port: int,
    scene: str = "highway",
    config: RunConfig | None = None,
    defaults: TaskSpec | None = None,
    host: str = "127.0.0.1",
) -> None:
    import uvicorn

    app = create_app(scene=scene, config=config, defaults=defaults)
    uvicorn.run(app, host=host, port=port, log_level="warning")
