"""HTTP surface wrapping the interpreter: live sessions, one-shot runs, samples.

The WebSocket endpoint speaks the same newline-delimited JSON protocol as any
other session transport, one full-duplex connection per program run. When a
built playground is present it is served from the root path.
"""

from __future__ import annotations

import asyncio
import os
from contextlib import suppress
from pathlib import Path
from typing import Literal

from fastapi import FastAPI, WebSocket
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel, Field
from starlette.websockets import WebSocketDisconnect

from . import corpus
from .channels import ChannelPolicy, ScriptedChannel
from .evaluator import Success, execute, load_program, trace_line
from .parser import ParseError, parse_goal
from .session import handle_session, rendered_bindings


class RunRequest(BaseModel):
    source: str
    goal: str = "main()"
    input: list[str] = Field(default_factory=list)
    trace: bool = False
    on_out_of_range: Literal["strict", "reprompt"] = "strict"
    reprompt_limit: int = Field(3, ge=1)


class RunResponse(BaseModel):
    status: Literal["success", "failure"]
    reason: str | None = None
    detail: str | None = None
    bindings: dict[str, str] = Field(default_factory=dict)
    prints: list[str] = Field(default_factory=list)
    trace: list[str] = Field(default_factory=list)


class Sample(BaseModel):
    name: str
    source: str


class _WebSocketTransport:
    """Adapts one websocket to the blocking line transport sessions expect.

    The session runs on a worker thread; every send/receive is marshalled back
    onto the event loop that owns the socket.
    """

    def __init__(self, ws: WebSocket, loop: asyncio.AbstractEventLoop):
        self._ws = ws
        self._loop = loop

    def send_line(self, line: str) -> None:
        future = asyncio.run_coroutine_threadsafe(self._ws.send_text(line), self._loop)
        try:
            future.result()
        except (WebSocketDisconnect, RuntimeError) as exc:
            raise EOFError("websocket closed") from exc

    def recv_line(self) -> str:
        future = asyncio.run_coroutine_threadsafe(self._ws.receive_text(), self._loop)
        try:
            return future.result()
        except (WebSocketDisconnect, RuntimeError) as exc:
            raise EOFError("websocket closed") from exc


def _playground_dir(explicit: "Path | str | None") -> Path | None:
    candidates = []
    if explicit is not None:
        candidates.append(Path(explicit))
    env = os.environ.get("JBI_PLAYGROUND")
    if env:
        candidates.append(Path(env))
    candidates.append(Path(__file__).resolve().parents[2] / "frontend" / "dist")
    for candidate in candidates:
        if candidate.is_dir() and (candidate / "index.html").is_file():
            return candidate
    return None


def create_app(
    *,
    trace: bool = False,
    reprompt_limit: int = 3,
    playground: "Path | str | None" = None,
) -> FastAPI:
    app = FastAPI(title="bounded-choice interpreter")
    session_policy = ChannelPolicy("reprompt", reprompt_limit)

    @app.get("/health")
    def health() -> dict:
        return {"status": "ok"}

    @app.get("/samples", response_model=list[Sample])
    def samples() -> list[Sample]:
        return [Sample(name=name, source=source) for name, source in corpus.SAMPLES]

    @app.post("/run", response_model=RunResponse)
    def run(req: RunRequest) -> RunResponse:
        try:
            prog = load_program(req.source)
            goal = parse_goal(req.goal)
        except ParseError as exc:
            return RunResponse(status="failure", reason=f"parse error: {exc}")
        channel = ScriptedChannel(
            req.input, policy=ChannelPolicy(req.on_out_of_range, req.reprompt_limit)
        )
        outcome, entries = execute(prog, goal, channel)
        lines = [trace_line(e) for e in entries] if req.trace else []
        if isinstance(outcome, Success):
            return RunResponse(
                status="success",
                bindings=rendered_bindings(outcome.store),
                prints=channel.prints,
                trace=lines,
            )
        return RunResponse(
            status="failure",
            reason=outcome.reason.value,
            detail=outcome.detail or None,
            prints=channel.prints,
            trace=lines,
        )

    @app.websocket("/session")
    async def session(ws: WebSocket) -> None:
        await ws.accept()
        transport = _WebSocketTransport(ws, asyncio.get_running_loop())
        try:
            await asyncio.to_thread(handle_session, transport, trace=trace, policy=session_policy)
        finally:
            with suppress(Exception):
                await ws.close()

    static_dir = _playground_dir(playground)
    if static_dir is not None:
        app.mount("/", StaticFiles(directory=static_dir, html=True), name="playground")

    return app


app = create_app()
