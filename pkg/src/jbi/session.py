"""Newline-delimited JSON wire protocol bridging one execution to a client.

The server drives: it emits request events carrying fresh ids and blocks until
the client answers with a matching action. At most one request is outstanding
at a time, and every session ends with exactly one result event.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Protocol

from .channels import ChannelPolicy, ChoiceRequest, InteractionChannel, REPROMPT
from .evaluator import (
    Program,
    Store,
    Success,
    execute,
    load_program,
    trace_line,
)
from .parser import ParseError, parse_goal
from .syntax import GStmt, render_value


class ProtocolError(Exception):
    pass


class SessionCancelled(Exception):
    pass


# ---------------------------------------------------------------------------
# actions (client -> server)

@dataclass(frozen=True)
class LoadAction:
    source: str
    goal: str


@dataclass(frozen=True)
class ChoiceAction:
    id: int
    index: int


@dataclass(frozen=True)
class InputAction:
    id: int
    value: str


@dataclass(frozen=True)
class CancelAction:
    pass


SessionAction = LoadAction | ChoiceAction | InputAction | CancelAction

_ACTION_FIELDS = {
    "load": ({"action", "source"}, {"goal"}),
    "choice": ({"action", "id", "index"}, set()),
    "input": ({"action", "id", "value"}, set()),
    "cancel": ({"action"}, set()),
}


def _field(obj: dict, name: str, want: type) -> object:
    val = obj[name]
    if isinstance(val, bool) or not isinstance(val, want):
        raise ProtocolError(f"field {name!r} must be {want.__name__}")
    return val


def decode_action(line: str, expect_id: int | None = None) -> SessionAction:
    """Strictly decode one client line; anything unexpected is a ProtocolError."""
    try:
        obj = json.loads(line)
    except json.JSONDecodeError as exc:
        raise ProtocolError(f"malformed JSON: {exc.msg}") from exc
    if not isinstance(obj, dict):
        raise ProtocolError("action must be a JSON object")
    kind = obj.get("action")
    if kind not in _ACTION_FIELDS:
        raise ProtocolError(f"unknown action {kind!r}")
    required, optional = _ACTION_FIELDS[kind]
    keys = set(obj)
    for name in sorted(required - keys):
        raise ProtocolError(f"missing field {name!r}")
    for name in sorted(keys - required - optional):
        raise ProtocolError(f"unexpected field {name!r}")
    if kind == "load":
        source = _field(obj, "source", str)
        goal = _field(obj, "goal", str) if "goal" in obj else "main()"
        return LoadAction(source, goal)
    if kind == "cancel":
        return CancelAction()
    answer_id = _field(obj, "id", int)
    if expect_id is not None and answer_id != expect_id:
        raise ProtocolError(f"answer id {answer_id} does not match outstanding request {expect_id}")
    if kind == "choice":
        return ChoiceAction(answer_id, _field(obj, "index", int))
    return InputAction(answer_id, _field(obj, "value", str))


# ---------------------------------------------------------------------------
# events (server -> client); dict insertion order is the wire field order

def choice_request_event(request_id: int, req: ChoiceRequest) -> dict:
    return {
        "event": "choice_request",
        "id": request_id,
        "kind": req.kind,
        "options": [{"label": o.label, "display": o.display} for o in req.options],
    }


def read_request_event(request_id: int, var: str) -> dict:
    return {"event": "read_request", "id": request_id, "var": var}


def print_event(value: str) -> dict:
    return {"event": "print", "value": value}


def trace_event(line: str) -> dict:
    return {"event": "trace", "line": line}


def result_event(status: str, reason: str | None, bindings: dict[str, str]) -> dict:
    return {"event": "result", "status": status, "reason": reason, "bindings": bindings}


def encode_event(event: dict) -> str:
    """One wire line, field order preserved, newline-terminated."""
    return json.dumps(event, separators=(",", ":"), ensure_ascii=False) + "\n"


def rendered_bindings(store: Store) -> dict[str, str]:
    """Store rendered for the wire: printable values, keys sorted."""
    return {name: render_value(val) for name, val in sorted(store.items())}


# ---------------------------------------------------------------------------
# transports

class Transport(Protocol):
    def send_line(self, line: str) -> None: ...

    def recv_line(self) -> str:
        """Block for the next line; raise EOFError when the peer is gone."""
        ...


class StreamTransport:
    """Line transport over a text reader/writer pair (stdio or socket files)."""

    def __init__(self, reader, writer):
        self._reader = reader
        self._writer = writer

    def send_line(self, line: str) -> None:
        self._writer.write(line)
        self._writer.flush()

    def recv_line(self) -> str:
        line = self._reader.readline()
        if line == "":
            raise EOFError("transport closed")
        return line


# ---------------------------------------------------------------------------
# the serving side

class SessionChannel(InteractionChannel):
    """Forwards requests as events and waits for the matching client actions.

    Request ids count up from 1; a reprompted choice is re-issued under a
    fresh id, which is the session form of the reprompt notice.
    """

    default_policy = REPROMPT

    def __init__(self, transport: Transport, policy: ChannelPolicy | None = None):
        self._transport = transport
        self._next_id = 1
        if policy is not None:
            self.default_policy = policy

    def _send(self, event: dict) -> None:
        self._transport.send_line(encode_event(event))

    def _await_answer(self, request_id: int) -> SessionAction:
        action = decode_action(self._transport.recv_line(), expect_id=request_id)
        if isinstance(action, CancelAction):
            raise SessionCancelled()
        if isinstance(action, LoadAction):
            raise ProtocolError("load only starts a session")
        return action

    def _ask_choice(self, req: ChoiceRequest, retry: bool) -> int | str:
        request_id = self._next_id
        self._next_id += 1
        self._send(choice_request_event(request_id, req))
        action = self._await_answer(request_id)
        if not isinstance(action, ChoiceAction):
            raise ProtocolError("expected a choice action")
        return action.index

    def request_input(self, varname: str) -> str:
        request_id = self._next_id
        self._next_id += 1
        self._send(read_request_event(request_id, varname))
        action = self._await_answer(request_id)
        if not isinstance(action, InputAction):
            raise ProtocolError("expected an input action")
        return action.value

    def emit_print(self, rendered: str) -> None:
        self._send(print_event(rendered))


def _finish(transport: Transport, status: str, reason: str | None, bindings: dict) -> dict:
    event = result_event(status, reason, bindings)
    try:
        transport.send_line(encode_event(event))
    except (EOFError, OSError):
        pass  # peer vanished; there is nobody left to tell
    return event


def serve_session(
    prog: Program,
    goal: GStmt,
    transport: Transport,
    *,
    trace: bool = False,
    policy: ChannelPolicy | None = None,
) -> dict | None:
    """Run one execution over the wire.

    Returns the result event that was sent, or None if the peer disappeared
    before a result could be delivered.
    """
    channel = SessionChannel(transport, policy=policy)
    on_trace = None
    if trace:
        def on_trace(entry):
            transport.send_line(encode_event(trace_event(trace_line(entry))))
    try:
        outcome, _ = execute(prog, goal, channel, on_trace=on_trace)
    except SessionCancelled:
        return _finish(transport, "failure", "cancelled", {})
    except ProtocolError as exc:
        return _finish(transport, "failure", f"protocol error: {exc}", {})
    except EOFError:
        return None
    if isinstance(outcome, Success):
        return _finish(transport, "success", None, rendered_bindings(outcome.store))
    return _finish(transport, "failure", outcome.reason.value, {})


def handle_session(
    transport: Transport,
    *,
    trace: bool = False,
    policy: ChannelPolicy | None = None,
) -> dict | None:
    """Await the load action, then serve the session it describes."""
    try:
        line = transport.recv_line()
    except EOFError:
        return None
    try:
        action = decode_action(line)
        if not isinstance(action, LoadAction):
            raise ProtocolError("first action must be load")
    except ProtocolError as exc:
        return _finish(transport, "failure", f"protocol error: {exc}", {})
    try:
        prog = load_program(action.source)
        goal = parse_goal(action.goal)
    except ParseError as exc:
        return _finish(transport, "failure", f"parse error: {exc}", {})
    return serve_session(prog, goal, transport, trace=trace, policy=policy)
