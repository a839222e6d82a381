import json

import pytest

from jbi.channels import ChannelPolicy
from jbi.evaluator import execute, load_program
from jbi.parser import parse_goal
from jbi.session import (
    CancelAction,
    ChoiceAction,
    InputAction,
    LoadAction,
    ProtocolError,
    decode_action,
    encode_event,
    handle_session,
    print_event,
    result_event,
    serve_session,
)
from jbi.channels import ScriptedChannel

from support import ScriptTransport, corpus_source


def action(**fields):
    return json.dumps(fields)


def events_of(transport):
    return [json.loads(line) for line in transport.sent]


# --- encoding ---

def test_encode_event_exact_bytes():
    assert encode_event(print_event("2000")) == '{"event":"print","value":"2000"}\n'
    assert (
        encode_event(result_event("success", None, {}))
        == '{"event":"result","status":"success","reason":null,"bindings":{}}\n'
    )


def test_encoded_events_are_single_lines():
    event = print_event('multi "quoted" value')
    line = encode_event(event)
    assert line.endswith("\n") and "\n" not in line[:-1]
    assert json.loads(line) == event


# --- decoding ---

def test_decode_action_examples():
    assert decode_action('{"action":"choice","id":1,"index":2}') == ChoiceAction(1, 2)
    assert decode_action('{"action":"input","id":4,"value":"kim"}') == InputAction(4, "kim")
    assert decode_action('{"action":"cancel"}') == CancelAction()
    loaded = decode_action('{"action":"load","source":"proc main() = true.","goal":"main()"}')
    assert loaded == LoadAction("proc main() = true.", "main()")
    assert decode_action('{"action":"load","source":"x"}').goal == "main()"


def test_decode_action_strictness():
    with pytest.raises(ProtocolError):
        decode_action("not json")
    with pytest.raises(ProtocolError):
        decode_action('{"action":"jump"}')
    with pytest.raises(ProtocolError):
        decode_action('{"action":"choice","id":1}')
    with pytest.raises(ProtocolError):
        decode_action('{"action":"choice","id":1,"index":2,"extra":true}')
    with pytest.raises(ProtocolError):
        decode_action('{"action":"choice","id":1,"index":"2"}')
    with pytest.raises(ProtocolError):
        decode_action('{"action":"input","id":true,"value":"x"}')
    with pytest.raises(ProtocolError):
        decode_action('{"action":"choice","id":9,"index":2}', expect_id=1)


# --- serving ---

def test_session_tuition_event_stream():
    transport = ScriptTransport([action(action="choice", id=1, index=3)])
    result = serve_session(
        load_program(corpus_source("tuition")), parse_goal("main()"), transport
    )
    events = events_of(transport)
    assert [e["event"] for e in events] == ["choice_request", "print", "result"]
    request = events[0]
    assert request["id"] == 1 and request["kind"] == "kchoose"
    assert [o["label"] for o in request["options"]] == ["1", "2", "3"]
    assert request["options"][0]["display"] == "major = english; tuition = 2000"
    assert events[1] == {"event": "print", "value": "2200"}
    assert events[2]["status"] == "success"
    assert events[2]["bindings"] == {"major": "libarts", "tuition": "2200"}
    assert result == events[2]


def test_session_ids_count_up_and_result_is_last():
    transport = ScriptTransport(
        [
            action(action="input", id=1, value="7"),
            action(action="choice", id=2, index=1),
        ]
    )
    source = "proc main() = read(x); kchoose(print(x), true)."
    serve_session(load_program(source), parse_goal("main()"), transport)
    events = events_of(transport)
    assert [e["event"] for e in events] == ["read_request", "choice_request", "print", "result"]
    assert [e.get("id") for e in events[:2]] == [1, 2]
    assert sum(1 for e in events if e["event"] == "result") == 1


def test_session_reprompt_reissues_request_under_fresh_id():
    transport = ScriptTransport(
        [
            action(action="choice", id=1, index=9),
            action(action="choice", id=2, index=2),
        ]
    )
    serve_session(load_program(corpus_source("employee")), parse_goal("main()"), transport)
    events = events_of(transport)
    kinds = [e["event"] for e in events]
    assert kinds == ["choice_request", "choice_request", "result"]
    assert [e["id"] for e in events[:2]] == [1, 2]
    assert events[-1]["status"] == "success"
    assert events[-1]["bindings"] == {"age": "40", "emp": "kim"}


def test_session_strict_policy_option():
    transport = ScriptTransport([action(action="choice", id=1, index=9)])
    result = serve_session(
        load_program(corpus_source("employee")),
        parse_goal("main()"),
        transport,
        policy=ChannelPolicy("strict"),
    )
    assert result["status"] == "failure"
    assert result["reason"] == "ChoiceOutOfRange"
    assert result["bindings"] == {}


def test_session_cancel():
    transport = ScriptTransport(
        [
            action(action="load", source=corpus_source("employee")),
            action(action="cancel"),
        ]
    )
    result = handle_session(transport)
    assert result == {"event": "result", "status": "failure", "reason": "cancelled", "bindings": {}}


def test_session_wrong_id_is_protocol_failure():
    transport = ScriptTransport(
        [
            action(action="load", source=corpus_source("employee")),
            action(action="choice", id=9, index=2),
        ]
    )
    result = handle_session(transport)
    assert result["status"] == "failure"
    assert result["reason"].startswith("protocol error:")


def test_session_load_parse_error():
    transport = ScriptTransport([action(action="load", source="proc main( = true.")])
    result = handle_session(transport)
    assert result["status"] == "failure"
    assert result["reason"].startswith("parse error: ")


def test_session_first_action_must_be_load():
    transport = ScriptTransport([action(action="cancel")])
    result = handle_session(transport)
    assert result["status"] == "failure"
    assert result["reason"].startswith("protocol error:")


def test_session_trace_events_interleave_before_result():
    transport = ScriptTransport([action(action="choice", id=1, index=1)])
    serve_session(
        load_program(corpus_source("employee")), parse_goal("main()"), transport, trace=True
    )
    events = events_of(transport)
    trace_lines = [e["line"] for e in events if e["event"] == "trace"]
    assert trace_lines[0] == "#1 R4 main()"
    assert trace_lines[-1] == "#6 R5 age = 31"
    assert events[-1]["event"] == "result"


def test_session_replay_equivalence():
    # drive a live session, recording the actions a user took
    transport = ScriptTransport(
        [
            action(action="choice", id=1, index=9),  # slip of the finger
            action(action="choice", id=2, index=3),
            action(action="input", id=3, value="5"),
        ]
    )
    source = (
        "proc main() = kchoose(x = 1, x = 2, read(x)); print(x)."
    )
    result = serve_session(load_program(source), parse_goal("main()"), transport)
    assert result["status"] == "success"
    live_prints = [e["value"] for e in events_of(transport) if e["event"] == "print"]

    # replay: choices become digit tokens, inputs raw lines, reprompt policy
    replay = ScriptedChannel(["9", "3", "5"], policy=ChannelPolicy("reprompt", 3))
    outcome, _ = execute(load_program(source), parse_goal("main()"), replay)
    from jbi.session import rendered_bindings

    assert rendered_bindings(outcome.store) == result["bindings"]
    assert replay.prints == live_prints
