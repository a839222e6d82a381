"""Command-line entry point: run programs scripted or interactive, or serve sessions."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .channels import ChannelPolicy, ConsoleChannel, InteractionChannel, ScriptedChannel
from .evaluator import Success, TraceEntry, execute, load_program, trace_line
from .parser import ParseError, parse_goal
from .syntax import render_value

EXIT_SUCCESS = 0
EXIT_FAILURE = 1
EXIT_PARSE = 2
EXIT_IO = 3


def format_trace(entries: list[TraceEntry]) -> str:
    """One `#<step> R<rule> <summary>` line per entry."""
    return "\n".join(trace_line(e) for e in entries)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="jbi", description="run programs written with bounded-choice statements"
    )
    sub = parser.add_subparsers(dest="command", required=True)
    run = sub.add_parser("run", help="execute a program file")
    run.add_argument("file", nargs="?", help="program source (.jbi); optional with --serve")
    run.add_argument("--goal", default="main()", help="goal statement to execute (default: main())")
    inputs = run.add_mutually_exclusive_group()
    inputs.add_argument("--input", help="comma-separated input tokens")
    inputs.add_argument("--input-file", help="file with one input token per line")
    inputs.add_argument("--serve", type=int, metavar="PORT", help="host browser sessions on PORT")
    run.add_argument("--trace", action="store_true", help="print rule-numbered trace lines")
    run.add_argument("--dump-state", action="store_true", help="print final variable bindings")
    run.add_argument(
        "--reprompt", type=int, metavar="N", help="allow up to N attempts for invalid choices"
    )
    return parser


def _state_line(store) -> str:
    inner = ", ".join(f"{name}={render_value(val)}" for name, val in sorted(store.items()))
    return f"state: {{{inner}}}"


def _make_channel(args: argparse.Namespace) -> InteractionChannel:
    policy = None
    if args.reprompt is not None:
        policy = ChannelPolicy("reprompt", args.reprompt)
    if args.input is not None:
        tokens = args.input.split(",") if args.input else []
        return ScriptedChannel(tokens, policy=policy, echo=sys.stdout)
    if args.input_file is not None:
        text = Path(args.input_file).read_text(encoding="utf-8")
        return ScriptedChannel(text.splitlines(), policy=policy, echo=sys.stdout)
    return ConsoleChannel(policy=policy)


def _serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service import create_app

    if args.file is not None:
        # fail fast on a broken file before opening the port
        try:
            load_program(Path(args.file).read_text(encoding="utf-8"))
        except OSError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_IO
        except ParseError as exc:
            print(f"parse error: {exc}", file=sys.stderr)
            return EXIT_PARSE
    app = create_app(trace=args.trace, reprompt_limit=args.reprompt or 3)
    uvicorn.run(app, host="127.0.0.1", port=args.serve, log_level="warning")
    return EXIT_SUCCESS


def _run(args: argparse.Namespace) -> int:
    if args.serve is not None:
        return _serve(args)
    if args.file is None:
        print("error: a program file is required unless --serve is given", file=sys.stderr)
        return EXIT_IO
    try:
        source = Path(args.file).read_text(encoding="utf-8")
        channel = _make_channel(args)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    try:
        prog = load_program(source)
        goal = parse_goal(args.goal)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE

    outcome, entries = execute(prog, goal, channel)
    out = sys.stdout
    if args.trace and entries:
        out.write(format_trace(entries) + "\n")
    if isinstance(outcome, Success):
        out.write("outcome: success\n")
        if args.dump_state:
            out.write(_state_line(outcome.store) + "\n")
        return EXIT_SUCCESS
    out.write(f"outcome: failure({outcome.reason.value})\n")
    if args.dump_state:
        out.write("state: {}\n")
    if outcome.detail:
        print(f"error: {outcome.detail}", file=sys.stderr)
    return EXIT_FAILURE


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return _run(args)


if __name__ == "__main__":
    sys.exit(main())
