"""Interaction channels: where choice menus, read prompts and prints go.

A channel instance belongs to exactly one execution. The base class owns the
out-of-range policy for choices; subclasses only supply the raw answers.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass
from typing import TextIO


class ChannelError(Exception):
    """Base for interaction failures surfaced to the evaluator."""


class InputExhausted(ChannelError):
    pass


class ChoiceOutOfRange(ChannelError):
    pass


@dataclass(frozen=True)
class ChoiceOption:
    label: str
    display: str


@dataclass(frozen=True)
class ChoiceRequest:
    kind: str  # "kchoose" | "mchoose"
    options: tuple[ChoiceOption, ...]

    def __post_init__(self):
        if self.kind not in ("kchoose", "mchoose"):
            raise ValueError(f"unknown choice kind {self.kind!r}")
        if not self.options:
            raise ValueError("choice request needs at least one option")

    @property
    def upper(self) -> int:
        return len(self.options)


@dataclass(frozen=True)
class ChannelPolicy:
    on_out_of_range: str = "strict"  # "strict" | "reprompt"
    reprompt_limit: int = 3

    def __post_init__(self):
        if self.on_out_of_range not in ("strict", "reprompt"):
            raise ValueError(f"unknown policy {self.on_out_of_range!r}")
        if self.reprompt_limit < 1:
            raise ValueError("reprompt limit must be positive")


STRICT = ChannelPolicy("strict")
REPROMPT = ChannelPolicy("reprompt", 3)


def _as_index(token: str) -> int | str:
    """Digit lines become indices; anything else is kept for the error text."""
    if token.isascii() and token.isdigit():
        return int(token)
    return token


class InteractionChannel:
    """Behavior contract shared by scripted, console and session channels."""

    default_policy: ChannelPolicy = STRICT

    def request_choice(self, req: ChoiceRequest, policy: ChannelPolicy | None = None) -> int:
        """Answer req with a 1-based index, applying the out-of-range policy.

        The retry budget counts total attempts, so a limit of 3 allows two
        invalid answers before the third must land in range.
        """
        policy = policy or self.default_policy
        attempts = policy.reprompt_limit if policy.on_out_of_range == "reprompt" else 1
        answer: int | str | None = None
        for attempt in range(attempts):
            answer = self._ask_choice(req, retry=attempt > 0)
            if isinstance(answer, int) and 1 <= answer <= req.upper:
                return answer
            if policy.on_out_of_range == "strict":
                break
        raise ChoiceOutOfRange(f"choice {answer!r} not in 1..{req.upper}")

    # --- channel-specific duties ---

    def _ask_choice(self, req: ChoiceRequest, retry: bool) -> int | str:
        """Present req (or a reprompt notice when retry) and return one answer."""
        raise NotImplementedError

    def request_input(self, varname: str) -> str:
        """Return one raw input line for read(varname)."""
        raise NotImplementedError

    def emit_print(self, rendered: str) -> None:
        raise NotImplementedError


class ScriptedChannel(InteractionChannel):
    """Replays a fixed token list; deterministic and therefore testable.

    Prints and reprompt notices are recorded rather than displayed; pass
    echo=sys.stdout to also write prints through (the CLI does).
    """

    default_policy = STRICT

    def __init__(
        self,
        tokens: "list[str] | tuple[str, ...]" = (),
        policy: ChannelPolicy | None = None,
        echo: TextIO | None = None,
    ):
        self._tokens = [str(t).strip() for t in tokens]
        self._next = 0
        self.prints: list[str] = []
        self.reprompt_notices = 0
        self._echo = echo
        if policy is not None:
            self.default_policy = policy

    def consumed(self) -> int:
        return self._next

    def _pop(self) -> str:
        if self._next >= len(self._tokens):
            raise InputExhausted("input script exhausted")
        token = self._tokens[self._next]
        self._next += 1
        return token

    def _ask_choice(self, req: ChoiceRequest, retry: bool) -> int | str:
        if retry:
            self.reprompt_notices += 1
        return _as_index(self._pop())

    def request_input(self, varname: str) -> str:
        return self._pop()

    def emit_print(self, rendered: str) -> None:
        self.prints.append(rendered)
        if self._echo is not None:
            self._echo.write(rendered + "\n")


class ConsoleChannel(InteractionChannel):
    """Prompts a human on a pair of text streams."""

    default_policy = REPROMPT

    def __init__(
        self,
        in_stream: TextIO | None = None,
        out_stream: TextIO | None = None,
        policy: ChannelPolicy | None = None,
    ):
        self._in = in_stream if in_stream is not None else sys.stdin
        self._out = out_stream if out_stream is not None else sys.stdout
        if policy is not None:
            self.default_policy = policy

    def _read_line(self) -> str:
        line = self._in.readline()
        if line == "":
            raise InputExhausted("end of input stream")
        return line.strip()

    def _ask_choice(self, req: ChoiceRequest, retry: bool) -> int | str:
        if retry:
            self._out.write(f"invalid choice, try again [1-{req.upper}]: ")
        else:
            for i, opt in enumerate(req.options, 1):
                if req.kind == "mchoose":
                    self._out.write(f"{i}) [{opt.label}] {opt.display}\n")
                else:
                    self._out.write(f"{i}) {opt.display}\n")
            self._out.write(f"choose [1-{req.upper}]: ")
        self._out.flush()
        return _as_index(self._read_line())

    def request_input(self, varname: str) -> str:
        self._out.write(f"read {varname}> ")
        self._out.flush()
        return self._read_line()

    def emit_print(self, rendered: str) -> None:
        self._out.write(rendered + "\n")
        self._out.flush()
