"""Rule-by-rule executor for programs and goals.

Each statement form is discharged by one numbered rule (1 true, 2 backchain,
3 argument substitution, 4 procedure selection, 5 assignment, 6 sequencing,
7 read, 8 bounded choice; print is plumbing and numbered 0). The trace records
rule firings in order, each with a snapshot of the store after its effect.
Failure means no rule applies; execution stops and reports why.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable

from .channels import (
    ChoiceOption,
    ChoiceOutOfRange,
    ChoiceRequest,
    InputExhausted,
    InteractionChannel,
)
from .parser import parse_program
from .syntax import (
    Assign,
    Call,
    Expr,
    GStmt,
    Ident,
    IntLit,
    IntVal,
    KChoose,
    MChoose,
    OP_SYMBOLS,
    Print,
    ProcDef,
    Read,
    Seq,
    StrLit,
    StrVal,
    SymVal,
    TrueStmt,
    Value,
    BinOp,
    is_identifier,
    pretty_expr,
    pretty_print,
    render_value,
    substitute,
    value_literal,
)

Store = dict[str, Value]


def update_store(store: Store, var: str, val: Value) -> Store:
    """New store with var bound to val; any existing binding is replaced."""
    out = dict(store)
    out[var] = val
    return out


class FailReason(Enum):
    NO_MATCHING_PROCEDURE = "NoMatchingProcedure"
    EVAL_ERROR = "EvalError"
    CHOICE_OUT_OF_RANGE = "ChoiceOutOfRange"
    INPUT_EXHAUSTED = "InputExhausted"
    BAD_INPUT_TOKEN = "BadInputToken"


@dataclass(frozen=True)
class Success:
    store: Store


@dataclass(frozen=True)
class Failure:
    reason: FailReason
    detail: str = ""


Outcome = Success | Failure


@dataclass(frozen=True)
class TraceEntry:
    step: int
    rule: int  # 1..8, or 0 for print
    summary: str
    store_after: Store


def trace_line(entry: TraceEntry) -> str:
    return f"#{entry.step} R{entry.rule} {entry.summary}"


@dataclass(frozen=True)
class Program:
    defs: tuple[ProcDef, ...] = ()
    store: Store = field(default_factory=dict)

    def __post_init__(self):
        names = [d.name for d in self.defs]
        if len(set(names)) != len(names):
            raise ValueError("duplicate procedure name")


def load_program(source: str) -> Program:
    """Parse source text into a runnable program with an empty store."""
    return Program(tuple(parse_program(source)))


# ---------------------------------------------------------------------------
# expressions and keyboard tokens

class EvalError(Exception):
    pass


class BadInputToken(Exception):
    pass


def eval_expr(store: Store, e: Expr) -> Value:
    """Evaluate e under store; unbound identifiers quote themselves."""
    match e:
        case IntLit(v):
            return IntVal(v)
        case StrLit(v):
            return StrVal(v)
        case Ident(name):
            if name in store:
                return store[name]
            return SymVal(name)
        case BinOp(op, left, right):
            lv = eval_expr(store, left)
            rv = eval_expr(store, right)
            if isinstance(lv, IntVal) and isinstance(rv, IntVal):
                if op == "add":
                    return IntVal(lv.value + rv.value)
                if op == "sub":
                    return IntVal(lv.value - rv.value)
                return IntVal(lv.value * rv.value)
            if op == "add" and isinstance(lv, StrVal) and isinstance(rv, StrVal):
                return StrVal(lv.value + rv.value)
            raise EvalError(
                f"{OP_SYMBOLS[op]} undefined on {render_value(lv)!r} and {render_value(rv)!r}"
            )
    raise TypeError(f"not an expression: {e!r}")


_INT_TOKEN = re.compile(r"[0-9]+")


def parse_kbd_token(raw: str) -> Value:
    """Interpret one input line: digits, a quoted string, or a bare symbol."""
    if _INT_TOKEN.fullmatch(raw):
        return IntVal(int(raw))
    if len(raw) >= 2 and raw.startswith('"') and raw.endswith('"') and '"' not in raw[1:-1]:
        return StrVal(raw[1:-1])
    if is_identifier(raw):
        return SymVal(raw)
    raise BadInputToken(f"cannot read {raw!r} as a value")


# ---------------------------------------------------------------------------
# execution

class _Abort(Exception):
    """Internal short-circuit carrying the failure and the rule it violates."""

    def __init__(self, reason: FailReason, detail: str, rule: int, redex: str):
        super().__init__(detail)
        self.reason = reason
        self.detail = detail
        self.rule = rule
        self.redex = redex


class _Execution:
    def __init__(
        self,
        prog: Program,
        channel: InteractionChannel,
        on_trace: Callable[[TraceEntry], None] | None,
    ):
        self.defs = {d.name: d for d in prog.defs}
        self.store: Store = dict(prog.store)
        self.channel = channel
        self.entries: list[TraceEntry] = []
        self.on_trace = on_trace

    def trace(self, rule: int, summary: str) -> None:
        entry = TraceEntry(len(self.entries) + 1, rule, summary, self.store)
        self.entries.append(entry)
        if self.on_trace is not None:
            self.on_trace(entry)

    def eval(self, e: Expr, rule: int, redex: str) -> Value:
        try:
            return eval_expr(self.store, e)
        except EvalError as exc:
            raise _Abort(FailReason.EVAL_ERROR, str(exc), rule, redex) from exc

    def choose(self, req: ChoiceRequest) -> int:
        redex = f"{req.kind}({req.upper} branches)"
        try:
            return self.channel.request_choice(req)
        except ChoiceOutOfRange as exc:
            raise _Abort(FailReason.CHOICE_OUT_OF_RANGE, str(exc), 8, redex) from exc
        except InputExhausted as exc:
            raise _Abort(FailReason.INPUT_EXHAUSTED, str(exc), 8, redex) from exc

    def call(self, stmt: Call) -> None:
        target = self.defs.get(stmt.name)
        if target is None or len(target.params) != len(stmt.args):
            raise _Abort(
                FailReason.NO_MATCHING_PROCEDURE,
                f"no procedure {stmt.name}/{len(stmt.args)}",
                4,
                pretty_print(stmt),
            )
        self.trace(4, pretty_print(stmt))
        body = target.body
        shown: list[str] = []
        for param, arg in zip(target.params, stmt.args):
            # call-by-value: arguments evaluate in the caller's store
            val = self.eval(arg, 3, pretty_print(stmt))
            body = substitute(body, param, val)
            text = pretty_expr(value_literal(val))
            shown.append(text)
            self.trace(3, f"[{text}/{param}] {stmt.name}")
        self.trace(2, f"{stmt.name}({', '.join(shown)})")
        self.run(body)

    def run(self, stmt: GStmt) -> None:
        match stmt:
            case TrueStmt():
                self.trace(1, "true")
            case Seq(first, second):
                self.trace(6, pretty_print(stmt))
                self.run(first)
                self.run(second)
            case Assign(var, rhs):
                redex = pretty_print(stmt)
                val = self.eval(rhs, 5, redex)
                self.store = update_store(self.store, var, val)
                self.trace(5, redex)
            case Read(var):
                redex = pretty_print(stmt)
                try:
                    raw = self.channel.request_input(var).strip()
                except InputExhausted as exc:
                    raise _Abort(FailReason.INPUT_EXHAUSTED, str(exc), 7, redex) from exc
                try:
                    val = parse_kbd_token(raw)
                except BadInputToken as exc:
                    raise _Abort(FailReason.BAD_INPUT_TOKEN, str(exc), 7, redex) from exc
                self.store = update_store(self.store, var, val)
                self.trace(7, f"{redex} <- {raw}")
            case KChoose(branches):
                options = tuple(
                    ChoiceOption(str(i), pretty_print(b)) for i, b in enumerate(branches, 1)
                )
                picked = self.choose(ChoiceRequest("kchoose", options))
                self.trace(8, f"kchoose({len(branches)} branches) -> {picked}")
                self.run(branches[picked - 1])
            case MChoose(branches):
                options = tuple(ChoiceOption(label, pretty_print(b)) for label, b in branches)
                picked = self.choose(ChoiceRequest("mchoose", options))
                self.trace(8, f"mchoose({len(branches)} branches) -> {picked}")
                self.run(branches[picked - 1][1])
            case Call():
                self.call(stmt)
            case Print(arg):
                redex = pretty_print(stmt)
                rendered = render_value(self.eval(arg, 0, redex))
                self.channel.emit_print(rendered)
                self.trace(0, f"{redex} -> {rendered}")
            case _:
                raise TypeError(f"not a statement: {stmt!r}")


def execute(
    prog: Program,
    goal: GStmt,
    channel: InteractionChannel,
    *,
    on_trace: Callable[[TraceEntry], None] | None = None,
) -> tuple[Outcome, list[TraceEntry]]:
    """Run goal against prog, answering interaction through channel.

    Returns the outcome and the full trace; a failed run ends with one entry
    naming the violated rule. Cooperating channel errors become Failure values,
    anything else propagates.
    """
    ex = _Execution(prog, channel, on_trace)
    try:
        ex.run(goal)
    except _Abort as abort:
        ex.trace(abort.rule, f"{abort.redex} !! {abort.reason.value}")
        return Failure(abort.reason, abort.detail), ex.entries
    return Success(ex.store), ex.entries


def resolve_call(
    prog: Program,
    call: Call,
    channel: InteractionChannel,
    *,
    on_trace: Callable[[TraceEntry], None] | None = None,
) -> tuple[Outcome, list[TraceEntry]]:
    """Execute a single procedure call as the goal."""
    if not isinstance(call, Call):
        raise TypeError(f"not a call: {call!r}")
    return execute(prog, call, channel, on_trace=on_trace)
