"""Abstract syntax for the bounded-choice statement language.

Expressions, statements, procedure definitions and runtime values are all
immutable dataclasses shared by the parser, the evaluator, the channels and
the wire protocol. Substitution and the canonical single-line rendering live
here as well, since both are defined purely on the tree shapes.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

_IDENT_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*")


def is_identifier(text: str) -> bool:
    """True if text is a legal variable or procedure name."""
    return _IDENT_RE.fullmatch(text) is not None


# ---------------------------------------------------------------------------
# expressions

class Expr:
    """Base class for expression nodes."""


@dataclass(frozen=True)
class IntLit(Expr):
    value: int


@dataclass(frozen=True)
class StrLit(Expr):
    value: str


@dataclass(frozen=True)
class Ident(Expr):
    name: str

    def __post_init__(self):
        if not is_identifier(self.name):
            raise ValueError(f"bad identifier {self.name!r}")


#: binary operators and their surface spelling
OP_SYMBOLS = {"add": "+", "sub": "-", "mul": "*"}


@dataclass(frozen=True)
class BinOp(Expr):
    op: str
    left: Expr
    right: Expr

    def __post_init__(self):
        if self.op not in OP_SYMBOLS:
            raise ValueError(f"unknown operator {self.op!r}")


# ---------------------------------------------------------------------------
# statements

class GStmt:
    """Base class for statement nodes."""


@dataclass(frozen=True)
class TrueStmt(GStmt):
    """The statement that always succeeds and does nothing."""


@dataclass(frozen=True)
class Call(GStmt):
    name: str
    args: tuple[Expr, ...] = ()


@dataclass(frozen=True)
class Assign(GStmt):
    var: str
    rhs: Expr


@dataclass(frozen=True)
class Seq(GStmt):
    first: GStmt
    second: GStmt


@dataclass(frozen=True)
class Read(GStmt):
    var: str


@dataclass(frozen=True)
class KChoose(GStmt):
    branches: tuple[GStmt, ...]

    def __post_init__(self):
        if not self.branches:
            raise ValueError("kchoose needs at least one branch")


@dataclass(frozen=True)
class MChoose(GStmt):
    branches: tuple[tuple[str, GStmt], ...]

    def __post_init__(self):
        if not self.branches:
            raise ValueError("mchoose needs at least one branch")
        labels = [label for label, _ in self.branches]
        if len(set(labels)) != len(labels):
            raise ValueError("mchoose labels must be distinct")


@dataclass(frozen=True)
class Print(GStmt):
    arg: Expr


@dataclass(frozen=True)
class ProcDef:
    name: str
    params: tuple[str, ...]
    body: GStmt

    def __post_init__(self):
        if len(set(self.params)) != len(self.params):
            raise ValueError(f"duplicate parameter in proc {self.name}")


# ---------------------------------------------------------------------------
# runtime values

class Value:
    """Base class for runtime values."""


@dataclass(frozen=True)
class IntVal(Value):
    value: int


@dataclass(frozen=True)
class StrVal(Value):
    value: str


@dataclass(frozen=True)
class SymVal(Value):
    """An unbound identifier quoting itself, like an atom."""

    name: str


def render_value(v: Value) -> str:
    """Printable form: integers in decimal, strings verbatim, symbols by name."""
    if isinstance(v, IntVal):
        return str(v.value)
    if isinstance(v, StrVal):
        return v.value
    if isinstance(v, SymVal):
        return v.name
    raise TypeError(f"not a value: {v!r}")


def value_literal(v: Value) -> Expr:
    """Expression literal denoting v; symbols quote themselves as identifiers."""
    if isinstance(v, IntVal):
        return IntLit(v.value)
    if isinstance(v, StrVal):
        return StrLit(v.value)
    if isinstance(v, SymVal):
        return Ident(v.name)
    raise TypeError(f"not a value: {v!r}")


# ---------------------------------------------------------------------------
# substitution

def binds_by_read(stmt: GStmt, var: str) -> bool:
    """Does executing stmt bind var via read for whatever is sequenced after it?

    Only reads on the unconditional path count; a read inside a choice branch
    stays scoped to that branch.
    """
    match stmt:
        case Read(v):
            return v == var
        case Seq(first, second):
            return binds_by_read(first, var) or binds_by_read(second, var)
        case _:
            return False


def substitute(stmt: GStmt, var: str, val: Value) -> GStmt:
    """Replace free expression-position occurrences of var with a literal of val.

    read(var) binds var for the remainder of its enclosing sequence, and
    assignment/read targets are locations rather than terms, so neither is
    rewritten. The statement shape is always preserved.
    """
    lit = value_literal(val)

    def in_expr(e: Expr) -> Expr:
        if isinstance(e, Ident) and e.name == var:
            return lit
        if isinstance(e, BinOp):
            return BinOp(e.op, in_expr(e.left), in_expr(e.right))
        return e

    def in_stmt(s: GStmt) -> GStmt:
        match s:
            case TrueStmt() | Read():
                return s
            case Call(name, args):
                return Call(name, tuple(in_expr(a) for a in args))
            case Assign(target, rhs):
                return Assign(target, in_expr(rhs))
            case Print(arg):
                return Print(in_expr(arg))
            case KChoose(branches):
                return KChoose(tuple(in_stmt(b) for b in branches))
            case MChoose(branches):
                return MChoose(tuple((label, in_stmt(b)) for label, b in branches))
            case Seq(first, second):
                head = in_stmt(first)
                if binds_by_read(first, var):
                    return Seq(head, second)
                return Seq(head, in_stmt(second))
        raise TypeError(f"not a statement: {s!r}")

    return in_stmt(stmt)


def free_idents(stmt: GStmt) -> set[str]:
    """Identifiers in expression position not bound by an earlier read."""

    def of_expr(e: Expr) -> set[str]:
        if isinstance(e, Ident):
            return {e.name}
        if isinstance(e, BinOp):
            return of_expr(e.left) | of_expr(e.right)
        return set()

    def of_stmt(s: GStmt) -> set[str]:
        match s:
            case TrueStmt() | Read():
                return set()
            case Call(_, args):
                out: set[str] = set()
                for a in args:
                    out |= of_expr(a)
                return out
            case Assign(_, rhs):
                return of_expr(rhs)
            case Print(arg):
                return of_expr(arg)
            case KChoose(branches):
                out = set()
                for b in branches:
                    out |= of_stmt(b)
                return out
            case MChoose(branches):
                out = set()
                for _, b in branches:
                    out |= of_stmt(b)
                return out
            case Seq(first, second):
                tail = {x for x in of_stmt(second) if not binds_by_read(first, x)}
                return of_stmt(first) | tail
        raise TypeError(f"not a statement: {s!r}")

    return of_stmt(stmt)


# ---------------------------------------------------------------------------
# rendering

_EXPR, _TERM, _FACTOR = 0, 1, 2


def _level(e: Expr) -> int:
    if isinstance(e, BinOp):
        return _TERM if e.op == "mul" else _EXPR
    return _FACTOR


def _render_expr(e: Expr, floor: int) -> str:
    if isinstance(e, IntLit):
        return str(e.value)
    if isinstance(e, StrLit):
        return f'"{e.value}"'
    if isinstance(e, Ident):
        return e.name
    if isinstance(e, BinOp):
        if e.op == "mul":
            text = f"{_render_expr(e.left, _TERM)} * {_render_expr(e.right, _FACTOR)}"
        else:
            sym = OP_SYMBOLS[e.op]
            text = f"{_render_expr(e.left, _EXPR)} {sym} {_render_expr(e.right, _TERM)}"
        if _level(e) < floor:
            return f"({text})"
        return text
    raise TypeError(f"not an expression: {e!r}")


def pretty_expr(e: Expr) -> str:
    """Single-line rendering of an expression, parenthesized only as needed."""
    return _render_expr(e, _EXPR)


def _render_prim(s: GStmt) -> str:
    match s:
        case TrueStmt():
            return "true"
        case Assign(var, rhs):
            return f"{var} = {pretty_expr(rhs)}"
        case Call(name, args):
            return f"{name}({', '.join(pretty_expr(a) for a in args)})"
        case Read(var):
            return f"read({var})"
        case Print(arg):
            return f"print({pretty_expr(arg)})"
        case KChoose(branches):
            return f"kchoose({', '.join(pretty_print(b) for b in branches)})"
        case MChoose(branches):
            inner = ", ".join(f'"{label}": {pretty_print(body)}' for label, body in branches)
            return f"mchoose({inner})"
        case Seq():
            # a sequence used where a primitive is expected keeps its grouping
            return f"({pretty_print(s)})"
    raise TypeError(f"not a statement: {s!r}")


def pretty_print(stmt: GStmt) -> str:
    """Single-line canonical rendering; reparses to the same tree."""
    if isinstance(stmt, Seq):
        return f"{_render_prim(stmt.first)}; {pretty_print(stmt.second)}"
    return _render_prim(stmt)
