"""Tokenizer and recursive-descent parser for program files and goals."""

from __future__ import annotations

from dataclasses import dataclass
from typing import NoReturn

from .syntax import (
    Assign,
    BinOp,
    Call,
    Expr,
    GStmt,
    Ident,
    IntLit,
    KChoose,
    MChoose,
    Print,
    ProcDef,
    Read,
    Seq,
    StrLit,
    TrueStmt,
)

KEYWORDS = frozenset({"proc", "true", "read", "kchoose", "mchoose", "print"})

_PUNCT = frozenset("()=.,;:+-*")
_WS = frozenset(" \t\r\n")


@dataclass(frozen=True)
class Token:
    kind: str  # IDENT | INT | STRING | KEYWORD | PUNCT
    text: str
    line: int
    col: int


class ParseError(Exception):
    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"{line}:{col}: {message}")
        self.message = message
        self.line = line
        self.col = col


def tokenize(source: str) -> list[Token]:
    """Split source into tokens, skipping whitespace and // comments."""
    tokens: list[Token] = []
    i, line, col = 0, 1, 1
    n = len(source)

    def step(k: int = 1) -> None:
        nonlocal i, line, col
        for _ in range(k):
            if source[i] == "\n":
                line += 1
                col = 1
            else:
                col += 1
            i += 1

    while i < n:
        c = source[i]
        if c in _WS:
            step()
            continue
        if c == "/":
            if i + 1 < n and source[i + 1] == "/":
                while i < n and source[i] != "\n":
                    step()
                continue
            raise ParseError("unexpected character '/'", line, col)
        if c.isascii() and c.isdigit():
            start_line, start_col, start = line, col, i
            while i < n and source[i].isascii() and source[i].isdigit():
                step()
            tokens.append(Token("INT", source[start:i], start_line, start_col))
            continue
        if c.isascii() and c.isalpha():
            start_line, start_col, start = line, col, i
            while i < n and ((source[i].isascii() and source[i].isalnum()) or source[i] == "_"):
                step()
            text = source[start:i]
            kind = "KEYWORD" if text in KEYWORDS else "IDENT"
            tokens.append(Token(kind, text, start_line, start_col))
            continue
        if c == '"':
            start_line, start_col = line, col
            step()
            start = i
            while i < n and source[i] not in '"\n':
                step()
            if i >= n or source[i] != '"':
                raise ParseError("unterminated string literal", start_line, start_col)
            text = source[start:i]
            step()
            tokens.append(Token("STRING", text, start_line, start_col))
            continue
        if c in _PUNCT:
            tokens.append(Token("PUNCT", c, line, col))
            step()
            continue
        raise ParseError(f"unexpected character {c!r}", line, col)
    return tokens


def _describe(tok: Token | None) -> str:
    if tok is None:
        return "end of input"
    if tok.kind == "STRING":
        return f'string "{tok.text}"'
    return f"'{tok.text}'"


class _Parser:
    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.pos = 0

    def peek(self) -> Token | None:
        if self.pos < len(self.tokens):
            return self.tokens[self.pos]
        return None

    def error_pos(self) -> tuple[int, int]:
        tok = self.peek()
        if tok is not None:
            return tok.line, tok.col
        if self.tokens:
            last = self.tokens[-1]
            width = len(last.text) + (2 if last.kind == "STRING" else 0)
            return last.line, last.col + width
        return 1, 1

    def fail(self, message: str) -> NoReturn:
        line, col = self.error_pos()
        raise ParseError(message, line, col)

    def advance(self) -> Token:
        tok = self.peek()
        if tok is None:
            self.fail("unexpected end of input")
        self.pos += 1
        return tok

    def at(self, kind: str, text: str | None = None) -> bool:
        tok = self.peek()
        return tok is not None and tok.kind == kind and (text is None or tok.text == text)

    def take(self, kind: str, text: str | None = None) -> Token | None:
        if self.at(kind, text):
            return self.advance()
        return None

    def expect(self, kind: str, text: str | None = None) -> Token:
        if not self.at(kind, text):
            names = {"IDENT": "identifier", "INT": "integer", "STRING": "string label"}
            want = f"'{text}'" if text is not None else names.get(kind, kind.lower())
            self.fail(f"expected {want}, found {_describe(self.peek())}")
        return self.advance()

    # --- grammar ---

    def program(self) -> list[ProcDef]:
        defs: list[ProcDef] = []
        seen: set[str] = set()
        while self.peek() is not None:
            name_tok, procdef = self.procdef()
            if procdef.name in seen:
                raise ParseError(
                    f"duplicate procedure {procdef.name!r}", name_tok.line, name_tok.col
                )
            seen.add(procdef.name)
            defs.append(procdef)
        return defs

    def procdef(self) -> tuple[Token, ProcDef]:
        self.expect("KEYWORD", "proc")
        name_tok = self.expect("IDENT")
        self.expect("PUNCT", "(")
        params: list[str] = []
        if not self.at("PUNCT", ")"):
            while True:
                param_tok = self.expect("IDENT")
                if param_tok.text in params:
                    raise ParseError(
                        f"duplicate parameter {param_tok.text!r}",
                        param_tok.line,
                        param_tok.col,
                    )
                params.append(param_tok.text)
                if not self.take("PUNCT", ","):
                    break
        self.expect("PUNCT", ")")
        self.expect("PUNCT", "=")
        body = self.stmt()
        self.expect("PUNCT", ".")
        return name_tok, ProcDef(name_tok.text, tuple(params), body)

    def stmt(self) -> GStmt:
        prims = [self.prim()]
        while self.take("PUNCT", ";"):
            prims.append(self.prim())
        out = prims[-1]
        for prim in reversed(prims[:-1]):
            out = Seq(prim, out)
        return out

    def prim(self) -> GStmt:
        if self.take("KEYWORD", "true"):
            return TrueStmt()
        if self.take("KEYWORD", "read"):
            self.expect("PUNCT", "(")
            var = self.expect("IDENT")
            self.expect("PUNCT", ")")
            return Read(var.text)
        if self.take("KEYWORD", "print"):
            self.expect("PUNCT", "(")
            arg = self.expr()
            self.expect("PUNCT", ")")
            return Print(arg)
        if self.take("KEYWORD", "kchoose"):
            self.expect("PUNCT", "(")
            branches = [self.stmt()]
            while self.take("PUNCT", ","):
                branches.append(self.stmt())
            self.expect("PUNCT", ")")
            return KChoose(tuple(branches))
        if self.take("KEYWORD", "mchoose"):
            self.expect("PUNCT", "(")
            branches: list[tuple[str, GStmt]] = []
            labels: set[str] = set()
            while True:
                label_tok = self.expect("STRING")
                if label_tok.text in labels:
                    raise ParseError(
                        f"duplicate label {label_tok.text!r}",
                        label_tok.line,
                        label_tok.col,
                    )
                labels.add(label_tok.text)
                self.expect("PUNCT", ":")
                branches.append((label_tok.text, self.stmt()))
                if not self.take("PUNCT", ","):
                    break
            self.expect("PUNCT", ")")
            return MChoose(tuple(branches))
        if self.at("IDENT"):
            name = self.advance()
            if self.take("PUNCT", "="):
                return Assign(name.text, self.expr())
            if self.take("PUNCT", "("):
                args: list[Expr] = []
                if not self.at("PUNCT", ")"):
                    args.append(self.expr())
                    while self.take("PUNCT", ","):
                        args.append(self.expr())
                self.expect("PUNCT", ")")
                return Call(name.text, tuple(args))
            self.fail("expected '=' or '(' after identifier")
        if self.take("PUNCT", "("):
            inner = self.stmt()
            self.expect("PUNCT", ")")
            return inner
        self.fail(f"expected statement, found {_describe(self.peek())}")

    def expr(self) -> Expr:
        out = self.term()
        while self.at("PUNCT", "+") or self.at("PUNCT", "-"):
            op = "add" if self.advance().text == "+" else "sub"
            out = BinOp(op, out, self.term())
        return out

    def term(self) -> Expr:
        out = self.factor()
        while self.take("PUNCT", "*"):
            out = BinOp("mul", out, self.factor())
        return out

    def factor(self) -> Expr:
        tok = self.peek()
        if tok is not None and tok.kind == "INT":
            self.advance()
            return IntLit(int(tok.text))
        if tok is not None and tok.kind == "STRING":
            self.advance()
            return StrLit(tok.text)
        if tok is not None and tok.kind == "IDENT":
            self.advance()
            return Ident(tok.text)
        if self.take("PUNCT", "("):
            inner = self.expr()
            self.expect("PUNCT", ")")
            return inner
        self.fail(f"expected expression, found {_describe(tok)}")


def parse_program(source: str) -> list[ProcDef]:
    """Parse a whole program file into its procedure definitions."""
    return _Parser(tokenize(source)).program()


def parse_goal(source: str) -> GStmt:
    """Parse a standalone goal statement, requiring all input to be consumed."""
    parser = _Parser(tokenize(source))
    goal = parser.stmt()
    if parser.peek() is not None:
        parser.fail(f"unexpected trailing input {_describe(parser.peek())}")
    return goal
