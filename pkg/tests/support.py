"""Shared test helpers: paths, a scripted transport, and a CLI runner."""

from __future__ import annotations

import subprocess
import sys
from pathlib import Path

REPO = Path(__file__).resolve().parents[1]
CORPUS = REPO / "corpus"
GOLDENS = Path(__file__).resolve().parent / "goldens"


def corpus_source(name: str) -> str:
    return (CORPUS / f"{name}.jbi").read_text(encoding="utf-8")


def golden(name: str) -> str:
    return (GOLDENS / f"{name}.trace").read_text(encoding="utf-8")


class ScriptTransport:
    """In-memory transport answering from a fixed list of action lines."""

    def __init__(self, actions: list[str]):
        self.actions = list(actions)
        self.sent: list[str] = []

    def send_line(self, line: str) -> None:
        assert line.endswith("\n") and "\n" not in line[:-1]
        self.sent.append(line)

    def recv_line(self) -> str:
        if not self.actions:
            raise EOFError("action script exhausted")
        return self.actions.pop(0)


def run_cli(*args: str, stdin: str | None = None) -> subprocess.CompletedProcess:
    """Run the installed CLI in a subprocess from the repository root."""
    return subprocess.run(
        [sys.executable, "-m", "jbi", *args],
        capture_output=True,
        text=True,
        input=stdin,
        cwd=REPO,
        timeout=60,
    )
