# SPDX-License-Identifier: BSD-2-Clause
# Copyright (c) deftio llc

"""Fire-and-forget logging of solver calls and oracle runs to disk.

All I/O is synchronous filesystem writes.  A disabled logger does nothing.
"""

from __future__ import annotations

import datetime
import json
from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from pathlib import Path

    from aspmt.types import OracleResult, SolverResult


class SolverLogger:
    """Writes one ``solve-<timestamp>.smt2`` per solver call plus ``history.jsonl``."""

    def __init__(self, log_dir: Path, *, enabled: bool = True) -> None:
        self._logs_dir = log_dir
        self._history_path = log_dir / "history.jsonl"
        self._enabled = enabled

    @property
    def enabled(self) -> bool:
        """Whether logging is active."""
        return self._enabled

    @property
    def history_path(self) -> Path:
        return self._history_path

    def log_solve(self, command: str, script: str, result: SolverResult) -> None:
        """Write the script and the raw response, then append to history."""
        if not self._enabled:
            return
        self._logs_dir.mkdir(parents=True, exist_ok=True)

        started_at = datetime.datetime.now(tz=datetime.timezone.utc)
        log_path = self._logs_dir / f"solve-{_safe_timestamp(started_at)}.smt2"

        lines = [
            f"; command: {command}",
            f"; verdict: {result.verdict.value}",
            f"; duration_ms: {result.duration_ms:.1f}",
            f"; exit_code: {result.exit_code}",
        ]
        if result.detail:
            lines.append(f"; detail: {result.detail}")
        lines.append(script.rstrip("\n"))
        if result.stdout:
            lines.append("; --- stdout ---")
            lines.extend(f"; {line}" for line in result.stdout.splitlines())
        if result.stderr:
            lines.append("; --- stderr ---")
            lines.extend(f"; {line}" for line in result.stderr.splitlines())
        log_path.write_text("\n".join(lines) + "\n")

        self.append_history(
            {
                "type": "solve",
                "command": command,
                "verdict": result.verdict.value,
                "duration_ms": round(result.duration_ms, 1),
                "symbols": script.count("(declare-const"),
                "assertions": script.count("(assert"),
                "timestamp": started_at.isoformat(),
            }
        )

    def log_enumerate(self, program: str, result: OracleResult) -> None:
        """Append an oracle run to history."""
        if not self._enabled:
            return
        self._logs_dir.mkdir(parents=True, exist_ok=True)
        self.append_history(
            {
                "type": "enumerate",
                "program": program,
                "models": len(result.models),
                "classical_models": result.classical_models,
                "candidates": result.candidates,
                "duration_ms": round(result.duration_ms, 1),
                "timestamp": datetime.datetime.now(tz=datetime.timezone.utc).isoformat(),
            }
        )

    def append_history(self, entry: dict[str, object]) -> None:
        """Append one JSONL line to ``history.jsonl``."""
        if not self._enabled:
            return
        with self._history_path.open("a") as f:
            f.write(json.dumps(entry, default=str) + "\n")


def read_history(log_dir: Path, limit: int | None = None) -> list[dict[str, object]]:
    """Entries of ``history.jsonl``, oldest first; malformed lines are skipped."""
    path = log_dir / "history.jsonl"
    if not path.is_file():
        return []
    entries: list[dict[str, object]] = []
    for line in path.read_text().splitlines():
        try:
            entry = json.loads(line)
        except json.JSONDecodeError:
            continue
        if isinstance(entry, dict):
            entries.append(entry)
    return entries[-limit:] if limit else entries


def _safe_timestamp(dt: datetime.datetime) -> str:
    """Format a datetime as a filesystem-safe ISO timestamp."""
    return dt.isoformat().replace(":", "-").replace("+", "p")
