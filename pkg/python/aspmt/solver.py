# SPDX-License-Identifier: BSD-2-Clause
# Copyright (c) deftio llc

"""Drive an external SMT-LIB 2 solver over stdin/stdout.

No solver is linked in-process.  Every failure (missing executable, timeout,
crash, unreadable answer) becomes a ``FAILURE`` verdict that carries the
captured output, so callers decide how loud to be.
"""

from __future__ import annotations

import dataclasses
import os
import shlex
import shutil
import subprocess  # nosec B404
import time
from typing import TYPE_CHECKING

from aspmt import _sexpr
from aspmt.interpretation import Interpretation
from aspmt.smt import blocking_clause, decode_model
from aspmt.types import AllModelsResult, SmtModel, SolverResult, Verdict

if TYPE_CHECKING:
    from collections.abc import Iterable

    from aspmt._logger import SolverLogger
    from aspmt.smt import SmtScript

DEFAULT_TIMEOUT = 60.0

# Command lines tried in order when neither a flag nor ASPMT_SOLVER names one.
_KNOWN_SOLVERS = (
    ("z3", "z3 -in"),
    ("cvc5", "cvc5 --lang smt2"),
)


def find_solver() -> str | None:
    """Solver command from ``ASPMT_SOLVER``, else the first known solver on ``PATH``."""
    configured = os.environ.get("ASPMT_SOLVER")
    if configured:
        return configured
    for executable, command in _KNOWN_SOLVERS:
        if shutil.which(executable):
            return command
    return None


def _text(data: str | bytes | None) -> str:
    if data is None:
        return ""
    if isinstance(data, bytes):
        return data.decode("utf-8", errors="replace")
    return data


def parse_response(stdout: str, stderr: str = "", exit_code: int | None = 0) -> SolverResult:
    """Verdict from the first line; the model (for ``sat``) from the rest."""
    lines = stdout.strip().splitlines()
    first = lines[0].strip() if lines else ""
    base = SolverResult(Verdict.FAILURE, stdout=stdout, stderr=stderr, exit_code=exit_code)
    if first == "unsat":
        return dataclasses.replace(base, verdict=Verdict.UNSAT)
    if first == "unknown":
        return dataclasses.replace(base, verdict=Verdict.UNKNOWN)
    if first != "sat":
        detail = f"unexpected response {first!r}" if first else "empty response"
        return dataclasses.replace(base, detail=detail)
    if exit_code not in (0, None):
        return dataclasses.replace(base, detail=f"solver exited with status {exit_code}")
    try:
        assignment = _sexpr.parse_model("\n".join(lines[1:]))
    except ValueError as exc:
        return dataclasses.replace(base, detail=f"malformed model: {exc}")
    return dataclasses.replace(base, verdict=Verdict.SAT, model=SmtModel(assignment))


def run_solver(
    script: SmtScript,
    command: str,
    *,
    timeout: float = DEFAULT_TIMEOUT,
    extra: tuple[str, ...] = (),
    logger: SolverLogger | None = None,
) -> SolverResult:
    """Send ``script`` plus ``(check-sat)`` and ``(get-model)`` to the solver."""
    text = script.render(extra) + "(check-sat)\n(get-model)\n"
    start = time.monotonic()
    try:
        proc = subprocess.run(  # noqa: S603  # nosec B603
            shlex.split(command),
            input=text,
            capture_output=True,
            text=True,
            timeout=timeout,
            check=False,
        )
    except subprocess.TimeoutExpired as exc:
        result = SolverResult(
            Verdict.FAILURE,
            stdout=_text(exc.stdout),
            stderr=_text(exc.stderr),
            detail=f"timed out after {timeout:g}s",
        )
    except (OSError, ValueError) as exc:
        result = SolverResult(Verdict.FAILURE, detail=f"cannot run {command!r}: {exc}")
    else:
        result = parse_response(proc.stdout, proc.stderr, proc.returncode)
    elapsed = (time.monotonic() - start) * 1000
    result = dataclasses.replace(result, duration_ms=elapsed)
    if logger is not None:
        logger.log_solve(command, text, result)
    return result


def all_models(
    script: SmtScript,
    command: str,
    projection: Iterable[str] | None = None,
    cap: int = 1000,
    *,
    timeout: float = DEFAULT_TIMEOUT,
    logger: SolverLogger | None = None,
) -> AllModelsResult:
    """Solve repeatedly, blocking each model's projection, until unsat or ``cap``.

    ``projection`` defaults to the intensional constants.  The final verdict
    is ``UNSAT`` when the enumeration is complete.  Once ``cap`` models are
    found one more call decides ``truncated``: it is set only when a further
    model exists.  Any other verdict means the solver failed or gave up part
    way and the models found so far are incomplete.
    """
    if cap < 1:
        msg = "cap must be at least 1"
        raise ValueError(msg)
    chosen = tuple(projection) if projection is not None else script.signature.intensional
    unknown = [c for c in chosen if not script.signature.is_constant(c)]
    if unknown:
        msg = f"unknown projection constants: {', '.join(unknown)}"
        raise ValueError(msg)
    models: list[Interpretation] = []
    blocks: list[str] = []
    calls = 0
    while True:
        result = run_solver(script, command, timeout=timeout, extra=tuple(blocks), logger=logger)
        calls += 1
        if result.verdict is not Verdict.SAT or result.model is None:
            break
        if len(models) >= cap:
            return AllModelsResult(
                tuple(sorted(models, key=Interpretation.sort_key)),
                truncated=True,
                verdict=Verdict.SAT,
                calls=calls,
            )
        model = decode_model(result.model, script)
        models.append(model)
        blocks.append(blocking_clause(model, script, chosen))
    return AllModelsResult(
        tuple(sorted(models, key=Interpretation.sort_key)),
        truncated=False,
        verdict=result.verdict,
        calls=calls,
        detail=result.detail,
    )
