# SPDX-License-Identifier: BSD-2-Clause
# Copyright (c) deftio llc

"""Subcommand orchestration behind the click commands.

Each handler takes a :class:`RunConfig` and returns the process exit code;
click only parses flags.  Exit codes: 0 success, 1 error or failed check,
2 program not tight, 20 no model, 30 solver answered ``unknown``.
"""

from __future__ import annotations

import dataclasses
import sys
from pathlib import Path
from typing import TYPE_CHECKING

from aspmt.cli._output import (
    format_completion,
    format_error,
    format_log_table,
    format_models,
    format_not_tight,
    format_program_list,
    format_stability,
    format_stats,
    format_tightness,
    format_verify,
    print_warning,
)
from aspmt.errors import AspmtError, NotTight, SolverError
from aspmt.oracle import DEFAULT_MAX_CANDIDATES
from aspmt.solver import DEFAULT_TIMEOUT

if TYPE_CHECKING:
    from collections.abc import Callable

    from aspmt._logger import SolverLogger
    from aspmt.grounder import Bounds
    from aspmt.pipeline import CompiledProgram
    from aspmt.syntax import Program

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_NOT_TIGHT = 2
EXIT_UNSAT = 20
EXIT_UNKNOWN = 30


@dataclasses.dataclass(frozen=True)
class RunConfig:
    """Everything one CLI invocation needs, after config files and flags are merged."""

    subcommand: str
    input: str = ""
    bounds: tuple[str, ...] = ()
    fixings: tuple[str, ...] = ()
    solver: str | None = None
    projection: tuple[str, ...] | None = None
    json_output: bool = False
    verbose: bool = False
    max_candidates: int = DEFAULT_MAX_CANDIDATES
    cap: int = 1000
    timeout: float = DEFAULT_TIMEOUT
    horizon: int | None = None
    all_models: bool = False
    mode: str = "expanded"
    emit: str = "completion"
    dot: bool = False
    jobs: int = 1
    assign: tuple[str, ...] = ()
    log_dir: str | None = None
    last: int = 10
    entry_type: str | None = None


def run(config: RunConfig) -> int:
    """Run one subcommand; errors are printed, never raised."""
    handler = _HANDLERS[config.subcommand]
    try:
        return handler(config)
    except NotTight as exc:
        format_not_tight(exc)
        return EXIT_NOT_TIGHT
    except (AspmtError, ValueError) as exc:
        format_error(exc)
        return EXIT_ERROR


# ---------------------------------------------------------------------------
# Shared steps
# ---------------------------------------------------------------------------


def _load(config: RunConfig) -> Program:
    from aspmt.pipeline import load_program  # noqa: PLC0415

    return load_program(config.input, horizon=config.horizon)


def _compile(config: RunConfig, *, require_tight: bool = True) -> CompiledProgram:
    from aspmt.pipeline import compile_program  # noqa: PLC0415

    return compile_program(_load(config), require_tight=require_tight)


def _bounds(config: RunConfig) -> Bounds | None:
    from aspmt.grounder import Bounds  # noqa: PLC0415

    return Bounds.parse(config.bounds) if config.bounds else None


def _solver_command(config: RunConfig) -> str:
    from aspmt.solver import find_solver  # noqa: PLC0415

    command = config.solver or find_solver()
    if not command:
        raise SolverError("", "none given and neither z3 nor cvc5 is on PATH")
    return command


def _logger(config: RunConfig) -> SolverLogger | None:
    if config.log_dir is None:
        return None
    from aspmt._logger import SolverLogger  # noqa: PLC0415

    return SolverLogger(Path(config.log_dir))


def _report(config: RunConfig, stats: dict[str, object]) -> None:
    if config.verbose and not config.json_output:
        format_stats(stats)


# ---------------------------------------------------------------------------
# Handlers
# ---------------------------------------------------------------------------


def _check_tight(config: RunConfig) -> int:
    from aspmt.tightness import check_program, to_dot  # noqa: PLC0415

    result = check_program(_load(config))
    if config.dot:
        sys.stdout.write(to_dot(result.graph, result.cycle))
    else:
        format_tightness(result, json_output=config.json_output)
    return EXIT_OK if result.tight else EXIT_NOT_TIGHT


def _complete(config: RunConfig) -> int:
    compiled = _compile(config, require_tight=False)
    if not compiled.tightness.tight:
        cycle = ", ".join(compiled.tightness.cycle)
        print_warning(
            f"program is not tight (cycle [{cycle}]); completion models may not be stable"
        )
    if config.emit == "smt":
        from aspmt.oracle import parse_fixings  # noqa: PLC0415
        from aspmt.smt import Mode, emit  # noqa: PLC0415

        fixings = parse_fixings(config.fixings, compiled.program.signature)
        script = emit(compiled.theory, Mode(config.mode), _bounds(config), fixings)
        sys.stdout.write(script.render())
        return EXIT_OK
    format_completion(compiled, emit=config.emit, json_output=config.json_output)
    return EXIT_OK


def _solve(config: RunConfig) -> int:
    from aspmt.oracle import parse_fixings  # noqa: PLC0415
    from aspmt.smt import Mode, decode_model, emit  # noqa: PLC0415
    from aspmt.solver import all_models, run_solver  # noqa: PLC0415
    from aspmt.types import Verdict  # noqa: PLC0415

    compiled = _compile(config)
    signature = compiled.program.signature
    fixings = parse_fixings(config.fixings, signature)
    script = emit(compiled.theory, Mode(config.mode), _bounds(config), fixings)
    for warning in compiled.theory.warnings:
        print_warning(warning)
    command = _solver_command(config)
    logger = _logger(config)

    projection = config.projection
    if config.all_models:
        found = all_models(
            script,
            command,
            projection,
            config.cap,
            timeout=config.timeout,
            logger=logger,
        )
        models = list(found.models)
        verdict, detail = found.verdict, found.detail
        projection = projection or signature.intensional
        stats: dict[str, object] = {
            "models": len(models),
            "calls": found.calls,
            "truncated": found.truncated,
            "logic": script.logic,
        }
    else:
        result = run_solver(script, command, timeout=config.timeout, logger=logger)
        verdict, detail = result.verdict, result.detail
        models = [decode_model(result.model, script)] if result.model is not None else []
        stats = {
            "models": len(models),
            "duration_ms": round(result.duration_ms, 1),
            "logic": script.logic,
        }

    # after models were found, only UNSAT or the cap end an enumeration
    if verdict is Verdict.FAILURE:
        raise SolverError(command, detail)
    if verdict is Verdict.UNKNOWN:
        print_warning(f"solver answered unknown{': ' + detail if detail else ''}")
        if not models:
            return EXIT_UNKNOWN
        print_warning(f"model list is incomplete after {len(models)} model(s)")
        stats["incomplete"] = True
    format_models(models, projection, stats, json_output=config.json_output, title="Models")
    _report(config, stats)
    if verdict is Verdict.UNKNOWN:
        return EXIT_UNKNOWN
    return EXIT_OK if models else EXIT_UNSAT


def _enumerate(config: RunConfig) -> int:
    from aspmt.oracle import parse_fixings, run_oracle  # noqa: PLC0415

    program = _load(config)
    fixings = parse_fixings(config.fixings, program.signature)
    result = run_oracle(
        program,
        _bounds(config),
        fixings,
        max_candidates=config.max_candidates,
        jobs=config.jobs,
    )
    logger = _logger(config)
    if logger is not None:
        logger.log_enumerate(config.input, result)
    stats: dict[str, object] = {
        "models": len(result.models),
        "classical_models": result.classical_models,
        "candidates": result.candidates,
        "duration_ms": round(result.duration_ms, 1),
    }
    format_models(result.models, config.projection, stats, json_output=config.json_output)
    _report(config, stats)
    return EXIT_OK if result.models else EXIT_UNSAT


def _verify(config: RunConfig) -> int:
    from aspmt.oracle import parse_fixings  # noqa: PLC0415
    from aspmt.pipeline import verify_program  # noqa: PLC0415

    compiled = _compile(config)
    fixings = parse_fixings(config.fixings, compiled.program.signature)
    report = verify_program(
        compiled,
        _solver_command(config),
        bounds=_bounds(config),
        fixings=fixings,
        projection=config.projection,
        cap=config.cap,
        timeout=config.timeout,
        max_candidates=config.max_candidates,
        jobs=config.jobs,
        logger=_logger(config),
    )
    format_verify(report, json_output=config.json_output)
    return EXIT_OK if report.equal else EXIT_ERROR


def _check_stable(config: RunConfig) -> int:
    from aspmt.oracle import check_stability, interpretation_from_texts  # noqa: PLC0415

    program = _load(config)
    bounds = _bounds(config)
    interp = interpretation_from_texts(program.signature, config.assign, bounds)
    verdict = check_stability(interp, program, bounds, max_candidates=config.max_candidates)
    format_stability(verdict, json_output=config.json_output)
    return EXIT_OK if verdict.stable else EXIT_ERROR


def _examples(config: RunConfig) -> int:
    from aspmt.bundled import list_programs  # noqa: PLC0415

    format_program_list(list_programs(), json_output=config.json_output)
    return EXIT_OK


def _logs(config: RunConfig) -> int:
    from aspmt._logger import read_history  # noqa: PLC0415
    from aspmt.cli._output import click_echo_json  # noqa: PLC0415

    entries = read_history(Path(config.log_dir or ".aspmt/logs"))
    if config.entry_type:
        entries = [e for e in entries if e.get("type") == config.entry_type]
    entries = entries[-config.last :]
    if config.json_output:
        click_echo_json(entries)
        return EXIT_OK
    if not entries:
        sys.stdout.write("No log entries found.\n")
        return EXIT_OK
    format_log_table(entries)
    return EXIT_OK


_HANDLERS: dict[str, Callable[[RunConfig], int]] = {
    "check-tight": _check_tight,
    "complete": _complete,
    "solve": _solve,
    "enumerate": _enumerate,
    "verify": _verify,
    "check-stable": _check_stable,
    "examples": _examples,
    "logs": _logs,
}
