# SPDX-License-Identifier: BSD-2-Clause
# Copyright (c) deftio llc

"""Compile programs to completed theories and cross-check the two solving routes.

``compile_program`` runs parse, step unrolling, normalization, the tightness
check and completion.  ``verify_program`` enumerates stable models with the
oracle and with the SMT solver and compares the projected model sets.
"""

from __future__ import annotations

import dataclasses
from pathlib import Path
from typing import TYPE_CHECKING

from aspmt.bundled import PROGRAMS, read_program
from aspmt.completion import complete
from aspmt.errors import NotTight, ProgramNotFound, SolverError
from aspmt.horizon import unroll_steps
from aspmt.normalize import to_clark_normal_form
from aspmt.oracle import DEFAULT_MAX_CANDIDATES, run_oracle
from aspmt.parser import parse_program
from aspmt.smt import Mode, emit
from aspmt.solver import DEFAULT_TIMEOUT, all_models
from aspmt.tightness import check_program
from aspmt.types import Verdict, VerifyReport

if TYPE_CHECKING:
    from collections.abc import Iterable, Mapping

    from aspmt._logger import SolverLogger
    from aspmt.completion import CompletedTheory
    from aspmt.grounder import Bounds
    from aspmt.interpretation import Cell, Interpretation
    from aspmt.normalize import ClarkProgram
    from aspmt.syntax import Program, Value
    from aspmt.tightness import TightnessResult


@dataclasses.dataclass(frozen=True)
class CompiledProgram:
    """Every stage of the compilation of one program."""

    program: Program
    clark: ClarkProgram
    tightness: TightnessResult
    theory: CompletedTheory


def read_source(target: str) -> tuple[str, str]:
    """Return ``(label, text)`` for a program file path or a bundled program name.

    Raises:
        ProgramNotFound: If *target* is neither a readable file nor bundled.

    """
    path = Path(target)
    if path.is_file():
        try:
            return str(path), path.read_text()
        except (OSError, UnicodeDecodeError) as exc:
            raise ProgramNotFound(target) from exc
    if target in PROGRAMS:
        return target, read_program(target)
    raise ProgramNotFound(target)


def load_program(target: str, *, horizon: int | None = None) -> Program:
    """Parse a program file or bundled program and unroll its steps."""
    _, text = read_source(target)
    return unroll_steps(parse_program(text), horizon)


def compile_program(program: Program, *, require_tight: bool = True) -> CompiledProgram:
    """Normalize, check tightness and complete.

    Raises:
        NotTight: If ``require_tight`` and the dependency graph has a cycle.
        NormalizationError: If a rule head cannot be normalized.

    """
    tightness = check_program(program)
    if require_tight and not tightness.tight:
        raise NotTight(tightness.cycle)
    clark = to_clark_normal_form(program)
    return CompiledProgram(program, clark, tightness, complete(clark))


def _projected(
    models: Iterable[Interpretation], projection: tuple[str, ...]
) -> tuple[dict[str, str], ...]:
    seen: dict[tuple[tuple[str, str], ...], dict[str, str]] = {}
    for model in models:
        row = model.assignment(projection)
        seen.setdefault(tuple(row.items()), row)
    return tuple(seen.values())


def verify_program(  # noqa: PLR0913
    compiled: CompiledProgram,
    command: str,
    *,
    bounds: Bounds | None = None,
    fixings: Mapping[Cell, Value | bool] | None = None,
    projection: Iterable[str] | None = None,
    cap: int = 1000,
    timeout: float = DEFAULT_TIMEOUT,
    max_candidates: int = DEFAULT_MAX_CANDIDATES,
    jobs: int = 1,
    logger: SolverLogger | None = None,
) -> VerifyReport:
    """Compare oracle stable models with SMT models of the completion.

    The projection defaults to every constant, so free parameters count.
    The first model found by one side only is the report's discrepancy.

    Raises:
        SolverError: If the solver answers ``unknown`` or fails.
        CandidateCapExceeded: If the oracle search grows too large.

    """
    signature = compiled.program.signature
    chosen = tuple(projection) if projection is not None else signature.constants()
    oracle = run_oracle(
        compiled.program, bounds, fixings, max_candidates=max_candidates, jobs=jobs
    )
    script = emit(compiled.theory, Mode.EXPANDED, bounds, fixings)
    smt = all_models(script, command, chosen, cap, timeout=timeout, logger=logger)
    if smt.verdict not in (Verdict.SAT, Verdict.UNSAT):
        raise SolverError(command, smt.detail or smt.verdict.value)

    oracle_rows = _projected(oracle.models, chosen)
    smt_rows = _projected(smt.models, chosen)
    discrepancy: dict[str, str] | None = None
    missing_from = ""
    # a truncated SMT run may lack oracle models, but never has extra ones
    extra = [row for row in smt_rows if row not in oracle_rows]
    missing = [] if smt.truncated else [row for row in oracle_rows if row not in smt_rows]
    if missing:
        discrepancy, missing_from = missing[0], "smt"
    elif extra:
        discrepancy, missing_from = extra[0], "oracle"
    return VerifyReport(
        projection=chosen,
        oracle_models=oracle_rows,
        smt_models=smt_rows,
        truncated=smt.truncated,
        discrepancy=discrepancy,
        missing_from=missing_from,
        oracle=oracle,
        smt=smt,
    )
