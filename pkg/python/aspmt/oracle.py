# SPDX-License-Identifier: BSD-2-Clause
# Copyright (c) deftio llc

"""Brute-force stable models: the ground truth the SMT pipeline is checked against.

An interpretation ``I`` is stable when it satisfies the grounded program and
no interpretation ``J`` that is smaller on the intensional constants satisfies
the reduct of the grounding with respect to ``I``.  Both searches run over
finite universes; background integers are finitized by ``Bounds``.
"""

from __future__ import annotations

import concurrent.futures
import functools
import re
import time
from typing import TYPE_CHECKING

from aspmt._search import Budget, Problem, solutions
from aspmt.errors import UniverseMismatch
from aspmt.grounder import ground_formula, prune_ground, reduct, satisfies
from aspmt.interpretation import (
    Interpretation,
    all_cells,
    cell_key,
    universes_for,
    value_domain,
)
from aspmt.types import OracleResult, StabilityVerdict

if TYPE_CHECKING:
    from collections.abc import Iterable, Mapping

    from aspmt.grounder import Bounds, GroundFormula
    from aspmt.interpretation import Cell
    from aspmt.normalize import ClarkProgram
    from aspmt.syntax import Formula, Program, Signature, Value

DEFAULT_MAX_CANDIDATES = 10_000_000

_FIXING = re.compile(r"^\s*([a-z][A-Za-z0-9_]*)\s*(?:\(([^)]*)\))?\s*=\s*(\S+)\s*$")
_INTEGER = re.compile(r"^-?\d+$")


def _value(text: str) -> Value:
    return int(text) if _INTEGER.match(text) else text


def parse_fixings(texts: Iterable[str], signature: Signature) -> dict[Cell, Value | bool]:
    """Parse ``name=value`` and ``name(a,b)=value`` strings into cell values.

    Predicates take ``true`` or ``false``.

    Raises:
        ValueError: If a string is malformed or names an unknown constant,
            argument tuple or value.

    """
    fixings: dict[Cell, Value | bool] = {}
    for text in texts:
        match = _FIXING.match(text)
        if match is None:
            msg = f"expected name=value or name(a,b)=value, got {text!r}"
            raise ValueError(msg)
        name, raw_args, raw_value = match.groups()
        if not signature.is_constant(name):
            msg = f"unknown constant {name!r}"
            raise ValueError(msg)
        args = tuple(_value(a.strip()) for a in raw_args.split(",")) if raw_args else ()
        if args not in signature.argument_tuples(name):
            msg = f"{cell_key(name, args)} is not a cell of {name}"
            raise ValueError(msg)
        value: Value | bool
        if name in signature.predicates:
            if raw_value not in ("true", "false"):
                msg = f"predicate {name} takes true or false, got {raw_value!r}"
                raise ValueError(msg)
            value = raw_value == "true"
        else:
            value = _value(raw_value)
            sort = signature.functions[name].value
            if not signature.sort(sort).contains(value):
                msg = f"{raw_value!r} is not a value of sort {sort}"
                raise ValueError(msg)
        fixings[name, args] = value
    return fixings


def interpretation_from_texts(
    signature: Signature, texts: Iterable[str], bounds: Bounds | None = None
) -> Interpretation:
    """Interpretation from ``name=value`` strings; unlisted predicate cells are false.

    Raises:
        ValueError: If a function cell has no value or a string is invalid.

    """
    given = parse_fixings(texts, signature)
    cells: dict[Cell, Value | bool] = {}
    missing = []
    for cell in all_cells(signature):
        if cell in given:
            cells[cell] = given[cell]
        elif cell[0] in signature.predicates:
            cells[cell] = False
        else:
            missing.append(cell_key(*cell))
    if missing:
        msg = f"no value given for {', '.join(missing)}"
        raise ValueError(msg)
    return Interpretation.from_cells(signature, _universes(signature, bounds), cells)


def _universes(signature: Signature, bounds: Bounds | None) -> dict[str, tuple[Value, ...]]:
    return universes_for(signature, bounds.default if bounds is not None else None)


def _sentence(source: Program | ClarkProgram) -> tuple[Signature, Formula]:
    return source.signature, source.as_formula()


def less_than(j: Interpretation, i: Interpretation, intensional: Iterable[str]) -> bool:
    """``J < I`` on the intensional constants.

    Same universes, agreement outside ``intensional``, every intensional
    predicate extension of ``J`` included in that of ``I``, and a difference
    somewhere on ``intensional``.

    Raises:
        UniverseMismatch: If the interpretations have different universes.

    """
    for sort in sorted(set(i.universes) | set(j.universes)):
        if tuple(i.universes.get(sort, ())) != tuple(j.universes.get(sort, ())):
            raise UniverseMismatch(sort)
    chosen = set(intensional)
    if not j.agrees_outside(i, chosen):
        return False
    for name in chosen:
        if name in i.predicates and not j.predicates[name] <= i.predicates[name]:
            return False
    mine, theirs = j.cells(), i.cells()
    return any(mine[c] != theirs[c] for c in mine if c[0] in chosen)


def _witness_problem(gf: GroundFormula, interp: Interpretation) -> Problem:
    """Search space of ``J``: intensional cells vary, everything else is ``I``."""
    signature = interp.signature
    current = interp.cells()
    cells: list[Cell] = []
    domains: list[tuple[Value | bool, ...]] = []
    fixed: dict[Cell, Value | bool] = {}
    for cell, value in current.items():
        name = cell[0]
        if not signature.is_intensional(name):
            fixed[cell] = value
            continue
        cells.append(cell)
        if name in signature.predicates:
            domains.append((False, True) if value else (False,))
        else:
            domains.append(value_domain(signature, name, interp.universes))
    return Problem(signature, gf, tuple(cells), tuple(domains), fixed)


def _smaller_model(gf: GroundFormula, interp: Interpretation, cap: int) -> Interpretation | None:
    """First ``J < I`` that satisfies the reduct of ``gf``, in search order."""
    problem = _witness_problem(prune_ground(reduct(gf, interp)), interp)
    current = interp.cells()
    for found in solutions(problem, Budget(cap)):
        if any(found[c] != current[c] for c in problem.cells):
            return Interpretation.from_cells(interp.signature, interp.universes, found)
    return None


def _stability(gf: GroundFormula, cap: int, interp: Interpretation) -> StabilityVerdict:
    if not satisfies(interp, gf):
        return StabilityVerdict(stable=False, model=False)
    witness = _smaller_model(gf, interp, cap)
    return StabilityVerdict(stable=witness is None, model=True, witness=witness)


def check_stability(
    interp: Interpretation,
    source: Program | ClarkProgram,
    bounds: Bounds | None = None,
    *,
    max_candidates: int = DEFAULT_MAX_CANDIDATES,
) -> StabilityVerdict:
    """Decide stability of ``interp`` and report the first smaller model of the reduct.

    Raises:
        UnboundedQuantifier: If an integer quantifier or constant has no bounds.
        CandidateCapExceeded: If the search for a smaller model grows too large.

    """
    _, sentence = _sentence(source)
    gf = ground_formula(sentence, interp.signature, bounds)
    return _stability(gf, max_candidates, interp)


def is_stable(
    interp: Interpretation, source: Program | ClarkProgram, bounds: Bounds | None = None
) -> bool:
    return check_stability(interp, source, bounds).stable


def _model_problem(
    gf: GroundFormula,
    signature: Signature,
    universes: Mapping[str, tuple[Value, ...]],
    fixings: Mapping[Cell, Value | bool],
) -> Problem:
    cells: list[Cell] = []
    domains: list[tuple[Value | bool, ...]] = []
    for cell in all_cells(signature):
        domain = value_domain(signature, cell[0], universes)
        if cell in fixings:
            if fixings[cell] not in domain:
                msg = f"{cell_key(*cell)}={fixings[cell]} is outside its universe"
                raise ValueError(msg)
            continue
        cells.append(cell)
        domains.append(domain)
    return Problem(signature, gf, tuple(cells), tuple(domains), dict(fixings))


def _classical(
    sentence: Formula,
    signature: Signature,
    bounds: Bounds | None,
    fixings: Mapping[Cell, Value | bool] | None,
    budget: Budget,
) -> tuple[GroundFormula, list[Interpretation]]:
    universes = _universes(signature, bounds)
    gf = ground_formula(sentence, signature, bounds)
    problem = _model_problem(gf, signature, universes, fixings or {})
    found = solutions(problem, budget)
    models = [Interpretation.from_cells(signature, universes, s) for s in found]
    return gf, models


def enumerate_models(
    formula: Formula,
    signature: Signature,
    bounds: Bounds | None = None,
    fixings: Mapping[Cell, Value | bool] | None = None,
    *,
    max_candidates: int = DEFAULT_MAX_CANDIDATES,
) -> list[Interpretation]:
    """Every classical model of a sentence over the finite universes, canonically ordered."""
    _, models = _classical(formula, signature, bounds, fixings, Budget(max_candidates))
    return sorted(models, key=Interpretation.sort_key)


def run_oracle(
    source: Program | ClarkProgram,
    bounds: Bounds | None = None,
    fixings: Mapping[Cell, Value | bool] | None = None,
    *,
    max_candidates: int = DEFAULT_MAX_CANDIDATES,
    jobs: int = 1,
) -> OracleResult:
    """Enumerate stable models and report search statistics.

    Unfixed non-intensional constants are free parameters: every value
    combination is a separate candidate.  Fixing an intensional constant
    keeps only the stable models that agree with it.

    Raises:
        UnboundedQuantifier: If an integer quantifier or constant has no bounds.
        CandidateCapExceeded: If a search visits more than ``max_candidates`` nodes.

    """
    start = time.monotonic()
    signature, sentence = _sentence(source)
    budget = Budget(max_candidates)
    gf, candidates = _classical(sentence, signature, bounds, fixings, budget)
    check = functools.partial(_stability, gf, max_candidates)
    if jobs > 1 and len(candidates) > 1:
        with concurrent.futures.ProcessPoolExecutor(max_workers=jobs) as pool:
            chunk = max(1, len(candidates) // (jobs * 4))
            verdicts = list(pool.map(check, candidates, chunksize=chunk))
    else:
        verdicts = [check(c) for c in candidates]
    stable = sorted(
        (c for c, v in zip(candidates, verdicts) if v.stable), key=Interpretation.sort_key
    )
    return OracleResult(
        models=tuple(stable),
        candidates=budget.spent,
        classical_models=len(candidates),
        duration_ms=(time.monotonic() - start) * 1000,
    )


def enumerate_stable_models(
    source: Program | ClarkProgram,
    bounds: Bounds | None = None,
    fixings: Mapping[Cell, Value | bool] | None = None,
    *,
    max_candidates: int = DEFAULT_MAX_CANDIDATES,
    jobs: int = 1,
) -> list[Interpretation]:
    """The complete, canonically ordered list of stable models."""
    result = run_oracle(source, bounds, fixings, max_candidates=max_candidates, jobs=jobs)
    return list(result.models)
