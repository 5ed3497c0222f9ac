# SPDX-License-Identifier: BSD-2-Clause
# Copyright (c) deftio llc

"""Backtracking search over cell assignments with three-valued pruning.

The ground formula is split into the members of its top-level conjunction.
After each assignment only the members that mention the assigned constant are
re-evaluated; a member that is already false cuts the branch.
"""

from __future__ import annotations

import dataclasses
from typing import TYPE_CHECKING

from aspmt.errors import CandidateCapExceeded
from aspmt.grounder import eval3, ground_constants, top_members
from aspmt.interpretation import UNKNOWN

if TYPE_CHECKING:
    from collections.abc import Iterator, Mapping

    from aspmt.grounder import GroundFormula
    from aspmt.interpretation import Cell, _Unknown
    from aspmt.syntax import Signature, Value


class Budget:
    """Counts visited search nodes and refuses to go past ``cap``."""

    def __init__(self, cap: int) -> None:
        self.cap = cap
        self.spent = 0

    def spend(self) -> None:
        self.spent += 1
        if self.spent > self.cap:
            raise CandidateCapExceeded(self.cap)


@dataclasses.dataclass(frozen=True)
class Problem:
    signature: Signature
    formula: GroundFormula
    cells: tuple[Cell, ...]
    domains: tuple[tuple[Value | bool, ...], ...]
    fixed: Mapping[Cell, Value | bool] = dataclasses.field(default_factory=dict)


def solutions(problem: Problem, budget: Budget) -> Iterator[dict[Cell, Value | bool]]:
    """Every total assignment that satisfies the formula, in search order."""
    members = top_members(problem.formula)
    index: dict[str, list[GroundFormula]] = {}
    for member in members:
        for name in ground_constants(member):
            index.setdefault(name, []).append(member)

    assigned: dict[Cell, Value | bool] = dict(problem.fixed)

    def lookup(name: str, args: tuple[Value, ...]) -> Value | bool | _Unknown:
        return assigned.get((name, args), UNKNOWN)

    def consistent(checked: list[GroundFormula] | tuple[GroundFormula, ...]) -> bool:
        return all(eval3(m, problem.signature, lookup) is not False for m in checked)

    def extend(depth: int) -> Iterator[dict[Cell, Value | bool]]:
        if depth == len(problem.cells):
            yield dict(assigned)
            return
        cell = problem.cells[depth]
        for value in problem.domains[depth]:
            budget.spend()
            assigned[cell] = value
            if consistent(index.get(cell[0], [])):
                yield from extend(depth + 1)
        assigned.pop(cell, None)

    if consistent(members):
        yield from extend(0)
