# SPDX-License-Identifier: BSD-2-Clause
# Copyright (c) deftio llc

from __future__ import annotations

from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from collections.abc import Sequence

    from aspmt.parser import ParseDiagnostic
    from aspmt.sorts import SortDiagnostic


class AspmtError(Exception):
    """Base exception for all aspmt errors."""


class SyntaxDiagnosticsError(AspmtError):
    """The input text could not be turned into a well-sorted program."""

    def __init__(self, diagnostics: Sequence[ParseDiagnostic]) -> None:
        self.diagnostics = tuple(diagnostics)
        count = len(self.diagnostics)
        msg = f"{count} error(s) in program"
        if self.diagnostics:
            msg = f"{msg}: {self.diagnostics[0]}"
        super().__init__(msg)


class SortError(AspmtError):
    """A program or formula does not respect its signature."""

    def __init__(self, diagnostics: Sequence[SortDiagnostic]) -> None:
        self.diagnostics = tuple(diagnostics)
        msg = "; ".join(str(d) for d in self.diagnostics) or "sort error"
        super().__init__(msg)


class SubstitutionError(AspmtError):
    """A binding maps a variable to a term of an incompatible sort."""

    def __init__(self, variable: str, detail: str = "") -> None:
        self.variable = variable
        msg = f"Cannot substitute for {variable}"
        if detail:
            msg = f"{msg}: {detail}"
        super().__init__(msg)


class NormalizationError(AspmtError):
    """A rule cannot be brought into Clark normal form."""

    def __init__(self, detail: str, rule_index: int | None = None) -> None:
        self.rule_index = rule_index
        msg = detail if rule_index is None else f"rule {rule_index}: {detail}"
        super().__init__(msg)


class NotTight(AspmtError):
    """The program's t-dependency graph has a cycle."""

    def __init__(self, cycle: Sequence[str]) -> None:
        self.cycle = tuple(cycle)
        path = " -> ".join([*self.cycle, self.cycle[0]]) if self.cycle else ""
        super().__init__(f"Program is not tight: cycle {path}")


class GroundingError(AspmtError):
    """A formula cannot be grounded or evaluated."""


class UnboundedQuantifier(GroundingError):
    """A background-integer variable or constant has no bounds to range over."""

    def __init__(self, variable: str) -> None:
        self.variable = variable
        super().__init__(
            f"{variable} ranges over the integers; give --bounds lo..hi to finitize it"
        )


class UnevaluableAtom(GroundingError):
    """An atom mentions a constant the interpretation does not assign."""

    def __init__(self, constant: str) -> None:
        self.constant = constant
        super().__init__(f"No value assigned to {constant}")


class UniverseMismatch(AspmtError):
    """Two interpretations do not share their universes."""

    def __init__(self, sort: str) -> None:
        self.sort = sort
        super().__init__(f"Interpretations differ on the universe of sort {sort}")


class CandidateCapExceeded(AspmtError):
    """Exhaustive enumeration would visit more candidates than allowed."""

    def __init__(self, cap: int) -> None:
        self.cap = cap
        super().__init__(f"Enumeration exceeded the cap of {cap:,} candidates")


class EmissionError(AspmtError):
    """A completed theory cannot be rendered as SMT-LIB in the requested mode."""


class SolverError(AspmtError):
    """The external SMT solver could not be started or understood."""

    def __init__(self, command: str, detail: str = "") -> None:
        self.command = command
        msg = f"Solver {command!r} failed" if command else "No SMT solver available"
        if detail:
            msg = f"{msg}: {detail}"
        super().__init__(msg)


class DecodeError(AspmtError):
    """A solver model assigns a value outside the declared sort."""

    def __init__(self, symbol: str, value: object, detail: str = "") -> None:
        self.symbol = symbol
        self.value = value
        msg = f"Solver value {value!r} for {symbol} is invalid"
        if detail:
            msg = f"{msg}: {detail}"
        super().__init__(msg)


class ProgramNotFound(AspmtError):
    """Input names neither a readable file nor a bundled program."""

    def __init__(self, name: str) -> None:
        self.name = name
        super().__init__(f"No such program file or bundled example: {name}")
