"""Tests for the aspmt error hierarchy."""

from __future__ import annotations

import aspmt
import pytest
from aspmt.errors import (
    AspmtError,
    CandidateCapExceeded,
    DecodeError,
    EmissionError,
    GroundingError,
    NormalizationError,
    NotTight,
    ProgramNotFound,
    SolverError,
    SortError,
    SubstitutionError,
    SyntaxDiagnosticsError,
    UnboundedQuantifier,
    UnevaluableAtom,
    UniverseMismatch,
)
from aspmt.parser import ParseDiagnostic, SourceSpan
from aspmt.sorts import SortDiagnostic

# -- Inheritance --


@pytest.mark.parametrize(
    "error",
    [
        SyntaxDiagnosticsError,
        SortError,
        SubstitutionError,
        NormalizationError,
        NotTight,
        GroundingError,
        UniverseMismatch,
        CandidateCapExceeded,
        EmissionError,
        SolverError,
        DecodeError,
        ProgramNotFound,
    ],
)
def test_every_error_is_aspmt_error(error: type[Exception]) -> None:
    assert issubclass(error, AspmtError)


def test_grounding_errors() -> None:
    assert issubclass(UnboundedQuantifier, GroundingError)
    assert issubclass(UnevaluableAtom, GroundingError)


def test_errors_exported_from_package() -> None:
    assert aspmt.NotTight is NotTight
    assert aspmt.AspmtError is AspmtError


# -- Catchability --


def test_catch_unbounded_quantifier_as_grounding_error() -> None:
    try:
        raise UnboundedQuantifier("X")
    except GroundingError:
        pass


def test_catch_not_tight_as_aspmt_error() -> None:
    try:
        raise NotTight(["p"])
    except AspmtError:
        pass


# -- Messages and attributes --


def test_syntax_diagnostics_message() -> None:
    diagnostic = ParseDiagnostic("syntax", "expected '.'", SourceSpan(4, 5, 2, 3))
    err = SyntaxDiagnosticsError([diagnostic, diagnostic])
    assert err.diagnostics == (diagnostic, diagnostic)
    assert str(err) == "2 error(s) in program: 2:3: syntax error: expected '.'"


def test_syntax_diagnostics_without_entries() -> None:
    assert str(SyntaxDiagnosticsError([])) == "0 error(s) in program"


def test_sort_error_joins_diagnostics() -> None:
    first = SortDiagnostic(0, "f(a)", "arity mismatch")
    second = SortDiagnostic(None, "g", "bad sort")
    err = SortError([first, second])
    assert str(err) == "rule 0: arity mismatch in `f(a)`; signature: bad sort in `g`"


def test_substitution_error() -> None:
    err = SubstitutionError("X", "term of sort color for variable of sort s")
    assert err.variable == "X"
    assert str(err) == "Cannot substitute for X: term of sort color for variable of sort s"
    assert str(SubstitutionError("Y")) == "Cannot substitute for Y"


def test_normalization_error() -> None:
    assert str(NormalizationError("bad head", rule_index=3)) == "rule 3: bad head"
    assert str(NormalizationError("bad head")) == "bad head"


def test_not_tight_reports_cycle() -> None:
    err = NotTight(["p", "q"])
    assert err.cycle == ("p", "q")
    assert str(err) == "Program is not tight: cycle p -> q -> p"


def test_unbounded_quantifier_hint() -> None:
    err = UnboundedQuantifier("X")
    assert err.variable == "X"
    assert "--bounds lo..hi" in str(err)


def test_unevaluable_and_universe_messages() -> None:
    assert str(UnevaluableAtom("c")) == "No value assigned to c"
    assert str(UniverseMismatch("s")) == "Interpretations differ on the universe of sort s"


def test_candidate_cap_formats_number() -> None:
    err = CandidateCapExceeded(10_000_000)
    assert err.cap == 10_000_000
    assert str(err) == "Enumeration exceeded the cap of 10,000,000 candidates"


def test_solver_error_messages() -> None:
    err = SolverError("z3 -in", "timed out after 5s")
    assert err.command == "z3 -in"
    assert str(err) == "Solver 'z3 -in' failed: timed out after 5s"
    assert str(SolverError("")) == "No SMT solver available"


def test_decode_error() -> None:
    err = DecodeError("amount1", 11, "outside 0..10")
    assert (err.symbol, err.value) == ("amount1", 11)
    assert str(err) == "Solver value 11 for amount1 is invalid: outside 0..10"


def test_program_not_found() -> None:
    err = ProgramNotFound("nosuch")
    assert err.name == "nosuch"
    assert str(err) == "No such program file or bundled example: nosuch"
