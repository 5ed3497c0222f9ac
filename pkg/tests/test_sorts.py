"""Unit tests for sorts.py: well-sortedness of programs."""

from __future__ import annotations

import pytest
from aspmt.errors import SortError
from aspmt.sorts import SortDiagnostic, check_signature, check_well_sorted, require_well_sorted
from aspmt.syntax import (
    FALSUM,
    App,
    Atom,
    Cmp,
    Const,
    Eq,
    FunctionDecl,
    Num,
    Program,
    Rule,
    Signature,
    Sort,
    SortKind,
    Var,
)


def _signature() -> Signature:
    return Signature(
        sorts={
            "s": Sort("s", SortKind.RANGE, lo=0, hi=2),
            "color": Sort("color", SortKind.ENUMERATED, ("red", "green")),
        },
        functions={"f": FunctionDecl(("s",), "s"), "c": FunctionDecl((), "color")},
        predicates={"p": (), "q": ("s",)},
        intensional=("f", "p", "q"),
    )


def _messages(*rules: Rule) -> list[str]:
    return [d.message for d in check_well_sorted(Program(_signature(), rules))]


def test_well_sorted_program_has_no_diagnostics() -> None:
    x = Var("X", "s")
    rule = Rule(Eq(App("f", (x,)), x), Atom("q", (x,)), (x,))
    assert _messages(rule) == []


def test_head_must_be_atom_equality_or_empty() -> None:
    assert _messages(Rule(Cmp("<", Num(1), Num(2)))) == [
        "rule head must be an atom, an equality or empty"
    ]


def test_equality_head_needs_application_on_the_left() -> None:
    assert _messages(Rule(Eq(Num(1), App("f", (Num(0),))))) == [
        "equality head must have a function application on the left"
    ]


def test_choice_head_must_be_equality() -> None:
    assert _messages(Rule(Atom("p"), choice=True)) == ["choice head must be an equality"]


def test_free_variable_must_be_a_rule_variable() -> None:
    x = Var("X", "s")
    assert _messages(Rule(Atom("q", (x,)))) == ["variable X is not a rule variable"]


def test_wrong_arity() -> None:
    assert _messages(Rule(Atom("q"))) == ["q takes 1 argument(s), got 0"]


def test_comparing_incompatible_sorts() -> None:
    assert _messages(Rule(FALSUM, Eq(App("c"), Num(1)))) == ["comparing sort color with sort int"]


def test_object_name_as_integer_argument() -> None:
    assert _messages(Rule(Atom("q", (Const("red"),)))) == [
        "argument red of sort color, expected s"
    ]


def test_undeclared_object_name() -> None:
    assert _messages(Rule(FALSUM, Eq(App("c"), Const("blue")))) == ["undeclared object name blue"]


def test_predicate_used_as_term() -> None:
    assert _messages(Rule(FALSUM, Eq(App("p"), Num(1)))) == ["predicate p used as a term"]


def test_infinite_argument_sort_is_rejected() -> None:
    sig = Signature(functions={"g": FunctionDecl(("int",), "int")})
    (diag,) = check_signature(sig)
    assert diag == SortDiagnostic(None, "g", "argument sort int of g is not finite")
    assert str(diag) == "signature: argument sort int of g is not finite in `g`"


def test_diagnostics_carry_rule_index() -> None:
    program = Program(_signature(), (Rule(Atom("p")), Rule(Atom("q"))))
    (diag,) = check_well_sorted(program)
    assert diag.rule_index == 1
    assert str(diag).startswith("rule 1: ")


def test_require_well_sorted_raises() -> None:
    program = Program(_signature(), (Rule(Atom("q")),))
    with pytest.raises(SortError, match="q takes 1 argument"):
        require_well_sorted(program)


def test_require_well_sorted_returns_program() -> None:
    program = Program(_signature(), (Rule(Atom("p")),))
    assert require_well_sorted(program) is program
