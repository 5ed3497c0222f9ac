"""Unit tests for horizon.py: unrolling step-indexed constants."""

from __future__ import annotations

import pytest
from aspmt.bundled import read_program
from aspmt.errors import NormalizationError
from aspmt.horizon import unroll_steps
from aspmt.parser import parse_program
from aspmt.syntax import FALSUM, Atom, Implies, Rule
from aspmt.tightness import check_program

MOVES = """\
sort step = 0..2.
pred move(step).
pred close(step).
intensional move, close.
close(T) :- move(T-1).
"""


def test_unroll_with_horizon() -> None:
    program = unroll_steps(parse_program(MOVES), horizon=1)
    assert program.rules == (Rule(Atom("close_1"), Atom("move_0")),)
    assert list(program.signature.predicates) == ["move_0", "move_1", "close_0", "close_1"]
    assert program.signature.intensional == ("move_0", "move_1", "close_0", "close_1")
    assert program.signature.sorts["step"].hi == 1


def test_unroll_uses_declared_range_without_horizon() -> None:
    program = unroll_steps(parse_program(MOVES))
    assert program.rules == (
        Rule(Atom("close_1"), Atom("move_0")),
        Rule(Atom("close_2"), Atom("move_1")),
    )


def test_negative_literal_outside_steps_is_false() -> None:
    text = (
        "sort step = 0..1.\npred a(step).\npred b(step).\nintensional a, b.\n"
        "a(T) :- not b(T+1).\n"
    )
    first, second = unroll_steps(parse_program(text)).rules
    assert first == Rule(Atom("a_0"), Implies(Atom("b_1"), FALSUM))
    assert second == Rule(Atom("a_1"), Implies(FALSUM, FALSUM))


def test_program_without_steps_is_unchanged() -> None:
    program = parse_program("pred p.\nintensional p.\np.")
    assert unroll_steps(program) is program


def test_horizon_without_step_sort_is_rejected() -> None:
    program = parse_program("pred p.\nintensional p.\np.")
    with pytest.raises(NormalizationError, match="sort step"):
        unroll_steps(program, horizon=2)


def test_negative_horizon_is_rejected() -> None:
    with pytest.raises(NormalizationError, match="non-negative"):
        unroll_steps(parse_program(MOVES), horizon=-1)


def test_step_sort_must_start_at_zero() -> None:
    program = parse_program("sort step = 1..2.\npred p(step).\nintensional p.")
    with pytest.raises(NormalizationError, match="starting at 0"):
        unroll_steps(program)


def test_generated_name_clash() -> None:
    text = "sort step = 0..1.\npred p(step).\npred p_0.\nintensional p."
    with pytest.raises(NormalizationError, match="collides with declared name p_0"):
        unroll_steps(parse_program(text))


def test_unrolled_gears_is_tight() -> None:
    program = unroll_steps(parse_program(read_program("gears")), horizon=1)
    assert "m1speed_1" in program.signature.functions
    assert "move" not in program.signature.predicates
    assert check_program(program).tight
