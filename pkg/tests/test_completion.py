"""Unit tests for completion.py: Clark completion, simplification and the split."""

from __future__ import annotations

import random

import pytest
from aspmt.bundled import read_program
from aspmt.completion import CompletedTheory, complete, simplify, split_biconditional
from aspmt.normalize import to_clark_normal_form
from aspmt.oracle import enumerate_models, run_oracle
from aspmt.parser import parse_program
from aspmt.pipeline import CompiledProgram, compile_program
from aspmt.printer import print_formula
from aspmt.syntax import (
    FALSUM,
    TOP,
    And,
    App,
    Atom,
    Cmp,
    Eq,
    Exists,
    Num,
    Var,
    neg,
)

from tests.generators import random_tight_program


def _theory(name: str) -> CompletedTheory:
    return complete(to_clark_normal_form(parse_program(read_program(name))))


# --- Biconditionals ---


def test_bucket_completion(bucket_compiled: CompiledProgram) -> None:
    formula = bucket_compiled.theory.biconditionals["amount1"]
    assert print_formula(formula) == (
        "forall Y in amount: "
        "(amount1 = Y <-> not not amount1 = Y & amount0 = Y + 1 | Y = 10 & fillup)"
    )


def test_office_completion() -> None:
    theory = _theory("office")
    assert print_formula(theory.biconditionals["myoffice"]) == (
        "forall X1 in room: (myoffice(X1) <-> X1 = a)"
    )
    assert [print_formula(c) for c in theory.constraints] == ["not myoffice(b)", "not not a = b"]


def test_selfloop_completion() -> None:
    assert print_formula(_theory("selfloop").as_formula()) == "p <-> p"


def test_single_element_sort_warns() -> None:
    program = parse_program("sort t = {u}.\npred p.\nintensional p.")
    theory = complete(to_clark_normal_form(program))
    assert theory.warnings == (
        "sort t has a single element; completion models may not be stable",
    )


def test_theory_formula_puts_constraints_last() -> None:
    theory = _theory("office")
    formula = theory.as_formula()
    assert isinstance(formula, And)
    assert formula.members[-2:] == theory.constraints


# --- Split ---


def test_bucket_split(bucket_compiled: CompiledProgram) -> None:
    forward, backward = bucket_compiled.theory.split()["amount1"]
    assert print_formula(forward) == "amount0 = amount1 + 1 | amount1 = 10 & fillup"
    assert print_formula(backward) == "fillup -> amount1 = 10"


def test_split_skips_predicates() -> None:
    assert _theory("office").split() == {}


def test_split_rejects_predicate_biconditional() -> None:
    theory = _theory("office")
    with pytest.raises(ValueError, match="not a function biconditional"):
        split_biconditional(theory.biconditionals["myoffice"], theory.signature)


# --- Simplification ---


def test_simplify_removes_double_negation() -> None:
    sig = parse_program("pred p.").signature
    assert simplify(neg(neg(Atom("p"))), sig) == Atom("p")


def test_simplify_rigid_atoms() -> None:
    sig = parse_program("pred p.").signature
    assert simplify(Eq(Num(1), Num(2)), sig) == FALSUM
    assert simplify(Cmp("<", Num(1), Num(2)), sig) == TOP
    assert simplify(And((Atom("p"), Eq(Num(3), Num(3)))), sig) == Atom("p")


def test_simplify_one_point_rule() -> None:
    sig = parse_program("sort s = 0..2.\nfunc f -> s.\npred q(s).").signature
    x = Var("X", "s")
    formula = Exists(x, And((Eq(x, App("f")), Atom("q", (x,)))))
    assert simplify(formula, sig) == Atom("q", (App("f"),))


def test_simplify_one_point_adds_range_guard() -> None:
    sig = parse_program("sort s = 0..2.\nfunc n -> int.\npred q(s).").signature
    x = Var("X", "s")
    formula = Exists(x, And((Eq(x, App("n")), Atom("q", (x,)))))
    assert print_formula(simplify(formula, sig)) == "0 <= n & n <= 2 & q(n)"


def test_self_equality_of_undefined_term_is_kept() -> None:
    sig = parse_program("sort s = 0..2.\nfunc g(s) -> s.\nfunc n -> int.").signature
    atom = Eq(App("g", (App("n"),)), App("g", (App("n"),)))
    assert simplify(atom, sig) == atom


# --- Tight programs: completion models are the stable models ---


def test_completion_models_equal_stable_models_on_tight_programs() -> None:
    rng = random.Random(7)
    for _ in range(100):
        text = random_tight_program(rng)
        compiled = compile_program(parse_program(text))
        sig = compiled.program.signature
        stable = [m.assignment() for m in run_oracle(compiled.program).models]
        completion = [m.assignment() for m in enumerate_models(compiled.theory.as_formula(), sig)]
        assert stable == completion, text


def test_simplify_preserves_models_of_completed_programs() -> None:
    rng = random.Random(8)
    for _ in range(150):
        text = random_tight_program(rng)
        theory = compile_program(parse_program(text)).theory
        sig = theory.signature
        formula = theory.as_formula()
        expected = [m.assignment() for m in enumerate_models(formula, sig)]
        simple = [m.assignment() for m in enumerate_models(simplify(formula, sig), sig)]
        assert simple == expected, text


def test_split_halves_preserve_models_of_biconditionals() -> None:
    rng = random.Random(9)
    checked = 0
    for _ in range(150):
        text = random_tight_program(rng)
        theory = compile_program(parse_program(text)).theory
        sig = theory.signature
        for name, (forward, backward) in theory.split().items():
            whole = enumerate_models(theory.biconditionals[name], sig)
            halves = enumerate_models(And((forward, backward)), sig)
            assert [m.assignment() for m in halves] == [m.assignment() for m in whole], text
            checked += 1
    assert checked > 50
