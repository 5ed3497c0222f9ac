"""Unit tests for tightness.py: dependency graphs and cycle reports."""

from __future__ import annotations

import random
from typing import TYPE_CHECKING

from aspmt.bundled import read_program
from aspmt.normalize import program_formula
from aspmt.parser import parse_program
from aspmt.syntax import (
    And,
    App,
    Atom,
    Cmp,
    Eq,
    Exists,
    Forall,
    Implies,
    Num,
    Or,
    Program,
    formula_constants,
)
from aspmt.tightness import (
    TightnessResult,
    build_t_dependency_graph,
    check_program,
    is_tight,
    shortest_cycle,
    strictly_positive_constants,
    to_dot,
)

from tests.generators import FormulaGenerator, ProgramGenerator, random_tight_program

if TYPE_CHECKING:
    from collections.abc import Callable, Iterator

    from aspmt.syntax import Formula
    from aspmt.tightness import Provenance, TDependencyGraph

HEADER = "pred p.\npred q.\npred r.\nintensional p, q, r.\n"


def _check(rules: str) -> TightnessResult:
    return check_program(parse_program(HEADER + rules))


# --- Strict positivity ---


def test_antecedent_occurrences_are_not_strictly_positive() -> None:
    p, q, r = Atom("p"), Atom("q"), Atom("r")
    assert strictly_positive_constants(Implies(p, q)) == {"q"}
    assert strictly_positive_constants(And((p, Implies(q, r)))) == {"p", "r"}
    assert strictly_positive_constants(Implies(Implies(p, q), r)) == {"r"}


def test_strictly_positive_constants_filters_intensional() -> None:
    formula = And((Eq(App("f"), Num(1)), Atom("p")))
    assert strictly_positive_constants(formula) == {"f", "p"}
    assert strictly_positive_constants(formula, ["p"]) == {"p"}


def test_nested_implication_edge() -> None:
    p, q, r = Atom("p"), Atom("q"), Atom("r")
    graph = build_t_dependency_graph(Implies(Implies(Implies(p, q), r), p), ["p", "q", "r"])
    assert graph.edge_list() == [("p", "r")]


# --- Programs ---


def test_two_cycle() -> None:
    result = _check("p :- q.\nq :- p.")
    assert not result.tight
    assert result.cycle == ("p", "q")


def test_self_loop_is_preferred_as_shortest() -> None:
    result = _check("p :- q.\nq :- p.\nr :- r.")
    assert result.cycle == ("r",)


def test_negative_dependencies_stay_tight() -> None:
    result = _check("p :- not q.\nq :- not p.")
    assert result.tight
    assert result.graph.edge_list() == []


def test_double_negation_is_not_a_dependency() -> None:
    assert _check("p :- not not p.").tight


def test_function_cycle() -> None:
    text = "sort s = 0..2.\nfunc f -> s.\npred p.\nintensional f, p.\nf = 1 :- p.\np :- f = 1."
    result = check_program(parse_program(text))
    assert result.cycle == ("f", "p")


def test_provenance_records_rule_index() -> None:
    result = _check("q.\np :- q.")
    (provenance,) = result.graph.edges[("p", "q")]
    assert provenance.rule_index == 1
    assert provenance.implication == Implies(Atom("q"), Atom("p"))


def test_bundled_programs() -> None:
    nested = check_program(parse_program(read_program("nested")))
    assert nested.tight
    assert nested.graph.edge_list() == [("p", "r")]
    selfloop = check_program(parse_program(read_program("selfloop")))
    assert selfloop.cycle == ("p",)
    assert check_program(parse_program(read_program("bucket"))).tight
    assert check_program(parse_program(read_program("office"))).tight


def test_is_tight_on_formula() -> None:
    p, q = Atom("p"), Atom("q")
    result = is_tight(And((Implies(q, p), Implies(p, q))), ["p", "q"])
    assert not result.tight
    assert shortest_cycle(result.graph) == ("p", "q")


# --- DOT ---


def test_dot_marks_cycle_edges() -> None:
    result = check_program(parse_program(read_program("selfloop")))
    dot = to_dot(result.graph, result.cycle)
    assert dot.startswith("digraph tdep {\n")
    assert '  "p" -> "p" [color=red];' in dot
    assert dot.endswith("}\n")


def test_dot_without_cycle() -> None:
    result = check_program(parse_program(read_program("nested")))
    dot = to_dot(result.graph)
    assert '  "p" -> "r";' in dot
    assert "color=red" not in dot


# --- Properties on generated formulas and programs ---

_CONSTANTS = ("f", "g", "c", "n", "p", "s")


def _occurrences(formula: Formula, *, positive: bool = True) -> Iterator[tuple[Formula, bool]]:
    """Every subformula, flagged when it is outside the antecedent of every implication."""
    yield formula, positive
    if isinstance(formula, (And, Or)):
        for member in formula.members:
            yield from _occurrences(member, positive=positive)
    elif isinstance(formula, Implies):
        yield from _occurrences(formula.left, positive=False)
        yield from _occurrences(formula.right, positive=positive)
    elif isinstance(formula, (Forall, Exists)):
        yield from _occurrences(formula.body, positive=positive)


def _positive_constants(formula: Formula) -> set[str]:
    found: set[str] = set()
    for sub, positive in _occurrences(formula):
        if positive and isinstance(sub, (Atom, Eq, Cmp)):
            found |= formula_constants(sub)
    return found


def _assert_sound(graph: TDependencyGraph, formula_of: Callable[[Provenance], Formula]) -> None:
    for (c, d), provenance in graph.edges.items():
        assert provenance
        for source in provenance:
            implications = [
                sub
                for sub, positive in _occurrences(formula_of(source))
                if positive and isinstance(sub, Implies)
            ]
            assert source.implication in implications
            assert c in _positive_constants(source.implication.right)
            assert d in _positive_constants(source.implication.left)


def _assert_cycle_is_a_witness(result: TightnessResult) -> None:
    if result.tight:
        assert result.cycle == ()
        return
    cycle = result.cycle
    assert cycle
    for index, vertex in enumerate(cycle):
        assert (vertex, cycle[(index + 1) % len(cycle)]) in result.graph.edges


def test_graph_properties_on_random_formulas() -> None:
    rng = random.Random(17)
    generator = FormulaGenerator(rng)
    cyclic = 0
    for _ in range(1000):
        formula = generator.formula(4)
        chosen = rng.sample(_CONSTANTS, rng.randint(1, len(_CONSTANTS)))
        fewer = rng.sample(chosen, rng.randint(0, len(chosen)))
        graph = build_t_dependency_graph(formula, chosen)
        assert set(build_t_dependency_graph(formula, fewer).edges) <= set(graph.edges)
        _assert_sound(graph, lambda _source, formula=formula: formula)
        result = is_tight(formula, chosen)
        _assert_cycle_is_a_witness(result)
        cyclic += not result.tight
    assert cyclic > 0


def test_graph_properties_on_random_programs() -> None:
    rng = random.Random(18)
    cyclic = 0
    for _ in range(300):
        program = parse_program(ProgramGenerator(rng, tight=rng.random() < 0.5).program())

        def rule_formula(source: Provenance, program: Program = program) -> Formula:
            assert source.rule_index is not None
            rule = program.rules[source.rule_index]
            return program_formula(Program(program.signature, (rule,)))

        result = check_program(program)
        _assert_sound(result.graph, rule_formula)
        _assert_cycle_is_a_witness(result)
        cyclic += not result.tight
    assert cyclic > 0


def test_generated_programs_are_tight_and_small() -> None:
    rng = random.Random(19)
    arities: set[int] = set()
    for _ in range(300):
        program = parse_program(random_tight_program(rng))
        sig = program.signature
        assert check_program(program).tight
        assert 1 <= len(sig.intensional) <= 3
        assert 2 <= len(sig.sort("d").universe()) <= 5
        assert 1 <= len(program.rules) <= 5
        arities |= {len(sig.argument_sorts(name)) for name in sig.intensional}
    assert arities == {0, 1}
