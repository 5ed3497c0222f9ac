"""Unit tests for interpretation.py."""

from __future__ import annotations

import pytest
from aspmt.errors import UnboundedQuantifier, UnevaluableAtom
from aspmt.interpretation import (
    UNKNOWN,
    Interpretation,
    all_cells,
    cell_key,
    enumerated_index,
    eval_atom,
    universes_for,
    value_domain,
)
from aspmt.parser import parse_program
from aspmt.syntax import App, Arith, Atom, Cmp, Const, Eq, Num, Signature

SIGNATURE = """\
sort s = 0..2.
sort color = {red, green}.
func f -> s.
func g(s) -> s.
func c -> color.
func n -> int.
pred q(s).
"""


def _signature() -> Signature:
    return parse_program(SIGNATURE).signature


def _interpretation() -> Interpretation:
    sig = _signature()
    cells = {
        ("f", ()): 1,
        ("g", (0,)): 2,
        ("g", (1,)): 0,
        ("g", (2,)): 1,
        ("c", ()): "green",
        ("n", ()): 5,
        ("q", (0,)): True,
        ("q", (1,)): False,
        ("q", (2,)): True,
    }
    return Interpretation.from_cells(sig, universes_for(sig, (0, 9)), cells)


# --- Cells ---


def test_cell_key() -> None:
    assert cell_key("p") == "p"
    assert cell_key("g", (1, "red")) == "g(1,red)"


def test_all_cells_in_canonical_order() -> None:
    cells = all_cells(_signature())
    assert cells[:3] == [("f", ()), ("g", (0,)), ("g", (1,))]
    assert cells[-1] == ("q", (2,))
    assert len(cells) == 9


def test_value_domain() -> None:
    sig = _signature()
    universes = universes_for(sig)
    assert value_domain(sig, "q", universes) == (False, True)
    assert value_domain(sig, "c", universes) == ("red", "green")
    with pytest.raises(UnboundedQuantifier, match="n ranges over the integers"):
        value_domain(sig, "n", universes)


def test_universes_include_integers_only_with_range() -> None:
    sig = _signature()
    assert "int" not in universes_for(sig)
    assert universes_for(sig, (-1, 1))["int"] == (-1, 0, 1)


# --- Evaluation ---


def test_evaluate_terms() -> None:
    interp = _interpretation()
    assert interp.evaluate(App("g", (App("f"),))) == 0
    assert interp.evaluate(Arith("*", App("n"), Num(2))) == 10
    assert interp.evaluate(Const("red")) == "red"


def test_application_outside_argument_sort_is_undefined() -> None:
    interp = _interpretation()
    assert interp.evaluate(App("g", (App("n"),))) is None
    assert interp.satisfies_atom(Eq(App("g", (App("n"),)), App("g", (App("n"),)))) is False
    assert interp.satisfies_atom(Atom("q", (App("n"),))) is False


def test_comparisons() -> None:
    interp = _interpretation()
    assert interp.satisfies_atom(Cmp("<", App("f"), App("n")))
    assert not interp.satisfies_atom(Cmp(">=", App("f"), Num(2)))
    assert interp.satisfies_atom(Eq(App("c"), Const("green")))


def test_partial_lookup_reports_unknown() -> None:
    sig = _signature()

    def lookup(name: str, args: tuple[int | str, ...]) -> object:
        return 1 if name == "f" else UNKNOWN

    assert eval_atom(Eq(App("f"), Num(1)), sig, lookup) is True  # type: ignore[arg-type]
    g_zero = App("g", (Num(0),))
    assert eval_atom(Eq(g_zero, Num(1)), sig, lookup) is UNKNOWN  # type: ignore[arg-type]
    # undefined wins over unknown
    assert eval_atom(Atom("q", (Num(7),)), sig, lookup) is False  # type: ignore[arg-type]


# --- Interpretation ---


def test_lookup_and_helpers() -> None:
    interp = _interpretation()
    assert interp.value("g", 0) == 2
    assert interp.holds("q", 2)
    assert interp.lookup("q", (1,)) is False
    with pytest.raises(TypeError, match="is a predicate"):
        interp.value("q", 0)
    with pytest.raises(UnevaluableAtom, match="g\\(7\\)"):
        interp.lookup("g", (7,))


def test_assignment_text() -> None:
    interp = _interpretation()
    assert interp.assignment(["f", "q"]) == {
        "f": "1",
        "q(0)": "true",
        "q(1)": "false",
        "q(2)": "true",
    }
    assert list(interp.assignment()) == [
        "f",
        "g(0)",
        "g(1)",
        "g(2)",
        "c",
        "n",
        "q(0)",
        "q(1)",
        "q(2)",
    ]


def test_missing_function_value_is_rejected() -> None:
    sig = _signature()
    with pytest.raises(ValueError, match="f has no value"):
        Interpretation(sig, universes_for(sig), {"f": {}}, {})


def test_value_outside_sort_is_rejected() -> None:
    sig = _signature()
    with pytest.raises(ValueError, match="outside sort s"):
        Interpretation(sig, universes_for(sig), {"f": {(): 7}}, {})


def test_agrees_outside() -> None:
    interp = _interpretation()
    cells = interp.cells()
    cells["q", (1,)] = True
    other = Interpretation.from_cells(interp.signature, interp.universes, cells)
    assert other.agrees_outside(interp, ["q"])
    assert not other.agrees_outside(interp, ["f"])


def test_enumerated_index() -> None:
    sig = _signature()
    assert enumerated_index(sig, "color", "green") == 1
    with pytest.raises(ValueError, match="not an element"):
        enumerated_index(sig, "s", 1)
