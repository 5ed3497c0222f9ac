# SPDX-License-Identifier: BSD-2-Clause
# Copyright (c) deftio llc

"""SMT-LIB 2 emission of completed theories and decoding of solver models.

Every cell of every constant becomes one SMT constant: ``amount1`` stays
``amount1``, ``f(1,a)`` becomes ``|f(1,a)|``.  Enumerated sorts are encoded
as integer indexes with range assertions.  A function application whose
argument leaves its declared sort is undefined, so every atom carries the
definedness conditions of the applications inside it.
"""

from __future__ import annotations

import dataclasses
import enum
import re
from typing import TYPE_CHECKING

from aspmt.completion import simplify, split_biconditional
from aspmt.errors import DecodeError, EmissionError
from aspmt.interpretation import (
    Interpretation,
    all_cells,
    cell_key,
    eval_term,
    universes_for,
)
from aspmt.syntax import (
    TOP,
    And,
    App,
    Arith,
    Atom,
    Cmp,
    Const,
    Eq,
    Exists,
    Falsum,
    Forall,
    Implies,
    Num,
    Or,
    SortKind,
    Var,
    forall,
    iff,
    is_rigid,
    substitute,
)

if TYPE_CHECKING:
    from collections.abc import Mapping

    from aspmt.completion import CompletedTheory
    from aspmt.grounder import Bounds
    from aspmt.interpretation import Cell
    from aspmt.syntax import Formula, Signature, Term, Value
    from aspmt.types import SmtModel


class Mode(enum.Enum):
    """``QUANTIFIED`` keeps residual quantifiers, ``EXPANDED`` instantiates them."""

    QUANTIFIED = "quantified"
    EXPANDED = "expanded"


_SIMPLE = re.compile(r"^[a-z][A-Za-z0-9_]*$")
_RESERVED = frozenset(
    {"and", "or", "not", "ite", "true", "false", "let", "forall", "exists", "distinct",
     "abs", "div", "mod", "assert", "par", "match"}
)  # fmt: skip


def smt_symbol(name: str) -> str:
    """``name`` when it is a legal simple symbol, otherwise the quoted form."""
    if _SIMPLE.match(name) and name not in _RESERVED:
        return name
    return f"|{name}|"


@dataclasses.dataclass(frozen=True)
class SmtScript:
    """Declarations and assertions plus the map between cells and SMT symbols.

    ``symbols`` maps cell keys such as ``f(1,a)`` to the symbol as written in
    the script; ``cells`` maps the unquoted symbol back to its cell.
    """

    logic: str
    declarations: tuple[str, ...]
    assertions: tuple[str, ...]
    symbols: dict[str, str]
    cells: dict[str, Cell]
    signature: Signature
    universes: dict[str, tuple[Value, ...]]

    def render(self, extra: tuple[str, ...] = ()) -> str:
        lines = [
            "(set-option :produce-models true)",
            f"(set-logic {self.logic})",
            *self.declarations,
            *(f"(assert {a})" for a in (*self.assertions, *extra)),
        ]
        return "\n".join(lines) + "\n"

    def symbol(self, name: str, *args: Value) -> str:
        return self.symbols[cell_key(name, args)]


def _number(value: int) -> str:
    return str(value) if value >= 0 else f"(- {-value})"


def _and(parts: list[str]) -> str:
    parts = [p for p in parts if p != "true"]
    if "false" in parts:
        return "false"
    if not parts:
        return "true"
    return parts[0] if len(parts) == 1 else f"(and {' '.join(parts)})"


def _or(parts: list[str]) -> str:
    parts = [p for p in parts if p != "false"]
    if "true" in parts:
        return "true"
    if not parts:
        return "false"
    return parts[0] if len(parts) == 1 else f"(or {' '.join(parts)})"


def _no_lookup(name: str, args: tuple[Value, ...]) -> Value:
    msg = f"{cell_key(name, args)} is not rigid"
    raise EmissionError(msg)


class _Translator:
    def __init__(self, signature: Signature, mode: Mode, bounds: Bounds | None) -> None:
        self.signature = signature
        self.mode = mode
        self.bounds = bounds
        self.quantifiers = False
        self.nonlinear = False

    # --- values ---

    def encode(self, sort_name: str, value: Value | bool) -> str:
        if isinstance(value, bool):
            return "true" if value else "false"
        sort = self.signature.sort(sort_name)
        if sort.kind is SortKind.ENUMERATED:
            assert isinstance(value, str)  # noqa: S101
            return str(sort.elements.index(value))
        assert isinstance(value, int)  # noqa: S101
        return _number(value)

    def range_guard(self, sort_name: str, expr: str) -> str:
        sort = self.signature.sort(sort_name)
        if sort.kind is SortKind.RANGE:
            return f"(and (<= {_number(sort.lo)} {expr}) (<= {expr} {_number(sort.hi)}))"
        if sort.kind is SortKind.ENUMERATED:
            return f"(and (<= 0 {expr}) (<= {expr} {len(sort.elements) - 1}))"
        return "true"

    # --- terms ---

    def term(self, term: Term, env: Mapping[Var, str]) -> tuple[str, list[str]] | None:
        """SMT expression and definedness conditions; ``None`` when surely undefined."""
        if isinstance(term, Num):
            return _number(term.value), []
        if isinstance(term, Const):
            sort = self.signature.element_sort(term.name)
            assert sort is not None  # noqa: S101
            return self.encode(sort, term.name), []
        if isinstance(term, Var):
            if term not in env:
                msg = f"free variable {term.name} in emitted formula"
                raise EmissionError(msg)
            return env[term], []
        if isinstance(term, Arith):
            left = self.term(term.left, env)
            right = self.term(term.right, env)
            if left is None or right is None:
                return None
            if term.op == "*" and not (is_rigid(term.left) or is_rigid(term.right)):
                self.nonlinear = True
            return f"({term.op} {left[0]} {right[0]})", left[1] + right[1]
        return self.application(term.name, term.args, env)

    def application(
        self, name: str, args: tuple[Term, ...], env: Mapping[Var, str]
    ) -> tuple[str, list[str]] | None:
        declared = self.signature.argument_sorts(name)
        if all(is_rigid(a) for a in args):
            values: list[Value] = []
            for arg, sort in zip(args, declared):
                value = eval_term(arg, self.signature, _no_lookup)
                if not isinstance(value, (int, str)):
                    return None
                if not self.signature.sort(sort).contains(value):
                    return None
                values.append(value)
            return smt_symbol(cell_key(name, tuple(values))), []
        exprs: list[str] = []
        conditions: list[str] = []
        for arg, sort in zip(args, declared):
            found = self.term(arg, env)
            if found is None:
                return None
            exprs.append(found[0])
            conditions.extend(found[1])
            conditions.append(self.range_guard(sort, found[0]))
        tuples = self.signature.argument_tuples(name)
        expr = smt_symbol(cell_key(name, tuples[-1]))
        for row in reversed(tuples[:-1]):
            test = _and([f"(= {e} {self.encode(s, v)})" for e, s, v in zip(exprs, declared, row)])
            expr = f"(ite {test} {smt_symbol(cell_key(name, row))} {expr})"
        return expr, conditions

    # --- formulas ---

    def atom(self, atom: Atom | Eq | Cmp, env: Mapping[Var, str]) -> str:
        if isinstance(atom, Atom):
            found = self.application(atom.predicate, atom.args, env)
            if found is None:
                return "false"
            return _and([*found[1], found[0]])
        left = self.term(atom.left, env)
        right = self.term(atom.right, env)
        if left is None or right is None:
            return "false"
        op = "=" if isinstance(atom, Eq) else atom.op
        return _and([*left[1], *right[1], f"({op} {left[0]} {right[0]})"])

    def formula(self, formula: Formula, env: Mapping[Var, str]) -> str:  # noqa: PLR0911
        if isinstance(formula, Falsum):
            return "false"
        if formula == TOP:
            return "true"
        if isinstance(formula, (Atom, Eq, Cmp)):
            return self.atom(formula, env)
        if isinstance(formula, And):
            parts = _iff(formula)
            if parts is not None:
                return f"(= {self.formula(parts[0], env)} {self.formula(parts[1], env)})"
            return _and([self.formula(m, env) for m in formula.members])
        if isinstance(formula, Or):
            return _or([self.formula(m, env) for m in formula.members])
        if isinstance(formula, Implies):
            left = self.formula(formula.left, env)
            if isinstance(formula.right, Falsum):
                return "true" if left == "false" else f"(not {left})"
            return f"(=> {left} {self.formula(formula.right, env)})"
        if isinstance(formula, (Forall, Exists)):
            return self.quantifier(formula, env)
        msg = f"cannot emit {formula!r}"  # pragma: no cover
        raise EmissionError(msg)  # pragma: no cover

    def quantifier(self, formula: Forall | Exists, env: Mapping[Var, str]) -> str:
        var = formula.var
        universal = isinstance(formula, Forall)
        if self.mode is Mode.EXPANDED:
            instances = [
                self.formula(substitute(formula.body, {var: value}), env)
                for value in self.domain(var)
            ]
            return _and(instances) if universal else _or(instances)
        self.quantifiers = True
        symbol = smt_symbol(var.name)
        body = self.formula(formula.body, {**env, var: symbol})
        guard = self.range_guard(var.sort, symbol)
        if universal:
            inner = body if guard == "true" else f"(=> {guard} {body})"
            return f"(forall (({symbol} Int)) {inner})"
        return f"(exists (({symbol} Int)) {_and([guard, body])})"

    def domain(self, var: Var) -> list[Term]:
        sort = self.signature.sort(var.sort)
        if sort.kind is SortKind.RANGE:
            return [Num(v) for v in range(sort.lo, sort.hi + 1)]
        if sort.kind is SortKind.ENUMERATED:
            return [Const(e) for e in sort.elements]
        found = self.bounds.range_for(var.name) if self.bounds is not None else None
        if found is None:
            msg = (
                f"quantifier over integer variable {var.name} needs bounds in expanded mode; "
                "use --bounds or --quantified"
            )
            raise EmissionError(msg)
        return [Num(v) for v in range(found[0], found[1] + 1)]


def _iff(formula: And) -> tuple[Formula, Formula] | None:
    if len(formula.members) != 2:  # noqa: PLR2004
        return None
    first, second = formula.members
    if (
        isinstance(first, Implies)
        and isinstance(second, Implies)
        and first.left == second.right
        and first.right == second.left
        and not isinstance(first.right, Falsum)
    ):
        return first.left, first.right
    return None


def _element(value: Value) -> Term:
    return Num(value) if isinstance(value, int) else Const(value)


def _definition_instances(theory: CompletedTheory) -> list[Formula]:
    """Biconditionals instantiated per argument tuple, simplified or split."""
    signature = theory.signature
    out: list[Formula] = []
    for name, definition in theory.definitions.items():
        for values in signature.argument_tuples(name):
            binding = {v: _element(x) for v, x in zip(definition.arguments, values)}
            body = substitute(definition.body, binding)
            head_args = tuple(binding[v] for v in definition.arguments)
            if definition.value is None:
                out.append(simplify(iff(Atom(name, head_args), body), signature))
                continue
            instance = forall(
                [definition.value], iff(Eq(App(name, head_args), definition.value), body)
            )
            out.extend(split_biconditional(instance, signature))
    return out


def emit(
    theory: CompletedTheory,
    mode: Mode = Mode.EXPANDED,
    bounds: Bounds | None = None,
    fixings: Mapping[Cell, Value | bool] | None = None,
) -> SmtScript:
    """Render a completed theory as an SMT-LIB 2 script.

    Integer-valued constants range over ``bounds.default`` in expanded mode.

    Raises:
        EmissionError: If an integer quantifier has no bounds in expanded mode.

    """
    signature = theory.signature
    translator = _Translator(signature, mode, bounds)
    integer_range = bounds.default if bounds is not None and mode is Mode.EXPANDED else None
    symbols: dict[str, str] = {}
    cells: dict[str, Cell] = {}
    declarations: list[str] = []
    assertions: list[str] = []

    for cell in all_cells(signature):
        name, args = cell
        key = cell_key(name, args)
        symbol = smt_symbol(key)
        symbols[key] = symbol
        cells[key] = cell
        if name in signature.predicates:
            declarations.append(f"(declare-const {symbol} Bool)")
            continue
        declarations.append(f"(declare-const {symbol} Int)")
        sort_name = signature.functions[name].value
        guard = translator.range_guard(sort_name, symbol)
        if guard == "true" and integer_range is not None:
            lo, hi = integer_range
            guard = f"(and (<= {_number(lo)} {symbol}) (<= {symbol} {_number(hi)}))"
        if guard != "true":
            assertions.append(guard)

    for formula in [*_definition_instances(theory), *theory.constraints]:
        text = translator.formula(simplify(formula, signature), {})
        if text != "true":
            assertions.append(text)

    for (name, args), value in (fixings or {}).items():
        symbol = symbols[cell_key(name, args)]
        if isinstance(value, bool):
            assertions.append(symbol if value else f"(not {symbol})")
        else:
            encoded = translator.encode(signature.functions[name].value, value)
            assertions.append(f"(= {symbol} {encoded})")

    arithmetic = "NIA" if translator.nonlinear else "LIA"
    logic = arithmetic if translator.quantifiers else f"QF_{arithmetic}"
    return SmtScript(
        logic=logic,
        declarations=tuple(declarations),
        assertions=tuple(assertions),
        symbols=symbols,
        cells=cells,
        signature=signature,
        universes=universes_for(signature, integer_range),
    )


def decode_model(model: SmtModel, script: SmtScript) -> Interpretation:
    """Map solver values back to an interpretation, re-checking sort ranges.

    Symbols the model omits take the first element of their universe, or
    ``false`` for predicates.

    Raises:
        DecodeError: If a value lies outside its declared finite sort.

    """
    signature = script.signature
    values: dict[Cell, Value | bool] = {}
    for key, cell in script.cells.items():
        name = cell[0]
        raw = model.assignment.get(key)
        if name in signature.predicates:
            if raw is not None and not isinstance(raw, bool):
                raise DecodeError(key, raw, "expected a Boolean")
            values[cell] = bool(raw)
            continue
        values[cell] = _decode_function_value(script, key, name, raw)
    return Interpretation.from_cells(signature, script.universes, values)


def _decode_function_value(
    script: SmtScript, key: str, name: str, raw: int | bool | None
) -> Value:
    sort_name = script.signature.functions[name].value
    sort = script.signature.sort(sort_name)
    universe = script.universes.get(sort_name)
    if raw is None:
        return universe[0] if universe else 0
    if isinstance(raw, bool):
        raise DecodeError(key, raw, "expected an integer")
    if sort.kind is SortKind.ENUMERATED:
        if not 0 <= raw < len(sort.elements):
            raise DecodeError(key, raw, f"index outside enumerated sort {sort_name}")
        return sort.elements[raw]
    if universe is not None and raw not in universe:
        raise DecodeError(key, raw, f"outside {universe[0]}..{universe[-1]}")
    return raw


def blocking_clause(
    interp: Interpretation, script: SmtScript, projection: tuple[str, ...]
) -> str:
    """Assertion excluding every model that agrees with ``interp`` on ``projection``."""
    translator = _Translator(script.signature, Mode.EXPANDED, None)
    parts: list[str] = []
    for (name, args), value in interp.cells().items():
        if name not in projection:
            continue
        symbol = script.symbol(name, *args)
        if isinstance(value, bool):
            parts.append(symbol if value else f"(not {symbol})")
        else:
            encoded = translator.encode(script.signature.functions[name].value, value)
            parts.append(f"(= {symbol} {encoded})")
    body = _and(parts)
    return "false" if body == "true" else f"(not {body})"
