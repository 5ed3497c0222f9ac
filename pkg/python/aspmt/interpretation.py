# SPDX-License-Identifier: BSD-2-Clause
# Copyright (c) deftio llc

"""Interpretations and the evaluation of ground terms and atoms.

A function application whose argument value lies outside the declared
argument sort is *undefined*; an atom that contains an undefined term is
false.  Evaluation is parameterised by a lookup callable so that the same
code serves total interpretations and the partial assignments of the search.
"""

from __future__ import annotations

import dataclasses
from typing import TYPE_CHECKING, Final

from aspmt.errors import GroundingError, UnboundedQuantifier, UnevaluableAtom
from aspmt.syntax import INT, App, Arith, Atom, Cmp, Const, Eq, Num, SortKind, Var

if TYPE_CHECKING:
    from collections.abc import Callable, Iterable, Mapping

    from aspmt.syntax import AtomicFormula, Signature, Term, Value


class _Unknown:
    def __repr__(self) -> str:
        return "UNKNOWN"


UNKNOWN: Final = _Unknown()
"""Result of evaluating something that mentions an unassigned cell."""

Cell = tuple[str, tuple["Value", ...]]


def cell_key(name: str, args: tuple[Value, ...] = ()) -> str:
    """Canonical text of a cell: ``name`` or ``name(a,b)``."""
    if not args:
        return name
    return f"{name}({','.join(str(a) for a in args)})"


def eval_term(  # noqa: C901, PLR0911
    term: Term,
    signature: Signature,
    lookup: Callable[[str, tuple[Value, ...]], Value | bool | _Unknown],
) -> Value | None | _Unknown:
    """Value of a ground term, ``None`` when undefined, ``UNKNOWN`` when unassigned."""
    if isinstance(term, Num):
        return term.value
    if isinstance(term, Const):
        return term.name
    if isinstance(term, Var):
        msg = f"cannot evaluate free variable {term.name}"
        raise GroundingError(msg)
    if isinstance(term, Arith):
        left = eval_term(term.left, signature, lookup)
        right = eval_term(term.right, signature, lookup)
        if left is None or right is None:
            return None
        if left is UNKNOWN or right is UNKNOWN:
            return UNKNOWN
        assert isinstance(left, int)  # noqa: S101
        assert isinstance(right, int)  # noqa: S101
        if term.op == "+":
            return left + right
        if term.op == "-":
            return left - right
        return left * right
    args = _eval_args(term, signature, lookup)
    if args is None or isinstance(args, _Unknown):
        return args
    value = lookup(term.name, args)
    return value if not isinstance(value, bool) else None


def _eval_args(
    term: App | Atom,
    signature: Signature,
    lookup: Callable[[str, tuple[Value, ...]], Value | bool | _Unknown],
) -> tuple[Value, ...] | None | _Unknown:
    name = term.name if isinstance(term, App) else term.predicate
    declared = signature.argument_sorts(name)
    values: list[Value] = []
    unknown = False
    for arg, sort_name in zip(term.args, declared):
        value = eval_term(arg, signature, lookup)
        if value is None:
            return None
        if isinstance(value, _Unknown):
            unknown = True
            continue
        if not signature.sort(sort_name).contains(value):
            return None
        values.append(value)
    return UNKNOWN if unknown else tuple(values)


def eval_atom(
    atom: AtomicFormula,
    signature: Signature,
    lookup: Callable[[str, tuple[Value, ...]], Value | bool | _Unknown],
) -> bool | _Unknown:
    """Truth value of a ground atom; ``UNKNOWN`` only when an unassigned cell matters."""
    if isinstance(atom, Atom):
        args = _eval_args(atom, signature, lookup)
        if args is None:
            return False
        if isinstance(args, _Unknown):
            return UNKNOWN
        value = lookup(atom.predicate, args)
        return value if isinstance(value, (bool, _Unknown)) else bool(value)
    left = eval_term(atom.left, signature, lookup)
    right = eval_term(atom.right, signature, lookup)
    if left is None or right is None:
        return False
    if isinstance(left, _Unknown) or isinstance(right, _Unknown):
        return UNKNOWN
    if isinstance(atom, Eq):
        return left == right
    if not (isinstance(left, int) and isinstance(right, int)):
        return False
    return _compare(atom, left, right)


def _compare(atom: Cmp, left: int, right: int) -> bool:
    if atom.op == "<":
        return left < right
    if atom.op == "<=":
        return left <= right
    if atom.op == ">":
        return left > right
    return left >= right


def universes_for(
    signature: Signature, integer_range: tuple[int, int] | None = None
) -> dict[str, tuple[Value, ...]]:
    """Universe of every finite sort, plus ``int`` when an integer range is given."""
    universes = {name: sort.universe() for name, sort in signature.sorts.items()}
    if integer_range is not None:
        universes[INT.name] = tuple(range(integer_range[0], integer_range[1] + 1))
    return universes


def value_domain(
    signature: Signature, name: str, universes: Mapping[str, tuple[Value, ...]]
) -> tuple[Value | bool, ...]:
    """Candidate values of one cell of a constant."""
    if name in signature.predicates:
        return (False, True)
    sort = signature.functions[name].value
    if sort not in universes:
        raise UnboundedQuantifier(name)
    return universes[sort]


@dataclasses.dataclass(frozen=True)
class Interpretation:
    """Values of every constant of a signature over finite universes.

    ``functions`` maps each function constant to a total map from argument
    tuples to values; ``predicates`` maps each predicate to its extension.
    Extensional constants are included alongside the intensional ones.
    """

    signature: Signature
    universes: Mapping[str, tuple[Value, ...]]
    functions: Mapping[str, Mapping[tuple[Value, ...], Value]]
    predicates: Mapping[str, frozenset[tuple[Value, ...]]]

    def __post_init__(self) -> None:
        for name, table in self.functions.items():
            decl = self.signature.functions[name]
            for args in self.signature.argument_tuples(name):
                if args not in table:
                    msg = f"{cell_key(name, args)} has no value"
                    raise ValueError(msg)
                value = table[args]
                sort = self.signature.sort(decl.value)
                universe = self.universes.get(decl.value)
                ok = value in universe if universe is not None else sort.contains(value)
                if not ok or isinstance(value, bool):
                    msg = f"{cell_key(name, args)} = {value!r} is outside sort {decl.value}"
                    raise ValueError(msg)

    @classmethod
    def from_cells(
        cls,
        signature: Signature,
        universes: Mapping[str, tuple[Value, ...]],
        cells: Mapping[Cell, Value | bool],
    ) -> Interpretation:
        functions: dict[str, dict[tuple[Value, ...], Value]] = {}
        predicates: dict[str, set[tuple[Value, ...]]] = {}
        for name in signature.functions:
            functions[name] = {}
        for name in signature.predicates:
            predicates[name] = set()
        for (name, args), value in cells.items():
            if name in signature.predicates:
                if value:
                    predicates[name].add(args)
            else:
                assert not isinstance(value, bool)  # noqa: S101
                functions[name][args] = value
        return cls(
            signature,
            dict(universes),
            functions,
            {name: frozenset(ext) for name, ext in predicates.items()},
        )

    def lookup(self, name: str, args: tuple[Value, ...] = ()) -> Value | bool:
        if name in self.predicates:
            return args in self.predicates[name]
        try:
            return self.functions[name][args]
        except KeyError:
            raise UnevaluableAtom(cell_key(name, args)) from None

    def value(self, name: str, *args: Value) -> Value:
        found = self.lookup(name, args)
        if isinstance(found, bool):
            msg = f"{name} is a predicate"
            raise TypeError(msg)
        return found

    def holds(self, name: str, *args: Value) -> bool:
        return args in self.predicates[name]

    def evaluate(self, term: Term) -> Value | None:
        """Value of a ground term, or ``None`` when it is undefined."""
        result = eval_term(term, self.signature, self.lookup)
        assert not isinstance(result, _Unknown)  # noqa: S101
        return result

    def satisfies_atom(self, atom: AtomicFormula) -> bool:
        result = eval_atom(atom, self.signature, self.lookup)
        assert isinstance(result, bool)  # noqa: S101
        return result

    def cells(self) -> dict[Cell, Value | bool]:
        """Every cell with its value, in canonical order."""
        out: dict[Cell, Value | bool] = {}
        for name in self.signature.constants():
            for args in self.signature.argument_tuples(name):
                if name in self.functions:
                    out[name, args] = self.functions[name][args]
                elif name in self.predicates:
                    out[name, args] = args in self.predicates[name]
        return out

    def assignment(self, constants: Iterable[str] | None = None) -> dict[str, str]:
        """Canonical ``cell -> value`` text map, optionally restricted to some constants."""
        keep = None if constants is None else set(constants)
        return {
            cell_key(name, args): _value_text(value)
            for (name, args), value in self.cells().items()
            if keep is None or name in keep
        }

    def sort_key(self) -> tuple[tuple[int, Value | bool], ...]:
        return tuple(_order(v) for v in self.cells().values())

    def agrees_outside(self, other: Interpretation, constants: Iterable[str]) -> bool:
        """True when both interpretations agree on every constant not in ``constants``."""
        skip = set(constants)
        mine, theirs = self.cells(), other.cells()
        return all(mine[c] == theirs.get(c) for c in mine if c[0] not in skip)


def _value_text(value: Value | bool) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    return str(value)


def _order(value: Value | bool) -> tuple[int, Value | bool]:
    # ints and names never share a cell, the tag keeps tuples comparable anyway
    return (0, value) if isinstance(value, (bool, int)) else (1, value)


def enumerated_index(signature: Signature, sort_name: str, value: Value) -> int:
    sort = signature.sort(sort_name)
    if sort.kind is not SortKind.ENUMERATED or not isinstance(value, str):
        msg = f"{value!r} is not an element of enumerated sort {sort_name}"
        raise ValueError(msg)
    return sort.elements.index(value)


def all_cells(signature: Signature, names: Iterable[str] | None = None) -> list[Cell]:
    chosen = signature.constants() if names is None else tuple(names)
    return [(name, args) for name in chosen for args in signature.argument_tuples(name)]
