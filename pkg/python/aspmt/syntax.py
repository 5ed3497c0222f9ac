# SPDX-License-Identifier: BSD-2-Clause
# Copyright (c) deftio llc

"""Sorted logical syntax: sorts, signatures, terms, formulas, rules and programs.

Every value here is an immutable dataclass.  Negation, truth and the
biconditional have no node of their own: ``neg(F)`` is ``F -> #false``,
``TOP`` is ``#false -> #false`` and ``iff(F, G)`` is the conjunction of the
two implications.  The reduct and the dependency analysis therefore only ever
see one implication case.
"""

from __future__ import annotations

import dataclasses
import enum
import itertools
from typing import TYPE_CHECKING

from aspmt.errors import SubstitutionError

if TYPE_CHECKING:
    from collections.abc import Callable, Iterable, Iterator, Mapping

Value = int | str
"""A universe element: an integer, or the name of an enumerated-sort element."""

ARITH_OPS = ("+", "-", "*")
CMP_OPS = ("<", "<=", ">", ">=")


class SortKind(enum.Enum):
    INTEGER = "integer"
    ENUMERATED = "enumerated"
    RANGE = "range"


@dataclasses.dataclass(frozen=True)
class Sort:
    """A sort of the signature.

    ``INTEGER`` is the background sort of all integers, ``RANGE`` a bounded
    integer interval ``lo..hi`` and ``ENUMERATED`` a finite set of names.
    """

    name: str
    kind: SortKind
    elements: tuple[str, ...] = ()
    lo: int = 0
    hi: int = 0

    def __post_init__(self) -> None:
        if self.kind is SortKind.RANGE and self.lo > self.hi:
            msg = f"sort {self.name}: empty range {self.lo}..{self.hi}"
            raise ValueError(msg)
        if self.kind is SortKind.ENUMERATED:
            if not self.elements or any(not e for e in self.elements):
                msg = f"sort {self.name}: elements must be nonempty names"
                raise ValueError(msg)
            if len(set(self.elements)) != len(self.elements):
                msg = f"sort {self.name}: duplicate elements"
                raise ValueError(msg)

    @property
    def finite(self) -> bool:
        return self.kind is not SortKind.INTEGER

    @property
    def integral(self) -> bool:
        return self.kind is not SortKind.ENUMERATED

    def universe(self) -> tuple[Value, ...]:
        """Enumerate a finite sort.  The background integers are not enumerable."""
        if self.kind is SortKind.RANGE:
            return tuple(range(self.lo, self.hi + 1))
        if self.kind is SortKind.ENUMERATED:
            return self.elements
        msg = f"sort {self.name} is not finite"
        raise ValueError(msg)

    def contains(self, value: Value) -> bool:
        if self.kind is SortKind.ENUMERATED:
            return isinstance(value, str) and value in self.elements
        if not isinstance(value, int):
            return False
        return self.kind is SortKind.INTEGER or self.lo <= value <= self.hi


INT = Sort("int", SortKind.INTEGER)


@dataclasses.dataclass(frozen=True)
class FunctionDecl:
    arguments: tuple[str, ...]
    value: str


@dataclasses.dataclass(frozen=True)
class Signature:
    """Declared sorts and constants plus the list of intensional constants."""

    sorts: Mapping[str, Sort] = dataclasses.field(default_factory=dict)
    functions: Mapping[str, FunctionDecl] = dataclasses.field(default_factory=dict)
    predicates: Mapping[str, tuple[str, ...]] = dataclasses.field(default_factory=dict)
    intensional: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "sorts", dict(self.sorts))
        object.__setattr__(self, "functions", dict(self.functions))
        object.__setattr__(self, "predicates", dict(self.predicates))
        object.__setattr__(self, "intensional", tuple(self.intensional))
        clash = set(self.functions) & set(self.predicates)
        if clash:
            msg = f"declared both as function and predicate: {', '.join(sorted(clash))}"
            raise ValueError(msg)
        unknown = [c for c in self.intensional if not self.is_constant(c)]
        if unknown:
            msg = f"intensional constants not declared: {', '.join(unknown)}"
            raise ValueError(msg)
        seen: dict[str, str] = {}
        for sort in self.sorts.values():
            for element in sort.elements:
                if element in seen or self.is_constant(element):
                    msg = f"element {element} of sort {sort.name} is declared twice"
                    raise ValueError(msg)
                seen[element] = sort.name
        object.__setattr__(self, "_element_sorts", seen)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Signature):
            return NotImplemented
        return (
            dict(self.sorts) == dict(other.sorts)
            and dict(self.functions) == dict(other.functions)
            and dict(self.predicates) == dict(other.predicates)
            and self.intensional == other.intensional
        )

    def __hash__(self) -> int:
        return hash((tuple(self.sorts), tuple(self.functions), self.intensional))

    def sort(self, name: str) -> Sort:
        if name == INT.name:
            return INT
        try:
            return self.sorts[name]
        except KeyError:
            msg = f"unknown sort {name!r}"
            raise KeyError(msg) from None

    def has_sort(self, name: str) -> bool:
        return name == INT.name or name in self.sorts

    def is_constant(self, name: str) -> bool:
        return name in self.functions or name in self.predicates

    def is_intensional(self, name: str) -> bool:
        return name in self.intensional

    def element_sort(self, element: str) -> str | None:
        """Return the enumerated sort an element name belongs to, if any."""
        table: Mapping[str, str] = getattr(self, "_element_sorts")  # noqa: B009
        return table.get(element)

    def constants(self) -> tuple[str, ...]:
        """All constants in canonical order: functions, then predicates, as declared."""
        return (*self.functions, *self.predicates)

    def argument_sorts(self, name: str) -> tuple[str, ...]:
        if name in self.functions:
            return self.functions[name].arguments
        return self.predicates[name]

    def argument_tuples(self, name: str) -> tuple[tuple[Value, ...], ...]:
        """Every argument tuple of a constant (one empty tuple for arity 0)."""
        universes = [self.sort(s).universe() for s in self.argument_sorts(name)]
        return tuple(itertools.product(*universes))

    def replace(self, **changes: object) -> Signature:
        return dataclasses.replace(self, **changes)  # type: ignore[arg-type]


# ---------------------------------------------------------------------------
# Terms
# ---------------------------------------------------------------------------


@dataclasses.dataclass(frozen=True)
class Var:
    name: str
    sort: str


@dataclasses.dataclass(frozen=True)
class Const:
    """Name of an enumerated-sort element (a rigid object name)."""

    name: str


@dataclasses.dataclass(frozen=True)
class Num:
    value: int


@dataclasses.dataclass(frozen=True)
class App:
    """Application of a declared function constant; arity 0 is an object constant."""

    name: str
    args: tuple[Term, ...] = ()


@dataclasses.dataclass(frozen=True)
class Arith:
    op: str
    left: Term
    right: Term


Term = Var | Const | Num | App | Arith


# ---------------------------------------------------------------------------
# Formulas
# ---------------------------------------------------------------------------


@dataclasses.dataclass(frozen=True)
class Falsum:
    pass


@dataclasses.dataclass(frozen=True)
class Atom:
    predicate: str
    args: tuple[Term, ...] = ()


@dataclasses.dataclass(frozen=True)
class Eq:
    left: Term
    right: Term


@dataclasses.dataclass(frozen=True)
class Cmp:
    op: str
    left: Term
    right: Term


@dataclasses.dataclass(frozen=True)
class And:
    members: tuple[Formula, ...]


@dataclasses.dataclass(frozen=True)
class Or:
    members: tuple[Formula, ...]


@dataclasses.dataclass(frozen=True)
class Implies:
    left: Formula
    right: Formula


@dataclasses.dataclass(frozen=True)
class Forall:
    var: Var
    body: Formula


@dataclasses.dataclass(frozen=True)
class Exists:
    var: Var
    body: Formula


Formula = Falsum | Atom | Eq | Cmp | And | Or | Implies | Forall | Exists
AtomicFormula = Atom | Eq | Cmp

FALSUM = Falsum()
TOP = Implies(FALSUM, FALSUM)


def neg(formula: Formula) -> Formula:
    return Implies(formula, FALSUM)


def iff(left: Formula, right: Formula) -> Formula:
    return And((Implies(left, right), Implies(right, left)))


def conj(members: Iterable[Formula]) -> Formula:
    items = tuple(members)
    if not items:
        return TOP
    if len(items) == 1:
        return items[0]
    return And(items)


def disj(members: Iterable[Formula]) -> Formula:
    items = tuple(members)
    if not items:
        return FALSUM
    if len(items) == 1:
        return items[0]
    return Or(items)


def is_negation(formula: Formula) -> bool:
    return isinstance(formula, Implies) and isinstance(formula.right, Falsum)


def forall(variables: Iterable[Var], body: Formula) -> Formula:
    for var in reversed(tuple(variables)):
        body = Forall(var, body)
    return body


def exists(variables: Iterable[Var], body: Formula) -> Formula:
    for var in reversed(tuple(variables)):
        body = Exists(var, body)
    return body


# ---------------------------------------------------------------------------
# Rules and programs
# ---------------------------------------------------------------------------


@dataclasses.dataclass(frozen=True)
class Rule:
    """``head <- body`` over schematic variables.

    ``head`` is an ``Atom``, an ``Eq`` whose left side is a function
    application, or ``FALSUM`` for a constraint.  ``choice`` marks ``{f(t) = u}``.
    """

    head: Formula
    body: Formula = TOP
    variables: tuple[Var, ...] = ()
    choice: bool = False

    @property
    def is_constraint(self) -> bool:
        return isinstance(self.head, Falsum)

    def as_formula(self) -> Formula:
        """Universal closure of ``body -> head``; a choice head reads ``H | not H``."""
        head = Or((self.head, neg(self.head))) if self.choice else self.head
        return forall(self.variables, Implies(self.body, head))


@dataclasses.dataclass(frozen=True)
class Program:
    signature: Signature
    rules: tuple[Rule, ...] = ()

    def as_formula(self) -> Formula:
        return conj(rule.as_formula() for rule in self.rules)


# ---------------------------------------------------------------------------
# Traversals
# ---------------------------------------------------------------------------


def term_variables(term: Term) -> Iterator[Var]:
    if isinstance(term, Var):
        yield term
    elif isinstance(term, App):
        for arg in term.args:
            yield from term_variables(arg)
    elif isinstance(term, Arith):
        yield from term_variables(term.left)
        yield from term_variables(term.right)


def term_functions(term: Term) -> Iterator[str]:
    if isinstance(term, App):
        yield term.name
        for arg in term.args:
            yield from term_functions(arg)
    elif isinstance(term, Arith):
        yield from term_functions(term.left)
        yield from term_functions(term.right)


def atom_terms(formula: AtomicFormula) -> tuple[Term, ...]:
    if isinstance(formula, Atom):
        return formula.args
    return (formula.left, formula.right)


def atom_constants(formula: AtomicFormula) -> set[str]:
    """Predicate and function constants mentioned by an atomic formula."""
    names = {formula.predicate} if isinstance(formula, Atom) else set()
    for term in atom_terms(formula):
        names.update(term_functions(term))
    return names


def is_atomic(formula: Formula) -> bool:
    return isinstance(formula, (Atom, Eq, Cmp))


def is_rigid(term: Term) -> bool:
    """True for variable-free terms without function constants."""
    if isinstance(term, (Num, Const)):
        return True
    if isinstance(term, Arith):
        return is_rigid(term.left) and is_rigid(term.right)
    return False


def formula_constants(formula: Formula) -> set[str]:
    if isinstance(formula, (Atom, Eq, Cmp)):
        return atom_constants(formula)
    if isinstance(formula, (And, Or)):
        return set().union(*(formula_constants(m) for m in formula.members))
    if isinstance(formula, Implies):
        return formula_constants(formula.left) | formula_constants(formula.right)
    if isinstance(formula, (Forall, Exists)):
        return formula_constants(formula.body)
    return set()


def free_variables(formula: Formula | Term) -> frozenset[Var]:
    """Variables with a free occurrence in a formula or term."""
    if isinstance(formula, (Var, Const, Num, App, Arith)):
        return frozenset(term_variables(formula))
    if isinstance(formula, (Atom, Eq, Cmp)):
        return frozenset(v for t in atom_terms(formula) for v in term_variables(t))
    if isinstance(formula, (And, Or)):
        return frozenset().union(*(free_variables(m) for m in formula.members))
    if isinstance(formula, Implies):
        return free_variables(formula.left) | free_variables(formula.right)
    if isinstance(formula, (Forall, Exists)):
        return free_variables(formula.body) - {formula.var}
    return frozenset()


def variable_names(formula: Formula) -> set[str]:
    """Names of all variables, free or bound."""
    names = {v.name for v in free_variables(formula)}
    if isinstance(formula, (And, Or)):
        for member in formula.members:
            names |= variable_names(member)
    elif isinstance(formula, Implies):
        names |= variable_names(formula.left) | variable_names(formula.right)
    elif isinstance(formula, (Forall, Exists)):
        names |= {formula.var.name} | variable_names(formula.body)
    return names


def fresh_name(base: str, avoid: Iterable[str]) -> str:
    taken = set(avoid)
    for i in itertools.count(1):
        candidate = f"{base}{i}"
        if candidate not in taken:
            return candidate
    raise AssertionError  # pragma: no cover


# ---------------------------------------------------------------------------
# Substitution
# ---------------------------------------------------------------------------


def term_sort(term: Term, signature: Signature) -> str | None:
    """Sort name of a term, or ``None`` when the term is not sortable."""
    if isinstance(term, Var):
        return term.sort
    if isinstance(term, (Num, Arith)):
        return INT.name
    if isinstance(term, Const):
        return signature.element_sort(term.name)
    if term.name in signature.functions:
        return signature.functions[term.name].value
    return None


def sorts_compatible(left: str, right: str, signature: Signature) -> bool:
    """Equal sorts, or two integer-valued sorts."""
    if left == right:
        return True
    if not (signature.has_sort(left) and signature.has_sort(right)):
        return False
    return signature.sort(left).integral and signature.sort(right).integral


def substitute_term(term: Term, binding: Mapping[Var, Term]) -> Term:
    if isinstance(term, Var):
        return binding.get(term, term)
    if isinstance(term, App):
        if not term.args:
            return term
        return App(term.name, tuple(substitute_term(a, binding) for a in term.args))
    if isinstance(term, Arith):
        return Arith(
            term.op, substitute_term(term.left, binding), substitute_term(term.right, binding)
        )
    return term


def substitute(
    formula: Formula,
    binding: Mapping[Var, Term],
    signature: Signature | None = None,
) -> Formula:
    """Simultaneous, capture-free substitution of terms for free variables.

    With a signature, each bound term is checked against its variable's sort.
    """
    if signature is not None:
        for var, term in binding.items():
            sort = term_sort(term, signature)
            if sort is None or not sorts_compatible(var.sort, sort, signature):
                detail = f"{var.sort} variable bound to a term of sort {sort}"
                raise SubstitutionError(var.name, detail)
    if not binding:
        return formula
    return _substitute(formula, dict(binding))


def _substitute(formula: Formula, binding: dict[Var, Term]) -> Formula:  # noqa: PLR0911
    if isinstance(formula, Atom):
        if not formula.args:
            return formula
        return Atom(formula.predicate, tuple(substitute_term(t, binding) for t in formula.args))
    if isinstance(formula, Eq):
        return Eq(substitute_term(formula.left, binding), substitute_term(formula.right, binding))
    if isinstance(formula, Cmp):
        return Cmp(
            formula.op,
            substitute_term(formula.left, binding),
            substitute_term(formula.right, binding),
        )
    if isinstance(formula, And):
        return And(tuple(_substitute(m, binding) for m in formula.members))
    if isinstance(formula, Or):
        return Or(tuple(_substitute(m, binding) for m in formula.members))
    if isinstance(formula, Implies):
        return Implies(_substitute(formula.left, binding), _substitute(formula.right, binding))
    if isinstance(formula, (Forall, Exists)):
        inner = {v: t for v, t in binding.items() if v != formula.var}
        if not inner:
            return formula
        var = formula.var
        body = formula.body
        incoming = {v.name for t in inner.values() for v in term_variables(t)}
        if var.name in incoming:
            avoid = incoming | variable_names(body) | {v.name for v in inner}
            renamed = Var(fresh_name(var.name, avoid), var.sort)
            body = _substitute(body, {var: renamed})
            var = renamed
        return type(formula)(var, _substitute(body, inner))
    return formula


def always_defined(term: Term, signature: Signature) -> bool:
    """True when every argument of every application stays inside its declared sort."""
    if isinstance(term, Arith):
        return always_defined(term.left, signature) and always_defined(term.right, signature)
    if isinstance(term, App):
        if term.name not in signature.functions:
            return False
        declared = signature.functions[term.name].arguments
        return all(within(a, s, signature) for a, s in zip(term.args, declared))
    return True


def within(term: Term, sort_name: str, signature: Signature) -> bool:
    """True when a term is always defined and always denotes an element of ``sort_name``."""
    sort = signature.sort(sort_name)
    if sort.kind is SortKind.INTEGER:
        found = term_sort(term, signature)
        return (
            found is not None
            and signature.has_sort(found)
            and signature.sort(found).integral
            and always_defined(term, signature)
        )
    if isinstance(term, Num):
        return sort.contains(term.value)
    if isinstance(term, Const):
        return sort.contains(term.name)
    if isinstance(term, Arith):
        return False
    found = term_sort(term, signature)
    if found is None or not signature.has_sort(found):
        return False
    inner = signature.sort(found)
    if found != sort_name:
        contained = (
            inner.kind is SortKind.RANGE
            and sort.kind is SortKind.RANGE
            and sort.lo <= inner.lo
            and inner.hi <= sort.hi
        )
        if not contained:
            return False
    return always_defined(term, signature)


def map_atoms(formula: Formula, fn: Callable[[AtomicFormula], Formula]) -> Formula:
    """Rebuild a formula with every atomic subformula replaced by ``fn(atom)``."""
    if isinstance(formula, (Atom, Eq, Cmp)):
        return fn(formula)
    if isinstance(formula, And):
        return And(tuple(map_atoms(m, fn) for m in formula.members))
    if isinstance(formula, Or):
        return Or(tuple(map_atoms(m, fn) for m in formula.members))
    if isinstance(formula, Implies):
        return Implies(map_atoms(formula.left, fn), map_atoms(formula.right, fn))
    if isinstance(formula, (Forall, Exists)):
        return type(formula)(formula.var, map_atoms(formula.body, fn))
    return formula


def map_terms(formula: Formula, fn: Callable[[Term], Term]) -> Formula:
    """Apply ``fn`` to the top-level terms of every atom."""

    def atom(a: AtomicFormula) -> Formula:
        if isinstance(a, Atom):
            return Atom(a.predicate, tuple(fn(t) for t in a.args)) if a.args else a
        if isinstance(a, Eq):
            return Eq(fn(a.left), fn(a.right))
        return Cmp(a.op, fn(a.left), fn(a.right))

    return map_atoms(formula, atom)
