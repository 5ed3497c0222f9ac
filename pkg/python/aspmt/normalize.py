# SPDX-License-Identifier: BSD-2-Clause
# Copyright (c) deftio llc

"""Clark normal form relative to the intensional constants.

All rules for one intensional constant are merged into a single definition
``forall X (G -> p(X))`` or ``forall X, Y (G -> f(X) = Y)`` where ``G`` is the
disjunction over the rules of ``exists Z (X = t & Y = u & Body)``.  Choice
rules are first rewritten to the strongly equivalent ``f(t) = u`` guarded by
``not not f(t) = u`` in the body.
"""

from __future__ import annotations

import dataclasses
from typing import TYPE_CHECKING

from aspmt.errors import NormalizationError
from aspmt.syntax import (
    FALSUM,
    TOP,
    And,
    App,
    Atom,
    Cmp,
    Eq,
    Falsum,
    Implies,
    Num,
    Rule,
    SortKind,
    Var,
    always_defined,
    conj,
    disj,
    exists,
    forall,
    free_variables,
    neg,
    substitute,
    substitute_term,
    within,
)

if TYPE_CHECKING:
    from aspmt.syntax import Formula, Program, Signature, Term


@dataclasses.dataclass(frozen=True)
class Definition:
    """``forall arguments (body -> head)`` for one intensional constant."""

    constant: str
    arguments: tuple[Var, ...]
    value: Var | None
    body: Formula

    @property
    def is_function(self) -> bool:
        return self.value is not None

    @property
    def head(self) -> Formula:
        if self.value is None:
            return Atom(self.constant, self.arguments)
        return Eq(App(self.constant, self.arguments), self.value)

    @property
    def variables(self) -> tuple[Var, ...]:
        return self.arguments if self.value is None else (*self.arguments, self.value)

    def as_formula(self) -> Formula:
        return forall(self.variables, Implies(self.body, self.head))


@dataclasses.dataclass(frozen=True)
class ClarkProgram:
    signature: Signature
    definitions: dict[str, Definition]
    constraints: tuple[Formula, ...] = ()

    def as_formula(self) -> Formula:
        """The whole program as one sentence: definitions first, then constraints."""
        parts = [d.as_formula() for d in self.definitions.values()]
        return conj([*parts, *self.constraints])


def rewrite_choice(rule: Rule) -> Rule:
    """Rewrite ``{f(t) = u} :- B`` into ``f(t) = u :- not not f(t) = u, B``.

    Raises:
        NormalizationError: If the rule is not a choice rule.

    """
    if not rule.choice:
        msg = "not a choice rule"
        raise NormalizationError(msg)
    rest = rule.body.members if isinstance(rule.body, And) else (rule.body,)
    body = conj([neg(neg(rule.head)), *(m for m in rest if m != TOP)])
    return Rule(rule.head, body, rule.variables)


def program_formula(program: Program, *, rewrite_choices: bool = True) -> Formula:
    """A program as one sentence, optionally with choice rules rewritten."""
    rules = [
        rewrite_choice(r) if r.choice and rewrite_choices else r for r in program.rules
    ]
    return conj(r.as_formula() for r in rules)


def canonical_arguments(signature: Signature, constant: str) -> tuple[Var, ...]:
    return tuple(
        Var(f"X{i}", sort) for i, sort in enumerate(signature.argument_sorts(constant), start=1)
    )


def _head_parts(
    rule: Rule, index: int, signature: Signature
) -> tuple[str, tuple[Term, ...], Term | None]:
    head = rule.head
    if isinstance(head, Atom):
        name, args, value = head.predicate, head.args, None
    elif isinstance(head, Eq) and isinstance(head.left, App):
        name, args, value = head.left.name, head.left.args, head.right
    else:
        msg = "head is not an atom or a function equation"
        raise NormalizationError(msg, index)
    if not signature.is_intensional(name):
        msg = f"head references non-intensional constant {name}"
        raise NormalizationError(msg, index)
    return name, args, value


class _Merger:
    """Builds one disjunct ``exists Z (X = t & Y = u & Body)`` per rule."""

    def __init__(self, signature: Signature, constant: str) -> None:
        self.signature = signature
        self.constant = constant
        self.arguments = canonical_arguments(signature, constant)
        self.value = (
            Var("Y", signature.functions[constant].value)
            if constant in signature.functions
            else None
        )

    def disjunct(
        self,
        rule: Rule,
        index: int,
        args: tuple[Term, ...],
        value: Term | None,
    ) -> Formula:
        renaming: dict[Var, Term] = {}
        equalities: list[Formula] = []
        declared = self.signature.argument_sorts(self.constant)
        canonical: list[tuple[Var, Term, str]] = list(zip(self.arguments, args, declared))
        if self.value is not None and value is not None:
            canonical.append((self.value, value, ""))

        # First-seen variables of the right sort become the canonical variable itself.
        pending: list[tuple[Var, Term]] = []
        for target, term, sort in canonical:
            if isinstance(term, Var) and term not in renaming and term.sort == target.sort:
                renaming[term] = target
            else:
                if sort and not within(term, sort, self.signature):
                    detail = f"head argument of {self.constant} may leave sort {sort}"
                    raise NormalizationError(detail, index)
                pending.append((target, term))

        locals_ = [v for v in rule.variables if v not in renaming]
        for var in locals_:
            renaming[var] = Var(f"Z{index}_{var.name}", var.sort)
        for target, term in pending:
            equalities.append(Eq(target, substitute_term(term, renaming)))

        body = substitute(rule.body, renaming)
        members = body.members if isinstance(body, And) else (body,)
        parts = [*equalities, *(m for m in members if m != TOP)]
        renamed_locals = [renaming[v] for v in locals_]
        used = free_variables(conj(parts)) if parts else frozenset()
        return exists([v for v in renamed_locals if v in used], conj(parts))

    def value_constraint(self, rule: Rule, index: int, value: Term | None) -> Formula | None:
        """``forall Z (Body & not lo <= u <= hi -> #false)`` for a value that may leave its sort.

        ``f = u`` is false whenever ``u`` lies outside the value sort of ``f``,
        so such a rule also acts as a constraint on its body.  The disjunct
        alone would lose it, because ``Y`` only ranges over the value sort.
        """
        if self.value is None or value is None:
            return None
        sort_name = self.value.sort
        if within(value, sort_name, self.signature):
            return None
        sort = self.signature.sort(sort_name)
        if sort.kind is not SortKind.RANGE or not always_defined(value, self.signature):
            detail = f"value of {self.constant} may leave sort {sort_name}"
            raise NormalizationError(detail, index)
        inside = conj([Cmp("<=", Num(sort.lo), value), Cmp("<=", value, Num(sort.hi))])
        members = rule.body.members if isinstance(rule.body, And) else (rule.body,)
        body = conj([*(m for m in members if m != TOP), neg(inside)])
        return forall(rule.variables, Implies(body, FALSUM))


def to_clark_normal_form(program: Program) -> ClarkProgram:
    """Merge the rules of every intensional constant into one definition.

    Raises:
        NormalizationError: If a head mentions a non-intensional constant, is not
            an atom or a function equation, or has an argument that may leave its sort.

    """
    signature = program.signature
    mergers = {c: _Merger(signature, c) for c in signature.intensional}
    disjuncts: dict[str, list[Formula]] = {c: [] for c in signature.intensional}
    constraints: list[Formula] = []

    for index, original in enumerate(program.rules):
        rule = rewrite_choice(original) if original.choice else original
        if isinstance(rule.head, Falsum):
            constraints.append(forall(rule.variables, Implies(rule.body, FALSUM)))
            continue
        name, args, value = _head_parts(rule, index, signature)
        disjuncts[name].append(mergers[name].disjunct(rule, index, args, value))
        leaving = mergers[name].value_constraint(rule, index, value)
        if leaving is not None:
            constraints.append(leaving)

    definitions = {
        c: Definition(c, mergers[c].arguments, mergers[c].value, disj(disjuncts[c]))
        for c in signature.intensional
    }
    return ClarkProgram(signature, definitions, tuple(constraints))
