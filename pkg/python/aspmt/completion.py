# SPDX-License-Identifier: BSD-2-Clause
# Copyright (c) deftio llc

"""Clark completion, classical simplification and the function-definition split.

Simplification is classical.  It removes double negations, which change
stable models, so it must only ever run on a completed theory and never on a
program or on a Clark normal form.
"""

from __future__ import annotations

import dataclasses
from typing import TYPE_CHECKING

from aspmt.syntax import (
    FALSUM,
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
    always_defined,
    conj,
    disj,
    forall,
    free_variables,
    iff,
    is_negation,
    is_rigid,
    substitute,
    term_variables,
    within,
)

if TYPE_CHECKING:
    from aspmt.normalize import ClarkProgram, Definition
    from aspmt.syntax import Formula, Signature, Term


@dataclasses.dataclass(frozen=True)
class CompletedTheory:
    """One biconditional per intensional constant plus the program constraints."""

    signature: Signature
    biconditionals: dict[str, Formula]
    constraints: tuple[Formula, ...]
    definitions: dict[str, Definition]
    warnings: tuple[str, ...] = ()

    def as_formula(self) -> Formula:
        return conj([*self.biconditionals.values(), *self.constraints])

    def split(self) -> dict[str, tuple[Formula, Formula]]:
        """Forward and backward halves of every function biconditional."""
        return {
            name: split_biconditional(self.biconditionals[name], self.signature)
            for name, definition in self.definitions.items()
            if definition.is_function
        }


def complete(clark: ClarkProgram) -> CompletedTheory:
    """Replace every definition ``forall X (G -> H)`` by ``forall X (H <-> G)``."""
    biconditionals = {
        name: forall(d.variables, iff(d.head, d.body)) for name, d in clark.definitions.items()
    }
    warnings = [
        f"sort {s.name} has a single element; completion models may not be stable"
        for s in clark.signature.sorts.values()
        if s.finite and len(s.universe()) == 1
    ]
    return CompletedTheory(
        clark.signature,
        biconditionals,
        clark.constraints,
        dict(clark.definitions),
        tuple(warnings),
    )


def _destructure(formula: Formula) -> tuple[list[Var], App, Var, Formula]:
    variables: list[Var] = []
    while isinstance(formula, Forall):
        variables.append(formula.var)
        formula = formula.body
    if (
        isinstance(formula, And)
        and len(formula.members) == 2  # noqa: PLR2004
        and isinstance(formula.members[0], Implies)
        and isinstance(head := formula.members[0].left, Eq)
        and isinstance(head.left, App)
        and isinstance(head.right, Var)
        and head.right in variables
    ):
        return variables, head.left, head.right, formula.members[0].right
    msg = "not a function biconditional forall X, Y (f(X) = Y <-> G)"
    raise ValueError(msg)


def split_biconditional(formula: Formula, signature: Signature) -> tuple[Formula, Formula]:
    """Split ``forall X, Y (f(X) = Y <-> G)`` into a simplified forward/backward pair.

    The forward half ``forall X G[Y := f(X)]`` says the value of ``f`` is
    supported; the backward half ``forall X, Y (G -> f(X) = Y)`` says it is
    the only supported value.  Backward conjuncts already present in the
    forward half are dropped.

    Raises:
        ValueError: If the formula is not a function biconditional.

    """
    variables, application, value, body = _destructure(formula)
    arguments = [v for v in variables if v != value]
    forward = simplify(forall(arguments, substitute(body, {value: application})), signature)
    backward = simplify(forall(variables, Implies(body, Eq(application, value))), signature)
    seen = set(_conjuncts(forward))
    backward = conj(m for m in _conjuncts(backward) if m not in seen)
    return forward, backward


def _conjuncts(formula: Formula) -> tuple[Formula, ...]:
    if formula == TOP:
        return ()
    return formula.members if isinstance(formula, And) else (formula,)


def simplify(formula: Formula, signature: Signature) -> Formula:
    """Classically equivalent simplification of a completed formula."""
    return _Simplifier(signature).formula(formula)


class _Simplifier:
    def __init__(self, signature: Signature) -> None:
        self.signature = signature

    def formula(self, formula: Formula) -> Formula:  # noqa: PLR0911
        if isinstance(formula, (Atom, Eq, Cmp)):
            return self.atom(formula)
        if isinstance(formula, And):
            return self.conjunction(formula.members)
        if isinstance(formula, Or):
            return self.disjunction(formula.members)
        if isinstance(formula, Implies):
            if formula == TOP:
                return TOP
            return self.implication(self.formula(formula.left), self.formula(formula.right))
        if isinstance(formula, Forall):
            return self.universal(formula.var, self.formula(formula.body))
        if isinstance(formula, Exists):
            return self.existential(formula.var, self.formula(formula.body))
        return formula

    def atom(self, atom: Atom | Eq | Cmp) -> Formula:
        if isinstance(atom, Atom):
            return atom
        if (
            isinstance(atom, Eq)
            and atom.left == atom.right
            and always_defined(atom.left, self.signature)
        ):
            return TOP
        if is_rigid(atom.left) and is_rigid(atom.right):
            return TOP if _rigid_truth(atom) else FALSUM
        return atom

    def conjunction(self, members: tuple[Formula, ...]) -> Formula:
        out: list[Formula] = []
        for member in members:
            simple = self.formula(member)
            if isinstance(simple, Falsum):
                return FALSUM
            for part in _conjuncts(simple):
                if part not in out:
                    out.append(part)
        return conj(out)

    def disjunction(self, members: tuple[Formula, ...]) -> Formula:
        out: list[Formula] = []
        for member in members:
            simple = self.formula(member)
            if simple == TOP:
                return TOP
            parts = simple.members if isinstance(simple, Or) else (simple,)
            for part in parts:
                if not isinstance(part, Falsum) and part not in out:
                    out.append(part)
        return disj(out)

    def implication(self, left: Formula, right: Formula) -> Formula:  # noqa: PLR0911
        if isinstance(left, Falsum) or right == TOP:
            return TOP
        if left == TOP:
            return right
        if isinstance(right, Falsum):
            if is_negation(left):
                assert isinstance(left, Implies)  # noqa: S101
                return left.left
            return Implies(left, FALSUM)
        if left == right or right in _conjuncts(left):
            return TOP
        return Implies(left, right)

    def universal(self, var: Var, body: Formula) -> Formula:
        if var not in free_variables(body):
            return body
        if isinstance(body, And):
            return self.conjunction(tuple(Forall(var, m) for m in body.members))
        if isinstance(body, Implies) and isinstance(body.left, Or):
            return self.conjunction(
                tuple(Forall(var, Implies(d, body.right)) for d in body.left.members)
            )
        if isinstance(body, Implies):
            found = self.one_point(var, _conjuncts(body.left))
            if found is not None:
                term, rest = found
                return self.formula(substitute(Implies(conj(rest), body.right), {var: term}))
        return Forall(var, body)

    def existential(self, var: Var, body: Formula) -> Formula:
        if var not in free_variables(body):
            return body
        if isinstance(body, Or):
            return self.disjunction(tuple(Exists(var, m) for m in body.members))
        found = self.one_point(var, body.members if isinstance(body, And) else (body,))
        if found is not None:
            term, rest = found
            return self.formula(substitute(conj(rest), {var: term}))
        return Exists(var, body)

    def one_point(
        self, var: Var, members: tuple[Formula, ...]
    ) -> tuple[Term, list[Formula]] | None:
        """Find ``var = t`` among ``members``; return ``t`` and the rest with a range guard."""
        for index, member in enumerate(members):
            term = _solved_for(var, member)
            if term is None or not always_defined(term, self.signature):
                continue
            guard = self.range_guard(var, term)
            if guard is None:
                continue
            rest = [*guard, *members[:index], *members[index + 1 :]]
            return term, rest
        return None

    def range_guard(self, var: Var, term: Term) -> list[Formula] | None:
        if within(term, var.sort, self.signature):
            return []
        sort = self.signature.sort(var.sort)
        if sort.kind is not SortKind.RANGE:
            return None
        return [Cmp("<=", Num(sort.lo), term), Cmp("<=", term, Num(sort.hi))]


def _solved_for(var: Var, formula: Formula) -> Term | None:
    if not isinstance(formula, Eq):
        return None
    for mine, other in ((formula.left, formula.right), (formula.right, formula.left)):
        if mine == var and var not in set(term_variables(other)):
            return other
    return None


def _rigid_value(term: Term) -> int | str:
    if isinstance(term, Num):
        return term.value
    if isinstance(term, Const):
        return term.name
    assert isinstance(term, Arith)  # noqa: S101
    left, right = _rigid_value(term.left), _rigid_value(term.right)
    assert isinstance(left, int)  # noqa: S101
    assert isinstance(right, int)  # noqa: S101
    if term.op == "+":
        return left + right
    if term.op == "-":
        return left - right
    return left * right


def _rigid_truth(atom: Eq | Cmp) -> bool:
    left, right = _rigid_value(atom.left), _rigid_value(atom.right)
    if isinstance(atom, Eq):
        return left == right
    if not (isinstance(left, int) and isinstance(right, int)):
        return False
    return {
        "<": left < right,
        "<=": left <= right,
        ">": left > right,
        ">=": left >= right,
    }[atom.op]
