# SPDX-License-Identifier: BSD-2-Clause
# Copyright (c) deftio llc

"""Step unrolling: turn step-indexed constants into one constant per step.

A program may declare a sort named ``step`` (``0..H``).  Every constant whose
first argument has sort ``step`` becomes the constants ``name_0 .. name_H``
and every rule is instantiated for the values of its step variables.  The
result mentions no step-sorted constant, so the constant-level dependency
graph of a transition system over time is acyclic whenever its rules only
look backwards in time.
"""

from __future__ import annotations

import itertools
from typing import TYPE_CHECKING

from aspmt.errors import NormalizationError
from aspmt.syntax import (
    FALSUM,
    And,
    App,
    Arith,
    Atom,
    Cmp,
    Const,
    Eq,
    Exists,
    Forall,
    FunctionDecl,
    Implies,
    Num,
    Or,
    Program,
    Rule,
    Signature,
    Sort,
    SortKind,
    Var,
    conj,
    disj,
    is_rigid,
    map_atoms,
    substitute,
)

if TYPE_CHECKING:
    from aspmt.syntax import AtomicFormula, Formula, Term

STEP_SORT = "step"


class _OutOfRange(Exception):  # noqa: N818
    pass


class _Unroller:
    def __init__(self, signature: Signature, steps: range) -> None:
        self.signature = signature
        self.steps = steps
        self.indexed = {
            name
            for name in signature.constants()
            if signature.argument_sorts(name)[:1] == (STEP_SORT,)
        }

    def step_name(self, name: str, step: int) -> str:
        return f"{name}_{step}"

    def unrolled_signature(self) -> Signature:
        sig = self.signature
        sorts = dict(sig.sorts)
        sorts[STEP_SORT] = Sort(STEP_SORT, SortKind.RANGE, lo=self.steps.start, hi=self.steps[-1])
        taken = set(sig.constants()) | {e for s in sorts.values() for e in s.elements}
        functions: dict[str, FunctionDecl] = {}
        predicates: dict[str, tuple[str, ...]] = {}
        intensional: list[str] = []

        def add(name: str) -> list[str]:
            if name not in self.indexed:
                return [name]
            names = [self.step_name(name, t) for t in self.steps]
            clash = [n for n in names if n in taken]
            if clash:
                msg = f"unrolling {name} collides with declared name {clash[0]}"
                raise NormalizationError(msg)
            return names

        for name, decl in sig.functions.items():
            shift = 1 if name in self.indexed else 0
            for new in add(name):
                functions[new] = FunctionDecl(decl.arguments[shift:], decl.value)
        for name, args in sig.predicates.items():
            shift = 1 if name in self.indexed else 0
            for new in add(name):
                predicates[new] = args[shift:]
        for name in sig.intensional:
            intensional.extend(add(name))
        return Signature(sorts, functions, predicates, tuple(intensional))

    # --- terms and atoms ---

    def term(self, term: Term) -> Term:
        if isinstance(term, Arith):
            return Arith(term.op, self.term(term.left), self.term(term.right))
        if not isinstance(term, App):
            return term
        args = tuple(self.term(a) for a in term.args)
        if term.name not in self.indexed:
            return App(term.name, args)
        return App(self._indexed_name(term.name, args[0]), args[1:])

    def _indexed_name(self, name: str, step: Term) -> str:
        if not is_rigid(step):
            msg = f"step argument of {name} must be a numeral after instantiation"
            raise NormalizationError(msg)
        value = _evaluate(step)
        if value not in self.steps:
            raise _OutOfRange
        return self.step_name(name, value)

    def atom(self, atom: AtomicFormula) -> Formula:
        try:
            if isinstance(atom, Atom):
                args = tuple(self.term(a) for a in atom.args)
                if atom.predicate in self.indexed:
                    return Atom(self._indexed_name(atom.predicate, args[0]), args[1:])
                return Atom(atom.predicate, args)
            if isinstance(atom, Eq):
                return Eq(self.term(atom.left), self.term(atom.right))
            return Cmp(atom.op, self.term(atom.left), self.term(atom.right))
        except _OutOfRange:
            # An application outside the step range is undefined, so the atom is false.
            return FALSUM

    def formula(self, formula: Formula) -> Formula:
        formula = self._expand_step_quantifiers(formula)
        return map_atoms(formula, self.atom)

    def _expand_step_quantifiers(self, formula: Formula) -> Formula:
        if isinstance(formula, (Forall, Exists)):
            body = self._expand_step_quantifiers(formula.body)
            if formula.var.sort != STEP_SORT:
                return type(formula)(formula.var, body)
            instances = [substitute(body, {formula.var: Num(t)}) for t in self.steps]
            return conj(instances) if isinstance(formula, Forall) else disj(instances)
        if isinstance(formula, And):
            return And(tuple(self._expand_step_quantifiers(m) for m in formula.members))
        if isinstance(formula, Or):
            return Or(tuple(self._expand_step_quantifiers(m) for m in formula.members))
        if isinstance(formula, Implies):
            return Implies(
                self._expand_step_quantifiers(formula.left),
                self._expand_step_quantifiers(formula.right),
            )
        return formula

    def rule(self, rule: Rule) -> list[Rule]:
        step_vars = [v for v in rule.variables if v.sort == STEP_SORT]
        others = tuple(v for v in rule.variables if v.sort != STEP_SORT)
        out: list[Rule] = []
        for values in itertools.product(self.steps, repeat=len(step_vars)):
            binding: dict[Var, Term] = {v: Num(t) for v, t in zip(step_vars, values)}
            head = substitute(rule.head, binding)
            body = substitute(rule.body, binding)
            if self._drops(head, body):
                continue
            out.append(Rule(self.formula(head), self.formula(body), others, rule.choice))
        return out

    def _drops(self, head: Formula, body: Formula) -> bool:
        """An instance with an out-of-range head or positive body literal is dropped."""
        positive = body.members if isinstance(body, And) else (body,)
        return any(
            part != FALSUM and self.formula(part) == FALSUM for part in (head, *positive)
        )


def _evaluate(term: Term) -> int:
    if isinstance(term, Num):
        return term.value
    if isinstance(term, Arith):
        left, right = _evaluate(term.left), _evaluate(term.right)
        if term.op == "+":
            return left + right
        if term.op == "-":
            return left - right
        return left * right
    if isinstance(term, Const):
        msg = f"object name {term.name} used as a step"
        raise NormalizationError(msg)
    raise _OutOfRange  # pragma: no cover


def unroll_steps(program: Program, horizon: int | None = None) -> Program:
    """Replace step-indexed constants by per-step constants.

    Programs without a ``step`` sort are returned unchanged unless a horizon
    is requested.

    Raises:
        NormalizationError: If ``step`` is not a range starting at 0, a
            generated name is already declared, or a step argument is not a
            numeral after instantiation.

    """
    sig = program.signature
    if STEP_SORT not in sig.sorts:
        if horizon is not None:
            msg = "--horizon needs a program that declares `sort step = 0..H.`"
            raise NormalizationError(msg)
        return program
    sort = sig.sorts[STEP_SORT]
    if sort.kind is not SortKind.RANGE or sort.lo != 0:
        msg = "sort step must be a range starting at 0"
        raise NormalizationError(msg)
    if horizon is not None and horizon < 0:
        msg = f"horizon must be non-negative, got {horizon}"
        raise NormalizationError(msg)
    steps = range(0, (sort.hi if horizon is None else horizon) + 1)
    unroller = _Unroller(sig, steps)
    rules: list[Rule] = []
    for rule in program.rules:
        rules.extend(unroller.rule(rule))
    return Program(unroller.unrolled_signature(), tuple(rules))
