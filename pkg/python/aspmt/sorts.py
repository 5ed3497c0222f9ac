# SPDX-License-Identifier: BSD-2-Clause
# Copyright (c) deftio llc

"""Well-sortedness checking of terms, formulas, rules and programs."""

from __future__ import annotations

import dataclasses
from typing import TYPE_CHECKING

from aspmt.errors import SortError
from aspmt.printer import print_formula, print_term
from aspmt.syntax import (
    INT,
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
    Var,
    free_variables,
    sorts_compatible,
)

if TYPE_CHECKING:
    from aspmt.syntax import Formula, Program, Rule, Signature, Term


@dataclasses.dataclass(frozen=True)
class SortDiagnostic:
    """One well-sortedness violation."""

    rule_index: int | None
    subterm: str
    message: str

    def __str__(self) -> str:
        where = "signature" if self.rule_index is None else f"rule {self.rule_index}"
        return f"{where}: {self.message} in `{self.subterm}`"


class _Checker:
    def __init__(self, signature: Signature, rule_index: int | None) -> None:
        self._signature = signature
        self._rule_index = rule_index
        self.diagnostics: list[SortDiagnostic] = []

    def _report(self, subterm: str, message: str) -> None:
        self.diagnostics.append(SortDiagnostic(self._rule_index, subterm, message))

    def term(self, term: Term) -> str | None:  # noqa: C901, PLR0911
        sig = self._signature
        if isinstance(term, Var):
            if not sig.has_sort(term.sort):
                self._report(term.name, f"variable {term.name} has unknown sort {term.sort}")
                return None
            return term.sort
        if isinstance(term, Num):
            return INT.name
        if isinstance(term, Const):
            sort = sig.element_sort(term.name)
            if sort is None:
                self._report(term.name, f"undeclared object name {term.name}")
            return sort
        if isinstance(term, Arith):
            for side in (term.left, term.right):
                found = self.term(side)
                if found is not None and sig.has_sort(found) and not sig.sort(found).integral:
                    self._report(print_term(term), f"arithmetic on a term of sort {found}")
            return INT.name
        if term.name in sig.predicates:
            self._report(print_term(term), f"predicate {term.name} used as a term")
            return None
        if term.name not in sig.functions:
            self._report(print_term(term), f"undeclared function {term.name}")
            return None
        decl = sig.functions[term.name]
        self._arguments(term.name, term.args, decl.arguments, print_term(term))
        return decl.value

    def _arguments(
        self, name: str, args: tuple[Term, ...], declared: tuple[str, ...], text: str
    ) -> None:
        if len(args) != len(declared):
            self._report(text, f"{name} takes {len(declared)} argument(s), got {len(args)}")
            return
        for arg, expected in zip(args, declared):
            found = self.term(arg)
            if found is None or not self._signature.has_sort(expected):
                continue
            if not sorts_compatible(found, expected, self._signature):
                detail = f"argument {print_term(arg)} of sort {found}, expected {expected}"
                self._report(text, detail)
                continue
            sort = self._signature.sort(expected)
            if isinstance(arg, Num) and not sort.contains(arg.value):
                detail = f"numeral {arg.value} outside sort {expected} ({sort.lo}..{sort.hi})"
                self._report(text, detail)

    def formula(self, formula: Formula) -> None:  # noqa: C901
        sig = self._signature
        if isinstance(formula, Atom):
            text = print_formula(formula)
            if formula.predicate in sig.functions:
                self._report(text, f"function {formula.predicate} used as a formula")
            elif formula.predicate not in sig.predicates:
                self._report(text, f"undeclared predicate {formula.predicate}")
            else:
                declared = sig.predicates[formula.predicate]
                self._arguments(formula.predicate, formula.args, declared, text)
        elif isinstance(formula, Eq):
            left, right = self.term(formula.left), self.term(formula.right)
            if left is not None and right is not None and not sorts_compatible(left, right, sig):
                self._report(print_formula(formula), f"comparing sort {left} with sort {right}")
        elif isinstance(formula, Cmp):
            for side in (formula.left, formula.right):
                found = self.term(side)
                if found is not None and sig.has_sort(found) and not sig.sort(found).integral:
                    self._report(print_formula(formula), f"ordering a term of sort {found}")
        elif isinstance(formula, (And, Or)):
            for member in formula.members:
                self.formula(member)
        elif isinstance(formula, Implies):
            self.formula(formula.left)
            self.formula(formula.right)
        elif isinstance(formula, (Forall, Exists)):
            if not sig.has_sort(formula.var.sort):
                detail = f"quantifier over unknown sort {formula.var.sort}"
                self._report(print_formula(formula), detail)
            self.formula(formula.body)

    def rule(self, rule: Rule) -> None:
        head = rule.head
        text = print_formula(head)
        if isinstance(head, Eq):
            if not isinstance(head.left, App):
                self._report(text, "equality head must have a function application on the left")
        elif rule.choice:
            self._report(text, "choice head must be an equality")
        elif not isinstance(head, (Atom, Falsum)):
            self._report(text, "rule head must be an atom, an equality or empty")
        self.formula(head)
        self.formula(rule.body)
        declared = set(rule.variables)
        for var in sorted(free_variables(head) | free_variables(rule.body), key=lambda v: v.name):
            if var not in declared:
                self._report(var.name, f"variable {var.name} is not a rule variable")


def check_signature(signature: Signature) -> list[SortDiagnostic]:
    checker = _Checker(signature, None)
    for name in signature.constants():
        args = signature.argument_sorts(name)
        value = signature.functions[name].value if name in signature.functions else None
        for sort in (*args, *([value] if value else [])):
            if not signature.has_sort(sort):
                checker.diagnostics.append(SortDiagnostic(None, name, f"unknown sort {sort}"))
        for sort in args:
            if signature.has_sort(sort) and not signature.sort(sort).finite:
                checker.diagnostics.append(
                    SortDiagnostic(None, name, f"argument sort {sort} of {name} is not finite")
                )
    return checker.diagnostics


def check_formula(
    formula: Formula, signature: Signature, rule_index: int | None = None
) -> list[SortDiagnostic]:
    checker = _Checker(signature, rule_index)
    checker.formula(formula)
    return checker.diagnostics


def check_well_sorted(program: Program) -> list[SortDiagnostic]:
    """Return every sort violation of a program; an empty list means well-sorted."""
    diagnostics = check_signature(program.signature)
    for index, rule in enumerate(program.rules):
        checker = _Checker(program.signature, index)
        checker.rule(rule)
        diagnostics.extend(checker.diagnostics)
    return diagnostics


def require_well_sorted(program: Program) -> Program:
    diagnostics = check_well_sorted(program)
    if diagnostics:
        raise SortError(diagnostics)
    return program
