# SPDX-License-Identifier: BSD-2-Clause
# Copyright (c) deftio llc

"""Pretty-printing of programs, formulas and terms in the input language.

The output always reparses to a structurally equal value: degenerate
connectives print as ``#and(...)``/``#or(...)``, negations as ``not`` and the
biconditional pattern as ``<->``.
"""

from __future__ import annotations

from typing import TYPE_CHECKING

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
)

if TYPE_CHECKING:
    from aspmt.syntax import Formula, Program, Rule, Signature, Term

# Binding strength, loosest first.
_IFF, _IMP, _OR, _AND, _UNARY, _ATOM = range(6)
_SUM, _PRODUCT, _FACTOR = range(3)


def print_term(term: Term) -> str:
    return _term(term, _SUM)


def _term(term: Term, context: int) -> str:
    if isinstance(term, Var):
        return term.name
    if isinstance(term, Const):
        return term.name
    if isinstance(term, Num):
        return str(term.value)
    if isinstance(term, App):
        if not term.args:
            return term.name
        return f"{term.name}({', '.join(_term(a, _SUM) for a in term.args)})"
    level = _PRODUCT if term.op == "*" else _SUM
    # Left-associative: a right operand at the same level needs parentheses.
    text = f"{_term(term.left, level)} {term.op} {_term(term.right, level + 1)}"
    return f"({text})" if level < context else text


def _iff_parts(formula: Formula) -> tuple[Formula, Formula] | None:
    if not (isinstance(formula, And) and len(formula.members) == 2):  # noqa: PLR2004
        return None
    first, second = formula.members
    if (
        isinstance(first, Implies)
        and isinstance(second, Implies)
        and first.left == second.right
        and first.right == second.left
        and first != TOP
    ):
        return first.left, first.right
    return None


def print_formula(formula: Formula) -> str:
    return _formula(formula, _IFF)


def _formula(formula: Formula, context: int) -> str:  # noqa: C901, PLR0911, PLR0912
    if formula == TOP:
        return "#true"
    if isinstance(formula, Falsum):
        return "#false"
    if isinstance(formula, Atom):
        if not formula.args:
            return formula.predicate
        return f"{formula.predicate}({', '.join(_term(a, _SUM) for a in formula.args)})"
    if isinstance(formula, Eq):
        return f"{print_term(formula.left)} = {print_term(formula.right)}"
    if isinstance(formula, Cmp):
        return f"{print_term(formula.left)} {formula.op} {print_term(formula.right)}"

    iff = _iff_parts(formula)
    if iff is not None:
        text = f"{_formula(iff[0], _IMP)} <-> {_formula(iff[1], _IMP)}"
        level = _IFF
    elif isinstance(formula, Implies) and isinstance(formula.right, Falsum):
        text = f"not {_formula(formula.left, _UNARY)}"
        level = _UNARY
    elif isinstance(formula, Implies):
        text = f"{_formula(formula.left, _OR)} -> {_formula(formula.right, _IMP)}"
        level = _IMP
    elif isinstance(formula, (And, Or)):
        keyword, joiner, level = (
            ("#and", " & ", _AND) if isinstance(formula, And) else ("#or", " | ", _OR)
        )
        if len(formula.members) < 2:  # noqa: PLR2004
            inner = ", ".join(_formula(m, _IFF) for m in formula.members)
            return f"{keyword}({inner})"
        text = joiner.join(_formula(m, level + 1) for m in formula.members)
    elif isinstance(formula, (Forall, Exists)):
        keyword = "forall" if isinstance(formula, Forall) else "exists"
        body = _formula(formula.body, _UNARY)
        text = f"{keyword} {formula.var.name} in {formula.var.sort}: {body}"
        level = _UNARY
    else:  # pragma: no cover
        msg = f"unknown formula {formula!r}"
        raise TypeError(msg)
    return f"({text})" if level < context else text


def print_rule(rule: Rule) -> str:
    body = _body(rule.body)
    if rule.choice:
        head = f"{{{print_formula(rule.head)}}}"
    elif isinstance(rule.head, Falsum):
        head = ""
    else:
        head = _formula(rule.head, _AND)
    if body is None:
        return f"{head}." if head else ":- #true."
    return f"{head} :- {body}." if head else f":- {body}."


def _body(body: Formula) -> str | None:
    if body == TOP:
        return None
    if isinstance(body, And) and len(body.members) > 1:
        return ", ".join(_formula(m, _OR) for m in body.members)
    return _formula(body, _OR)


def print_signature(signature: Signature) -> str:
    lines: list[str] = []
    for sort in signature.sorts.values():
        if sort.kind is SortKind.ENUMERATED:
            lines.append(f"sort {sort.name} = {{{', '.join(sort.elements)}}}.")
        else:
            lines.append(f"sort {sort.name} = {sort.lo}..{sort.hi}.")
    for name, args in signature.predicates.items():
        suffix = f"({', '.join(args)})" if args else ""
        lines.append(f"pred {name}{suffix}.")
    for name, decl in signature.functions.items():
        suffix = f"({', '.join(decl.arguments)})" if decl.arguments else ""
        lines.append(f"func {name}{suffix} -> {decl.value}.")
    if signature.intensional:
        lines.append(f"intensional {', '.join(signature.intensional)}.")
    return "\n".join(lines)


def print_program(program: Program) -> str:
    parts = [print_signature(program.signature)]
    parts.extend(print_rule(rule) for rule in program.rules)
    return "\n".join(p for p in parts if p) + "\n"
