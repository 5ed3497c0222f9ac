# SPDX-License-Identifier: BSD-2-Clause
# Copyright (c) deftio llc

"""Parser for the textual program language.

Statements end with ``.``; each statement is parsed on its own so that one
bad statement does not hide errors in the following ones.  Declarations are
collected before any rule is resolved, so a constant may be used before it is
declared.  Schematic variables get their sorts from the positions they occur
in; two different inferred sorts for one variable is a sort error.
"""

from __future__ import annotations

import dataclasses
import functools
import re
from typing import TYPE_CHECKING

import lark
from lark import exceptions as lark_exceptions

from aspmt.errors import SyntaxDiagnosticsError
from aspmt.sorts import check_formula, check_well_sorted
from aspmt.syntax import (
    FALSUM,
    INT,
    TOP,
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
    iff,
    map_terms,
    neg,
    substitute_term,
    term_sort,
)

if TYPE_CHECKING:
    from collections.abc import Mapping

    from aspmt.syntax import Formula, Term

_GRAMMAR = r"""
statement: _stmt
formula_only: formula

_stmt: range_sort | enum_sort | pred_decl | func_decl | intensional_decl
     | rule | fact | constraint | choice

range_sort: "sort" LCID "=" bound ".." bound "."
enum_sort: "sort" LCID "=" "{" name_list "}" "."
pred_decl: "pred" LCID sort_list? "."
func_decl: "func" LCID sort_list? "->" LCID "."
intensional_decl: "intensional" name_list "."
sort_list: "(" name_list ")"
name_list: LCID ("," LCID)*
bound: NUMBER -> pos_bound
     | "-" NUMBER -> neg_bound

rule: formula ":-" body "."
fact: formula "."
constraint: ":-" body "."
choice: "{" formula "}" (":-" body)? "."
body: formula ("," formula)*

?formula: imp
        | imp "<->" imp -> iff
?imp: disj
    | disj "->" imp -> implies
?disj: conj
     | conj ("|" conj)+ -> or_
?conj: unary
     | unary ("&" unary)+ -> and_
?unary: cmp
      | "not" unary -> not_
      | "forall" VAR "in" LCID ":" unary -> forall_
      | "exists" VAR "in" LCID ":" unary -> exists_
?cmp: sum
    | sum "=" sum -> eq
    | sum "!=" sum -> neq
    | sum "<" sum -> lt
    | sum "<=" sum -> le
    | sum ">" sum -> gt
    | sum ">=" sum -> ge
?sum: product
    | sum "+" product -> add
    | sum "-" product -> sub
?product: factor
        | product "*" factor -> mul
?factor: NUMBER -> num
       | "-" NUMBER -> negnum
       | VAR -> var
       | LCID -> name
       | LCID "(" args ")" -> app
       | "(" formula ")"
       | "#true" -> true
       | "#false" -> false
       | "#and" "(" args? ")" -> and_n
       | "#or" "(" args? ")" -> or_n
args: formula ("," formula)*

VAR: /[A-Z][A-Za-z0-9_]*/
LCID: /[a-z][A-Za-z0-9_]*/
NUMBER: /[0-9]+/
COMMENT: /%[^\n]*/

%import common.WS
%ignore WS
%ignore COMMENT
"""

_CMP_OPS = {"lt": "<", "le": "<=", "gt": ">", "ge": ">="}
_ARITH_OPS = {"add": "+", "sub": "-", "mul": "*"}
_TERM_NODES = {"num", "negnum", "var", "add", "sub", "mul"}
_PENDING = ""


@functools.cache
def _lark() -> lark.Lark:
    return lark.Lark(
        _GRAMMAR,
        parser="lalr",
        start=["statement", "formula_only"],
        propagate_positions=True,
    )


@dataclasses.dataclass(frozen=True)
class SourceSpan:
    """Byte offsets ``start..end`` into the input plus the 1-based line/column of ``start``."""

    start: int
    end: int
    line: int
    column: int

    def __post_init__(self) -> None:
        if self.start > self.end:
            msg = f"span start {self.start} after end {self.end}"
            raise ValueError(msg)


@dataclasses.dataclass(frozen=True)
class ParseDiagnostic:
    kind: str  # lexical | syntax | undeclared | sort
    message: str
    span: SourceSpan

    def __str__(self) -> str:
        return f"{self.span.line}:{self.span.column}: {self.kind} error: {self.message}"


class _Source:
    def __init__(self, text: str) -> None:
        self.text = text
        self._line_starts = [0] + [m.end() for m in re.finditer("\n", text)]

    def span(self, start: int, end: int | None = None) -> SourceSpan:
        start = max(0, min(start, len(self.text)))
        end = start if end is None else max(start, min(end, len(self.text)))
        line = _bisect(self._line_starts, start)
        column = start - self._line_starts[line - 1] + 1
        return SourceSpan(
            len(self.text[:start].encode()), len(self.text[:end].encode()), line, column
        )


def _bisect(starts: list[int], offset: int) -> int:
    lo, hi = 0, len(starts)
    while lo + 1 < hi:
        mid = (lo + hi) // 2
        if starts[mid] <= offset:
            lo = mid
        else:
            hi = mid
    return lo + 1


def _split_statements(text: str) -> list[tuple[int, str]]:
    """Cut the text after every ``.`` that is not part of ``..`` or a comment."""
    chunks: list[tuple[int, str]] = []
    start = i = 0
    while i < len(text):
        char = text[i]
        if char == "%":
            newline = text.find("\n", i)
            i = len(text) if newline < 0 else newline
            continue
        if char == ".":
            if text.startswith("..", i):
                i += 2
                continue
            chunks.append((start, text[start : i + 1]))
            start = i + 1
        i += 1
    tail = text[start:]
    if re.sub(r"%[^\n]*", "", tail).strip():
        chunks.append((start, tail))
    return chunks


class _Collector:
    """Diagnostics gathered over a whole input."""

    def __init__(self, source: _Source) -> None:
        self.source = source
        self.items: list[ParseDiagnostic] = []

    def add(self, kind: str, message: str, start: int, end: int | None = None) -> None:
        self.items.append(ParseDiagnostic(kind, message, self.source.span(start, end)))


def _parse_chunk(
    offset: int, chunk: str, start: str, diagnostics: _Collector
) -> lark.Tree | None:
    try:
        return _lark().parse(chunk, start=start)
    except lark_exceptions.UnexpectedCharacters as exc:
        pos = offset + exc.pos_in_stream
        diagnostics.add("lexical", f"unexpected character {exc.char!r}", pos, pos + 1)
    except lark_exceptions.UnexpectedToken as exc:
        if exc.token.type == "$END":
            end = offset + len(chunk)
            diagnostics.add("syntax", "unexpected end of input (missing '.'?)", end)
        else:
            pos = offset + (exc.token.start_pos or 0)
            diagnostics.add(
                "syntax", f"unexpected {exc.token.value!r}", pos, pos + len(exc.token.value)
            )
    except lark_exceptions.UnexpectedEOF:
        end = offset + len(chunk)
        diagnostics.add("syntax", "unexpected end of input (missing '.'?)", end)
    except lark_exceptions.UnexpectedInput as exc:  # pragma: no cover
        diagnostics.add("syntax", str(exc), offset + max(exc.pos_in_stream or 0, 0))
    return None


# ---------------------------------------------------------------------------
# Declarations
# ---------------------------------------------------------------------------


@dataclasses.dataclass
class _Declarations:
    sorts: dict[str, Sort] = dataclasses.field(default_factory=dict)
    functions: dict[str, FunctionDecl] = dataclasses.field(default_factory=dict)
    predicates: dict[str, tuple[str, ...]] = dataclasses.field(default_factory=dict)
    intensional: list[str] = dataclasses.field(default_factory=list)
    positions: dict[str, int] = dataclasses.field(default_factory=dict)


def _names(tree: lark.Tree | None) -> list[str]:
    if tree is None:
        return []
    if tree.data == "sort_list":
        tree = tree.children[0]
    return [str(tok) for tok in tree.children]


def _bound(tree: lark.Tree) -> int:
    value = int(str(tree.children[0]))
    return -value if tree.data == "neg_bound" else value


def _collect_declarations(
    statements: list[tuple[int, lark.Tree]], diagnostics: _Collector
) -> Signature:
    decls = _Declarations()
    taken: dict[str, str] = {}
    pending_intensional: list[tuple[int, str]] = []

    def claim(name: str, what: str, pos: int) -> bool:
        if name in taken or (what == "sort" and name == INT.name):
            diagnostics.add("syntax", f"{name} is already declared", pos, pos + len(name))
            return False
        taken[name] = what
        decls.positions[name] = pos
        return True

    for pos, stmt in statements:
        node = stmt.children[0]
        kind = node.data
        if kind in {"range_sort", "enum_sort"}:
            name = str(node.children[0])
            if not claim(name, "sort", pos):
                continue
            if kind == "range_sort":
                lo, hi = _bound(node.children[1]), _bound(node.children[2])
                if lo > hi:
                    diagnostics.add("sort", f"sort {name} has empty range {lo}..{hi}", pos)
                    continue
                decls.sorts[name] = Sort(name, SortKind.RANGE, lo=lo, hi=hi)
            else:
                elements = _names(node.children[1])
                fresh = [e for e in elements if claim(e, "element", pos)]
                if len(fresh) == len(elements):
                    decls.sorts[name] = Sort(name, SortKind.ENUMERATED, tuple(elements))
        elif kind == "pred_decl":
            name = str(node.children[0])
            if claim(name, "predicate", pos):
                args = _names(node.children[1]) if len(node.children) > 1 else []
                decls.predicates[name] = tuple(args)
        elif kind == "func_decl":
            name = str(node.children[0])
            if claim(name, "function", pos):
                args = _names(node.children[1]) if len(node.children) > 2 else []  # noqa: PLR2004
                decls.functions[name] = FunctionDecl(tuple(args), str(node.children[-1]))
        elif kind == "intensional_decl":
            pending_intensional.extend((pos, n) for n in _names(node.children[0]))

    for name in (*decls.functions, *decls.predicates):
        pos = decls.positions[name]
        sorts = list(decls.predicates.get(name, ()))
        if name in decls.functions:
            sorts = [*decls.functions[name].arguments, decls.functions[name].value]
        for sort in sorts:
            if sort != INT.name and sort not in decls.sorts:
                diagnostics.add("undeclared", f"unknown sort {sort} in declaration of {name}", pos)

    for pos, name in pending_intensional:
        if name not in decls.functions and name not in decls.predicates:
            diagnostics.add("undeclared", f"intensional constant {name} is not declared", pos)
        elif name not in decls.intensional:
            decls.intensional.append(name)

    return Signature(decls.sorts, decls.functions, decls.predicates, tuple(decls.intensional))


# ---------------------------------------------------------------------------
# Formulas and terms
# ---------------------------------------------------------------------------


class _SortInference:
    """Union-find over variable names with strong (declared) and weak (integer) sorts."""

    def __init__(self) -> None:
        self._parent: dict[str, str] = {}
        self._strong: dict[str, set[str]] = {}
        self._weak: set[str] = set()

    def add(self, name: str) -> None:
        if name not in self._parent:
            self._parent[name] = name
            self._strong[name] = set()

    def _find(self, name: str) -> str:
        while self._parent[name] != name:
            self._parent[name] = self._parent[self._parent[name]]
            name = self._parent[name]
        return name

    def strong(self, name: str, sort: str) -> None:
        self._strong[self._find(name)].add(sort)

    def weak(self, name: str) -> None:
        self._weak.add(self._find(name))

    def union(self, left: str, right: str) -> None:
        a, b = self._find(left), self._find(right)
        if a != b:
            self._parent[b] = a
            self._strong[a] |= self._strong.pop(b)
            if b in self._weak:
                self._weak.add(a)

    def resolve(self, name: str) -> tuple[str | None, str]:
        root = self._find(name)
        strong = self._strong[root]
        if len(strong) > 1:
            return None, f"variable {name} has ambiguous sort ({', '.join(sorted(strong))})"
        if strong:
            return next(iter(strong)), ""
        if root in self._weak:
            return INT.name, ""
        return None, f"cannot infer the sort of variable {name}"


class _Builder:
    """Turns parse trees into formulas and terms under a signature."""

    def __init__(self, signature: Signature, diagnostics: _Collector, offset: int) -> None:
        self.sig = signature
        self.diagnostics = diagnostics
        self.offset = offset
        self.inference = _SortInference()
        self.order: list[str] = []

    def _report(self, kind: str, message: str, node: lark.Tree | lark.Token) -> None:
        if isinstance(node, lark.Token):
            start, end = node.start_pos or 0, node.end_pos or 0
        else:
            start, end = node.meta.start_pos, node.meta.end_pos
        self.diagnostics.add(kind, message, self.offset + start, self.offset + end)

    # --- terms ---

    def term(self, node: lark.Tree, scope: Mapping[str, Var]) -> Term:  # noqa: PLR0911
        kind = node.data
        if kind == "num":
            return Num(int(str(node.children[0])))
        if kind == "negnum":
            return Num(-int(str(node.children[0])))
        if kind == "var":
            name = str(node.children[0])
            if name in scope:
                return scope[name]
            self.inference.add(name)
            if name not in self.order:
                self.order.append(name)
            return Var(name, _PENDING)
        if kind in _ARITH_OPS:
            left = self.term(node.children[0], scope)
            right = self.term(node.children[1], scope)
            for side in (left, right):
                self._weak(side)
            return Arith(_ARITH_OPS[kind], left, right)
        if kind in {"name", "app"}:
            name = str(node.children[0])
            args = self._args(node, scope)
            if not args and self.sig.element_sort(name) is not None:
                return Const(name)
            if name not in self.sig.functions and name not in self.sig.predicates:
                self._report("undeclared", f"undeclared symbol {name}", node)
            return App(name, args)
        self._report("syntax", "expected a term, found a formula", node)
        return Num(0)

    def _args(self, node: lark.Tree, scope: Mapping[str, Var]) -> tuple[Term, ...]:
        if node.data != "app":
            return ()
        name = str(node.children[0])
        declared: tuple[str, ...] = ()
        if name in self.sig.functions:
            declared = self.sig.functions[name].arguments
        elif name in self.sig.predicates:
            declared = self.sig.predicates[name]
        args = tuple(self.term(child, scope) for child in node.children[1].children)
        for arg, sort in zip(args, declared):
            if isinstance(arg, Var) and arg.sort == _PENDING:
                self.inference.strong(arg.name, sort)
        return args

    def _weak(self, term: Term) -> None:
        if isinstance(term, Var) and term.sort == _PENDING:
            self.inference.weak(term.name)

    def _relate(self, left: Term, right: Term) -> None:
        for var, other in ((left, right), (right, left)):
            if not (isinstance(var, Var) and var.sort == _PENDING):
                continue
            if isinstance(other, Var) and other.sort == _PENDING:
                self.inference.union(var.name, other.name)
                continue
            sort = None if isinstance(other, (Num, Arith)) else term_sort(other, self.sig)
            if sort is None:
                self.inference.weak(var.name)
            else:
                self.inference.strong(var.name, sort)

    # --- formulas ---

    def formula(  # noqa: C901, PLR0911, PLR0912
        self, node: lark.Tree, scope: Mapping[str, Var]
    ) -> Formula:
        kind = node.data
        rec = self.formula
        if kind == "true":
            return TOP
        if kind == "false":
            return FALSUM
        if kind in {"name", "app"}:
            name = str(node.children[0])
            if name in self.sig.functions:
                self._report("sort", f"function {name} used as a formula", node)
            elif name not in self.sig.predicates:
                self._report("undeclared", f"undeclared predicate {name}", node)
            return Atom(name, self._args(node, scope))
        if kind in {"eq", "neq"} or kind in _CMP_OPS:
            left = self.term(node.children[0], scope)
            right = self.term(node.children[1], scope)
            if kind in _CMP_OPS:
                self._weak(left)
                self._weak(right)
                return Cmp(_CMP_OPS[kind], left, right)
            self._relate(left, right)
            return Eq(left, right) if kind == "eq" else neg(Eq(left, right))
        if kind == "and_":
            return And(tuple(rec(c, scope) for c in node.children))
        if kind == "or_":
            return Or(tuple(rec(c, scope) for c in node.children))
        if kind in {"and_n", "or_n"}:
            args = node.children[0].children if node.children else []
            members = tuple(rec(c, scope) for c in args)
            return And(members) if kind == "and_n" else Or(members)
        if kind == "implies":
            return Implies(rec(node.children[0], scope), rec(node.children[1], scope))
        if kind == "iff":
            return iff(rec(node.children[0], scope), rec(node.children[1], scope))
        if kind == "not_":
            return neg(rec(node.children[0], scope))
        if kind in {"forall_", "exists_"}:
            name, sort = str(node.children[0]), str(node.children[1])
            if not self.sig.has_sort(sort):
                self._report("undeclared", f"unknown sort {sort}", node.children[1])
            var = Var(name, sort)
            body = rec(node.children[2], {**scope, name: var})
            return Forall(var, body) if kind == "forall_" else Exists(var, body)
        if kind in _TERM_NODES:
            self._report("syntax", "expected a formula, found a term", node)
            return FALSUM
        self._report("syntax", f"unexpected {kind}", node)  # pragma: no cover
        return FALSUM  # pragma: no cover

    def variables(
        self, node: lark.Tree, fixed: Mapping[str, str] | None = None
    ) -> tuple[Var, ...]:
        """Resolve the sorts of the free variables seen so far."""
        out: list[Var] = []
        for name in self.order:
            if fixed is not None and name in fixed:
                out.append(Var(name, fixed[name]))
                continue
            sort, problem = self.inference.resolve(name)
            if sort is None:
                self._report("sort", problem, node)
                sort = INT.name
            out.append(Var(name, sort))
        return tuple(out)

    def close(self, formula: Formula, variables: tuple[Var, ...]) -> Formula:
        binding: dict[Var, Term] = {Var(v.name, _PENDING): v for v in variables}
        return map_terms(formula, lambda t: substitute_term(t, binding))


def _rule(builder: _Builder, node: lark.Tree) -> Rule:
    kind = node.data
    head: Formula = FALSUM
    bodies: list[lark.Tree] = []
    if kind in {"rule", "fact", "choice"}:
        head = builder.formula(node.children[0], {})
        if len(node.children) > 1:
            bodies = list(node.children[1].children)
    else:
        bodies = list(node.children[0].children)
    body = conj(builder.formula(b, {}) for b in bodies)
    variables = builder.variables(node)
    return Rule(
        builder.close(head, variables),
        builder.close(body, variables),
        variables,
        choice=kind == "choice",
    )


def parse_program(text: str) -> Program:
    """Parse a whole program.

    Raises:
        SyntaxDiagnosticsError: With every lexical, syntax, undeclared-symbol
            and sort error found, each carrying a :class:`SourceSpan`.

    """
    source = _Source(text)
    diagnostics = _Collector(source)
    trees: list[tuple[int, lark.Tree]] = []
    for offset, chunk in _split_statements(text):
        tree = _parse_chunk(offset, chunk, "statement", diagnostics)
        if tree is not None:
            trees.append((offset, tree))

    declarations = [(o, t) for o, t in trees if t.children[0].data.endswith(("_sort", "_decl"))]
    signature = _collect_declarations(declarations, diagnostics)

    rules: list[Rule] = []
    spans: list[tuple[int, int]] = []
    for offset, tree in trees:
        node = tree.children[0]
        if node.data not in {"rule", "fact", "constraint", "choice"}:
            continue
        builder = _Builder(signature, diagnostics, offset)
        rules.append(_rule(builder, node))
        spans.append((offset + node.meta.start_pos, offset + node.meta.end_pos))

    program = Program(signature, tuple(rules))
    if not diagnostics.items:
        for problem in check_well_sorted(program):
            if problem.rule_index is not None:
                start, end = spans[problem.rule_index]
            else:
                start = end = 0
            diagnostics.add("sort", f"{problem.message} in `{problem.subterm}`", start, end)
    if diagnostics.items:
        raise SyntaxDiagnosticsError(sorted(diagnostics.items, key=lambda d: d.span.start))
    return program


def parse_formula(
    text: str, signature: Signature, variables: Mapping[str, str] | None = None
) -> Formula:
    """Parse one formula; free variables take sorts from ``variables`` or are inferred."""
    source = _Source(text)
    diagnostics = _Collector(source)
    tree = _parse_chunk(0, text, "formula_only", diagnostics)
    formula: Formula = FALSUM
    if tree is not None:
        builder = _Builder(signature, diagnostics, 0)
        formula = builder.formula(tree.children[0], {})
        formula = builder.close(formula, builder.variables(tree, variables))
    if not diagnostics.items:
        for problem in check_formula(formula, signature):
            diagnostics.add("sort", f"{problem.message} in `{problem.subterm}`", 0, len(text))
    if diagnostics.items:
        raise SyntaxDiagnosticsError(diagnostics.items)
    return formula
