# SPDX-License-Identifier: BSD-2-Clause
# Copyright (c) deftio llc

"""Finite grounding, satisfaction and the reduct of ground formulas.

Quantifiers become set-conjunctions and set-disjunctions over the universe
of their sort; background-integer quantifiers range over ``Bounds``.
Intensional function symbols stay in the ground formula: ``amount1 = 5`` is
a ground atom, not a truth value.
"""

from __future__ import annotations

import dataclasses
import re
from typing import TYPE_CHECKING

from aspmt.errors import GroundingError, UnboundedQuantifier
from aspmt.interpretation import UNKNOWN, eval_atom
from aspmt.printer import print_formula
from aspmt.syntax import (
    And,
    Atom,
    Cmp,
    Const,
    Eq,
    Falsum,
    Forall,
    Implies,
    Num,
    Or,
    SortKind,
    atom_constants,
    free_variables,
    substitute,
)

if TYPE_CHECKING:
    from collections.abc import Callable, Iterable, Iterator

    from aspmt.interpretation import Interpretation, _Unknown
    from aspmt.syntax import AtomicFormula, Formula, Signature, Term, Value, Var


@dataclasses.dataclass(frozen=True)
class GFalse:
    pass


@dataclasses.dataclass(frozen=True)
class GAtom:
    atom: AtomicFormula


@dataclasses.dataclass(frozen=True)
class Conj:
    members: tuple[GroundFormula, ...]


@dataclasses.dataclass(frozen=True)
class Disj:
    members: tuple[GroundFormula, ...]


@dataclasses.dataclass(frozen=True)
class GImp:
    left: GroundFormula
    right: GroundFormula


GroundFormula = GFalse | GAtom | Conj | Disj | GImp

G_FALSE = GFalse()

_RANGE = re.compile(r"^\s*(?:([A-Z][A-Za-z0-9_]*)\s*=\s*)?(-?\d+)\s*\.\.\s*(-?\d+)\s*$")


@dataclasses.dataclass(frozen=True)
class Bounds:
    """Inclusive integer ranges for background-integer variables and constants.

    ``default`` applies to every integer variable without an entry of its own
    and to the values of integer-valued constants.
    """

    default: tuple[int, int] | None = None
    variables: dict[str, tuple[int, int]] = dataclasses.field(default_factory=dict)

    def __post_init__(self) -> None:
        for lo, hi in [*([self.default] if self.default else []), *self.variables.values()]:
            if lo > hi:
                msg = f"empty bounds {lo}..{hi}"
                raise ValueError(msg)

    @classmethod
    def parse(cls, texts: Iterable[str]) -> Bounds:
        """Build bounds from ``lo..hi`` and ``X=lo..hi`` strings.

        Raises:
            ValueError: If a string is malformed or describes an empty range.

        """
        default: tuple[int, int] | None = None
        variables: dict[str, tuple[int, int]] = {}
        for text in texts:
            match = _RANGE.match(text)
            if match is None:
                msg = f"bounds must look like lo..hi or X=lo..hi, got {text!r}"
                raise ValueError(msg)
            name, lo, hi = match.group(1), int(match.group(2)), int(match.group(3))
            if name is None:
                default = (lo, hi)
            else:
                variables[name] = (lo, hi)
        return cls(default, variables)

    def range_for(self, variable: str) -> tuple[int, int] | None:
        return self.variables.get(variable, self.default)


def _domain(var: Var, signature: Signature, bounds: Bounds | None) -> tuple[Value, ...]:
    sort = signature.sort(var.sort)
    if sort.kind is not SortKind.INTEGER:
        return sort.universe()
    found = bounds.range_for(var.name) if bounds is not None else None
    if found is None:
        raise UnboundedQuantifier(var.name)
    return tuple(range(found[0], found[1] + 1))


def _element(value: Value) -> Term:
    return Num(value) if isinstance(value, int) else Const(value)


def ground_formula(
    formula: Formula, signature: Signature, bounds: Bounds | None = None
) -> GroundFormula:
    """Ground a sentence over the universes of a signature."""
    free = free_variables(formula)
    if free:
        names = ", ".join(sorted(v.name for v in free))
        msg = f"cannot ground a formula with free variables {names}"
        raise GroundingError(msg)
    return _ground(formula, signature, bounds)


def _ground(formula: Formula, signature: Signature, bounds: Bounds | None) -> GroundFormula:
    if isinstance(formula, Falsum):
        return G_FALSE
    if isinstance(formula, (Atom, Eq, Cmp)):
        return GAtom(formula)
    if isinstance(formula, And):
        return Conj(tuple(_ground(m, signature, bounds) for m in formula.members))
    if isinstance(formula, Or):
        return Disj(tuple(_ground(m, signature, bounds) for m in formula.members))
    if isinstance(formula, Implies):
        left = _ground(formula.left, signature, bounds)
        return GImp(left, _ground(formula.right, signature, bounds))
    instances = tuple(
        _ground(substitute(formula.body, {formula.var: _element(v)}), signature, bounds)
        for v in _domain(formula.var, signature, bounds)
    )
    return Conj(instances) if isinstance(formula, Forall) else Disj(instances)


def ground(
    formula: Formula, interp: Interpretation, bounds: Bounds | None = None
) -> GroundFormula:
    """Ground a sentence with respect to the universes of an interpretation.

    Raises:
        GroundingError: If the formula has free variables.
        UnboundedQuantifier: If an integer quantifier has no bounds.

    """
    return ground_formula(formula, interp.signature, bounds)


def eval3(
    gf: GroundFormula,
    signature: Signature,
    lookup: Callable[[str, tuple[Value, ...]], Value | bool | _Unknown],
) -> bool | _Unknown:
    """Three-valued satisfaction; ``UNKNOWN`` only when an unassigned cell matters."""
    if isinstance(gf, GFalse):
        return False
    if isinstance(gf, GAtom):
        return eval_atom(gf.atom, signature, lookup)
    if isinstance(gf, GImp):
        left = eval3(gf.left, signature, lookup)
        if left is False:
            return True
        right = eval3(gf.right, signature, lookup)
        if right is True:
            return True
        if left is True and right is False:
            return False
        return UNKNOWN
    # a conjunction is decided by its first false member, a disjunction by its first true one
    decisive = isinstance(gf, Disj)
    result: bool | _Unknown = not decisive
    for member in gf.members:
        value = eval3(member, signature, lookup)
        if value is decisive:
            return decisive
        if value is UNKNOWN:
            result = UNKNOWN
    return result


def satisfies(interp: Interpretation, gf: GroundFormula) -> bool:
    """Classical satisfaction of a ground formula with background arithmetic.

    Raises:
        UnevaluableAtom: If an atom needs a value the interpretation lacks.

    """
    result = eval3(gf, interp.signature, interp.lookup)
    return result is True


def reduct(gf: GroundFormula, interp: Interpretation) -> GroundFormula:
    """Replace every subformula the interpretation falsifies by ``#false``."""
    if not satisfies(interp, gf):
        return G_FALSE
    if isinstance(gf, GAtom):
        return gf
    if isinstance(gf, Conj):
        return Conj(tuple(reduct(m, interp) for m in gf.members))
    if isinstance(gf, Disj):
        return Disj(tuple(reduct(m, interp) for m in gf.members))
    assert isinstance(gf, GImp)  # noqa: S101
    return GImp(reduct(gf.left, interp), reduct(gf.right, interp))


def _vacuous(gf: GroundFormula) -> bool:
    return isinstance(gf, GImp) and isinstance(gf.left, GFalse)


def prune_ground(gf: GroundFormula) -> GroundFormula:
    """Flatten nested conjunctions and drop ``#false -> H`` members from them."""
    if isinstance(gf, Conj):
        members: list[GroundFormula] = []
        for member in gf.members:
            pruned = prune_ground(member)
            parts = pruned.members if isinstance(pruned, Conj) else (pruned,)
            members.extend(p for p in parts if not _vacuous(p))
        return Conj(tuple(members))
    if isinstance(gf, Disj):
        return Disj(tuple(prune_ground(m) for m in gf.members))
    if isinstance(gf, GImp):
        return GImp(prune_ground(gf.left), prune_ground(gf.right))
    return gf


def top_members(gf: GroundFormula) -> tuple[GroundFormula, ...]:
    """Members of a top-level conjunction (the formula itself otherwise)."""
    return gf.members if isinstance(gf, Conj) else (gf,)


def ground_constants(gf: GroundFormula) -> frozenset[str]:
    return frozenset(_constants(gf))


def _constants(gf: GroundFormula) -> Iterator[str]:
    if isinstance(gf, GAtom):
        yield from atom_constants(gf.atom)
    elif isinstance(gf, (Conj, Disj)):
        for member in gf.members:
            yield from _constants(member)
    elif isinstance(gf, GImp):
        yield from _constants(gf.left)
        yield from _constants(gf.right)


# Binding strength, loosest first.
_IMP, _OR, _AND, _UNARY, _ATOM = range(5)


def format_ground(gf: GroundFormula) -> str:
    return _format(gf, _IMP)


def _format(gf: GroundFormula, context: int) -> str:
    if isinstance(gf, GFalse):
        return "#false"
    if isinstance(gf, GAtom):
        return print_formula(gf.atom)
    if isinstance(gf, GImp):
        if isinstance(gf.right, GFalse):
            return f"not {_format(gf.left, _UNARY)}"
        text = f"{_format(gf.left, _OR)} -> {_format(gf.right, _IMP)}"
        level = _IMP
    elif not gf.members:
        return "#true" if isinstance(gf, Conj) else "#false"
    elif isinstance(gf, Conj):
        text = " & ".join(_format(m, _UNARY) for m in gf.members)
        level = _AND
    else:
        text = " | ".join(_format(m, _AND) for m in gf.members)
        level = _OR
    return f"({text})" if level < context else text


def format_ground_rules(gf: GroundFormula) -> str:
    """One line per top-level conjunct; implications print as ``H <- G``."""
    lines = []
    for member in top_members(prune_ground(gf)):
        if isinstance(member, GImp) and not isinstance(member.right, GFalse):
            lines.append(f"{_format(member.right, _OR)} <- {_format(member.left, _OR)}")
        else:
            lines.append(_format(member, _IMP))
    return "\n".join(lines)
