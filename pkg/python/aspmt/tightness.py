# SPDX-License-Identifier: BSD-2-Clause
# Copyright (c) deftio llc

"""The t-dependency graph over intensional constants and the tightness check."""

from __future__ import annotations

import collections
import dataclasses
from typing import TYPE_CHECKING

from aspmt.normalize import program_formula
from aspmt.syntax import (
    And,
    Atom,
    Cmp,
    Eq,
    Exists,
    Forall,
    Implies,
    Or,
    atom_constants,
)

if TYPE_CHECKING:
    from collections.abc import Iterable, Iterator

    from aspmt.syntax import Formula, Program


def strictly_positive_constants(
    formula: Formula, intensional: Iterable[str] | None = None
) -> set[str]:
    """Constants with an occurrence outside the antecedent of every implication."""
    found: set[str] = set()
    for atom in _strictly_positive_atoms(formula):
        found |= atom_constants(atom)
    if intensional is not None:
        found &= set(intensional)
    return found


def _strictly_positive_atoms(formula: Formula) -> Iterator[Atom | Eq | Cmp]:
    if isinstance(formula, (Atom, Eq, Cmp)):
        yield formula
    elif isinstance(formula, (And, Or)):
        for member in formula.members:
            yield from _strictly_positive_atoms(member)
    elif isinstance(formula, Implies):
        yield from _strictly_positive_atoms(formula.right)
    elif isinstance(formula, (Forall, Exists)):
        yield from _strictly_positive_atoms(formula.body)


def _strictly_positive_implications(formula: Formula) -> Iterator[Implies]:
    if isinstance(formula, (And, Or)):
        for member in formula.members:
            yield from _strictly_positive_implications(member)
    elif isinstance(formula, Implies):
        yield formula
        yield from _strictly_positive_implications(formula.right)
    elif isinstance(formula, (Forall, Exists)):
        yield from _strictly_positive_implications(formula.body)


@dataclasses.dataclass(frozen=True)
class Provenance:
    """Where an edge comes from: the implication and, for programs, the rule index."""

    implication: Implies
    rule_index: int | None = None


@dataclasses.dataclass(frozen=True)
class TDependencyGraph:
    vertices: tuple[str, ...]
    edges: dict[tuple[str, str], tuple[Provenance, ...]]

    def successors(self, vertex: str) -> list[str]:
        return sorted(d for (c, d) in self.edges if c == vertex)

    def edge_list(self) -> list[tuple[str, str]]:
        return sorted(self.edges)


def build_t_dependency_graph(
    formula: Formula,
    intensional: Iterable[str],
    *,
    rule_index: int | None = None,
) -> TDependencyGraph:
    """Graph with an edge ``c -> d`` for each strictly positive implication ``G -> H``.

    ``c`` is strictly positive in ``H`` and ``d`` is strictly positive in ``G``.
    """
    vertices = tuple(intensional)
    edges: dict[tuple[str, str], list[Provenance]] = {}
    for implication in _strictly_positive_implications(formula):
        heads = strictly_positive_constants(implication.right, vertices)
        bodies = strictly_positive_constants(implication.left, vertices)
        for c in sorted(heads):
            for d in sorted(bodies):
                edges.setdefault((c, d), []).append(Provenance(implication, rule_index))
    return TDependencyGraph(vertices, {k: tuple(v) for k, v in sorted(edges.items())})


def program_dependency_graph(program: Program) -> TDependencyGraph:
    """Graph of a program with choice rules rewritten; provenance records rule indexes."""
    vertices = program.signature.intensional
    edges: dict[tuple[str, str], list[Provenance]] = {}
    for index, rule in enumerate(program.rules):
        single = type(program)(program.signature, (rule,))
        graph = build_t_dependency_graph(
            program_formula(single), vertices, rule_index=index
        )
        for edge, provenance in graph.edges.items():
            edges.setdefault(edge, []).extend(provenance)
    return TDependencyGraph(vertices, {k: tuple(v) for k, v in sorted(edges.items())})


@dataclasses.dataclass(frozen=True)
class TightnessResult:
    tight: bool
    graph: TDependencyGraph
    cycle: tuple[str, ...] = ()


def _has_cycle(graph: TDependencyGraph) -> bool:
    """Depth-first search with white/grey/black colouring."""
    state: dict[str, int] = dict.fromkeys(graph.vertices, 0)

    def visit(vertex: str) -> bool:
        state[vertex] = 1
        for succ in graph.successors(vertex):
            if state[succ] == 1 or (state[succ] == 0 and visit(succ)):
                return True
        state[vertex] = 2
        return False

    return any(state[v] == 0 and visit(v) for v in sorted(graph.vertices))


def _shortest_cycle_through(graph: TDependencyGraph, start: str) -> list[str] | None:
    parents: dict[str, str] = {}
    queue = collections.deque([start])
    seen = {start}
    while queue:
        vertex = queue.popleft()
        for succ in graph.successors(vertex):
            if succ == start:
                path = [vertex]
                while path[-1] != start:
                    path.append(parents[path[-1]])
                return path[::-1]
            if succ not in seen:
                seen.add(succ)
                parents[succ] = vertex
                queue.append(succ)
    return None


def shortest_cycle(graph: TDependencyGraph) -> tuple[str, ...]:
    """Lexicographically least among the shortest cycles, starting at its least vertex."""
    best: list[str] | None = None
    for vertex in sorted(graph.vertices):
        cycle = _shortest_cycle_through(graph, vertex)
        if cycle is None or min(cycle) != vertex:
            continue
        if best is None or (len(cycle), cycle) < (len(best), best):
            best = cycle
    return tuple(best or ())


def is_tight(formula: Formula, intensional: Iterable[str]) -> TightnessResult:
    graph = build_t_dependency_graph(formula, intensional)
    return _verdict(graph)


def check_program(program: Program) -> TightnessResult:
    return _verdict(program_dependency_graph(program))


def _verdict(graph: TDependencyGraph) -> TightnessResult:
    if not _has_cycle(graph):
        return TightnessResult(tight=True, graph=graph)
    return TightnessResult(tight=False, graph=graph, cycle=shortest_cycle(graph))


def to_dot(graph: TDependencyGraph, cycle: Iterable[str] = ()) -> str:
    """Render the graph in Graphviz DOT; edges on ``cycle`` are drawn red."""
    on_cycle = list(cycle)
    cycle_edges = {
        (on_cycle[i], on_cycle[(i + 1) % len(on_cycle)]) for i in range(len(on_cycle))
    }
    lines = ["digraph tdep {"]
    lines.extend(f'  "{v}";' for v in graph.vertices)
    for c, d in graph.edge_list():
        style = " [color=red]" if (c, d) in cycle_edges else ""
        lines.append(f'  "{c}" -> "{d}"{style};')
    lines.append("}")
    return "\n".join(lines) + "\n"
