# SPDX-License-Identifier: BSD-2-Clause
# Copyright (c) deftio llc

"""Rich output formatters for the CLI."""

from __future__ import annotations

import json
import sys
from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from collections.abc import Sequence

    from aspmt.bundled import ProgramInfo
    from aspmt.errors import NotTight
    from aspmt.interpretation import Interpretation
    from aspmt.pipeline import CompiledProgram
    from aspmt.tightness import TightnessResult
    from aspmt.types import StabilityVerdict, VerifyReport

from rich.console import Console
from rich.markup import escape
from rich.panel import Panel
from rich.table import Table

_console = Console()
_err_console = Console(stderr=True)


def _assignment_text(row: dict[str, str]) -> str:
    return " ".join(f"{k}={v}" for k, v in row.items())


def format_models(
    models: Sequence[Interpretation],
    projection: Sequence[str] | None,
    stats: dict[str, object],
    *,
    json_output: bool = False,
    title: str = "Stable models",
) -> None:
    """Print models as ``{"models": [...], "stats": {...}}`` or a rich table."""
    rows = [m.assignment(projection) for m in models]
    if json_output:
        click_echo_json({"models": rows, "stats": stats})
        return

    if not rows:
        _console.print("[yellow]No models.[/yellow]")
        return

    table = Table(title=title)
    table.add_column("#", style="dim", justify="right")
    table.add_column("Assignment", style="cyan")
    for index, row in enumerate(rows, start=1):
        table.add_row(str(index), escape(_assignment_text(row)))
    _console.print(table)
    if stats.get("truncated"):
        print_warning(f"stopped after {len(rows)} model(s); raise --cap to see more")


def format_stats(stats: dict[str, object]) -> None:
    """Print run statistics to stderr (``--verbose``)."""
    parts = []
    for key, value in stats.items():
        text = f"{value:.1f}" if isinstance(value, float) else str(value)
        parts.append(f"{key}={text}")
    _err_console.print(f"[dim]{' '.join(parts)}[/dim]")


def format_tightness(result: TightnessResult, *, json_output: bool = False) -> None:
    """Print dependency graph edges and the tightness verdict."""
    edges = result.graph.edge_list()
    if json_output:
        click_echo_json(
            {
                "tight": result.tight,
                "vertices": list(result.graph.vertices),
                "edges": [list(e) for e in edges],
                "cycle": list(result.cycle),
            }
        )
        return

    if edges:
        table = Table(title="Dependency Graph")
        table.add_column("From", style="cyan")
        table.add_column("To", style="cyan")
        table.add_column("Rules", style="dim")
        for c, d in edges:
            rules = sorted(
                {p.rule_index for p in result.graph.edges[c, d] if p.rule_index is not None}
            )
            table.add_row(c, d, ", ".join(str(r) for r in rules))
        _console.print(table)
    else:
        _console.print("[dim]No edges.[/dim]")

    if result.tight:
        print_success("Program is tight")
    else:
        cycle = escape(f"[{', '.join(result.cycle)}]")
        _console.print(f"[red]\u2717[/red] Not tight: cycle {cycle}")


def format_not_tight(err: NotTight) -> None:
    """Print the cycle that makes a program unsuitable for completion."""
    path = " -> ".join([*err.cycle, err.cycle[0]]) if err.cycle else ""
    lines = [
        f"Cycle: {path}",
        "\n[dim]Models of the completion of a program that is not tight need not be "
        "stable. Use 'aspmt enumerate' for the exact stable models.[/dim]",
    ]
    _err_console.print(Panel("\n".join(lines), title="[red]Not Tight[/red]", expand=False))


def format_completion(
    compiled: CompiledProgram, *, emit: str = "completion", json_output: bool = False
) -> None:
    """Print the Clark normal form, the completion or the forward/backward split."""
    from aspmt.printer import print_formula  # noqa: PLC0415

    clark = compiled.clark
    theory = compiled.theory
    if json_output:
        click_echo_json(
            {
                "definitions": {
                    n: print_formula(d.as_formula()) for n, d in clark.definitions.items()
                },
                "completion": {
                    n: print_formula(f) for n, f in theory.biconditionals.items()
                },
                "split": {
                    n: {"forward": print_formula(fw), "backward": print_formula(bw)}
                    for n, (fw, bw) in theory.split().items()
                },
                "constraints": [print_formula(c) for c in theory.constraints],
                "warnings": list(theory.warnings),
            }
        )
        return

    if emit == "cnf":
        for definition in clark.definitions.values():
            sys.stdout.write(print_formula(definition.as_formula()) + "\n")
    else:
        split = theory.split() if emit == "split" else {}
        for name, formula in theory.biconditionals.items():
            if name in split:
                forward, backward = split[name]
                sys.stdout.write(f"% {name}\n{print_formula(forward)}\n")
                sys.stdout.write(f"{print_formula(backward)}\n")
            else:
                sys.stdout.write(print_formula(formula) + "\n")
    for constraint in theory.constraints:
        sys.stdout.write(print_formula(constraint) + "\n")
    for warning in theory.warnings:
        print_warning(warning)


def format_stability(verdict: StabilityVerdict, *, json_output: bool = False) -> None:
    """Print a stability verdict and its witness."""
    witness = verdict.witness.assignment() if verdict.witness is not None else None
    if json_output:
        click_echo_json({"stable": verdict.stable, "model": verdict.model, "witness": witness})
        return

    if verdict.stable:
        print_success("Stable model")
    elif not verdict.model:
        _console.print("[red]\u2717[/red] Not a model of the program")
    else:
        _console.print("[red]\u2717[/red] Not stable")
        if witness is not None:
            _console.print(f"  smaller model of the reduct: {escape(_assignment_text(witness))}")


def format_verify(report: VerifyReport, *, json_output: bool = False) -> None:
    """Print the outcome of an oracle/SMT comparison."""
    stats: dict[str, object] = {"truncated": report.truncated}
    if report.oracle is not None:
        stats["oracle_candidates"] = report.oracle.candidates
        stats["oracle_ms"] = round(report.oracle.duration_ms, 1)
    if report.smt is not None:
        stats["solver_calls"] = report.smt.calls
    if json_output:
        click_echo_json(
            {
                "equal": report.equal,
                "projection": list(report.projection),
                "models": list(report.oracle_models),
                "smt_models": list(report.smt_models),
                "discrepancy": report.discrepancy,
                "missing_from": report.missing_from or None,
                "stats": stats,
            }
        )
        return

    count = len(report.oracle_models)
    if report.equal:
        print_success(f"{count} models, sets equal")
        return
    if report.discrepancy is not None:
        other = "oracle" if report.missing_from == "smt" else "SMT pipeline"
        _console.print(
            f"[red]\u2717[/red] Model found by the {other} only: "
            f"{escape(_assignment_text(report.discrepancy))}"
        )
    if report.truncated:
        print_warning(f"SMT enumeration stopped at the cap after {len(report.smt_models)} models")


def format_program_list(programs: Sequence[ProgramInfo], *, json_output: bool = False) -> None:
    """Print the bundled programs."""
    if json_output:
        import dataclasses  # noqa: PLC0415

        click_echo_json([dataclasses.asdict(p) for p in programs])
        return

    table = Table(title="Bundled Programs")
    table.add_column("Name", style="cyan")
    table.add_column("Tight")
    table.add_column("Try", style="dim")
    table.add_column("Description")
    for p in programs:
        tight = "[green]yes[/green]" if p.tight else "[yellow]no[/yellow]"
        table.add_row(p.name, tight, escape(p.suggested), p.description)
    _console.print(table)


def format_log_table(entries: list[dict[str, object]]) -> None:
    """Print history entries as a rich table."""
    table = Table(title="Log History")
    table.add_column("Type", style="cyan")
    table.add_column("Command / Program")
    table.add_column("Result")
    table.add_column("Duration")
    table.add_column("Timestamp", style="dim")

    for entry in entries:
        if entry.get("type") == "enumerate":
            subject = str(entry.get("program", ""))
            outcome = f"{entry.get('models', '')} model(s)"
        else:
            subject = str(entry.get("command", ""))
            outcome = str(entry.get("verdict", ""))
        style = {"sat": "green", "unsat": "yellow", "failure": "red"}.get(outcome, "")
        dur = entry.get("duration_ms")
        dur_str = f"{dur:.0f}ms" if isinstance(dur, (int, float)) else ""
        table.add_row(
            str(entry.get("type", "")),
            escape(subject[:60]),
            f"[{style}]{outcome}[/{style}]" if style else outcome,
            dur_str,
            str(entry.get("timestamp", "")),
        )

    _console.print(table)


def format_error(err: Exception) -> None:
    """Print an error as a rich panel with suggestions."""
    title, suggestion = _error_info(err)
    lines = [escape(str(err))]
    from aspmt.errors import SortError, SyntaxDiagnosticsError  # noqa: PLC0415

    if isinstance(err, (SyntaxDiagnosticsError, SortError)) and len(err.diagnostics) > 1:
        lines = [escape(str(d)) for d in err.diagnostics]
    if suggestion:
        lines.append(f"\n[dim]{suggestion}[/dim]")

    panel = Panel(
        "\n".join(lines),
        title=f"[red]{title}[/red]",
        expand=False,
    )
    _err_console.print(panel)


def _error_info(err: Exception) -> tuple[str, str]:  # noqa: PLR0911
    """Map an error to a title and suggestion string."""
    from aspmt.errors import (  # noqa: PLC0415
        CandidateCapExceeded,
        DecodeError,
        EmissionError,
        NormalizationError,
        ProgramNotFound,
        SolverError,
        SortError,
        SyntaxDiagnosticsError,
        UnboundedQuantifier,
    )

    if isinstance(err, SyntaxDiagnosticsError):
        return "Syntax Error", ""
    if isinstance(err, SortError):
        return "Sort Error", ""
    if isinstance(err, ProgramNotFound):
        return "Program Not Found", "Run 'aspmt examples' to see bundled programs."
    if isinstance(err, NormalizationError):
        return "Normalization Error", "Rule heads must be atoms or f(args) = value."
    if isinstance(err, UnboundedQuantifier):
        return "Unbounded Integer", "Pass --bounds lo..hi."
    if isinstance(err, CandidateCapExceeded):
        return "Search Too Large", "Narrow the bounds, fix more constants or --max-candidates."
    if isinstance(err, EmissionError):
        return "Emission Error", "Pass --bounds lo..hi or use --mode quantified."
    if isinstance(err, SolverError):
        return "Solver Error", "Set ASPMT_SOLVER or pass --solver, e.g. --solver 'z3 -in'."
    if isinstance(err, DecodeError):
        return "Decode Error", "The solver returned a value outside the declared sort."
    if isinstance(err, ValueError):
        return "Invalid Input", ""
    return "Error", ""


def print_success(msg: str) -> None:
    """Print a success message with a checkmark."""
    _console.print(f"[green]\u2713[/green] {msg}")


def print_warning(msg: str) -> None:
    """Print a warning to stderr."""
    _err_console.print(f"[yellow]warning:[/yellow] {escape(msg)}")


def click_echo_json(data: object) -> None:
    """Serialize data to JSON and echo to stdout."""
    sys.stdout.write(json.dumps(data, indent=2, default=str) + "\n")
