# SPDX-License-Identifier: BSD-2-Clause
# Copyright (c) deftio llc

"""CLI command implementations."""

from __future__ import annotations

from typing import TYPE_CHECKING

import click

from aspmt.cli._run import RunConfig, run

if TYPE_CHECKING:
    from aspmt.cli.main import CliContext


def _split_names(
    _ctx: click.Context, _param: click.Parameter, values: tuple[str, ...]
) -> tuple[str, ...]:
    """Accept both ``--project a,b`` and a repeated ``--project``."""
    return tuple(name.strip() for value in values for name in value.split(",") if name.strip())


_json_option = click.option("--json", "json_output", is_flag=True, help="Output as JSON.")
_horizon_option = click.option(
    "--horizon",
    type=click.IntRange(min=0),
    default=None,
    help="Last step of the 'step' sort (regenerates step-indexed constants).",
)
_bounds_option = click.option(
    "--bounds",
    multiple=True,
    metavar="[X=]LO..HI",
    help="Range for integer values, or for one variable X. Repeatable.",
)
_fix_option = click.option(
    "--fix",
    "fixings",
    multiple=True,
    metavar="NAME[(ARGS)]=VALUE",
    help="Fix a constant's value. Repeatable.",
)
_project_option = click.option(
    "--project",
    "projection",
    multiple=True,
    metavar="NAME[,NAME...]",
    callback=_split_names,
    help="Constants to report and compare models on. Comma-separated or repeatable.",
)
_mode_option = click.option(
    "--mode",
    type=click.Choice(["expanded", "quantified"]),
    default="expanded",
    show_default=True,
    help="Instantiate residual quantifiers or keep them in the script.",
)
_quantified_option = click.option(
    "--quantified", is_flag=True, help="Shorthand for --mode quantified."
)
_log_option = click.option(
    "--log", "log", is_flag=True, help="Record solver scripts and runs in the log directory."
)


def _get_ctx(ctx: click.Context) -> CliContext:
    """Extract the CliContext from Click's context object."""
    return ctx.obj  # type: ignore[no-any-return]


def _log_dir(cli_ctx: CliContext, *, log: bool) -> str | None:
    return cli_ctx.config.log_dir if log or cli_ctx.config.auto_log else None


def _finish(config: RunConfig) -> None:
    raise SystemExit(run(config))


@click.command("check-tight")
@click.argument("program")
@_horizon_option
@click.option("--dot", is_flag=True, help="Print the dependency graph in Graphviz DOT.")
@_json_option
@click.pass_context
def check_tight_cmd(
    ctx: click.Context, program: str, horizon: int | None, *, dot: bool, json_output: bool
) -> None:
    """Build the dependency graph and report whether PROGRAM is tight (exit 2 if not)."""
    cli_ctx = _get_ctx(ctx)
    _finish(
        RunConfig(
            "check-tight",
            program,
            horizon=horizon,
            dot=dot,
            json_output=json_output,
            verbose=cli_ctx.verbose,
        )
    )


@click.command("complete")
@click.argument("program")
@_horizon_option
@click.option(
    "--emit",
    type=click.Choice(["completion", "split", "cnf", "smt"]),
    default="completion",
    show_default=True,
    help="What to print: biconditionals, their forward/backward split, "
    "the Clark normal form, or an SMT-LIB script.",
)
@click.option("--smt", is_flag=True, help="Shorthand for --emit smt.")
@_mode_option
@_quantified_option
@_bounds_option
@_fix_option
@_json_option
@click.pass_context
def complete_cmd(  # noqa: PLR0913
    ctx: click.Context,
    program: str,
    horizon: int | None,
    emit: str,
    mode: str,
    bounds: tuple[str, ...],
    fixings: tuple[str, ...],
    *,
    smt: bool,
    quantified: bool,
    json_output: bool,
) -> None:
    """Print the completion of PROGRAM."""
    cli_ctx = _get_ctx(ctx)
    _finish(
        RunConfig(
            "complete",
            program,
            horizon=horizon,
            emit="smt" if smt else emit,
            mode="quantified" if quantified else mode,
            bounds=bounds,
            fixings=fixings,
            json_output=json_output,
            verbose=cli_ctx.verbose,
        )
    )


@click.command("solve")
@click.argument("program")
@_horizon_option
@_bounds_option
@_fix_option
@click.option("--solver", default=None, help="SMT solver command line, e.g. 'z3 -in'.")
@click.option("--all", "all_models", is_flag=True, help="Enumerate every model.")
@_project_option
@click.option("--cap", type=click.IntRange(min=1), default=None, help="Stop --all after N models.")
@click.option("--timeout", type=float, default=None, help="Seconds per solver call.")
@_mode_option
@_quantified_option
@_log_option
@_json_option
@click.pass_context
def solve_cmd(  # noqa: PLR0913
    ctx: click.Context,
    program: str,
    horizon: int | None,
    bounds: tuple[str, ...],
    fixings: tuple[str, ...],
    solver: str | None,
    projection: tuple[str, ...],
    cap: int | None,
    timeout: float | None,
    mode: str,
    *,
    all_models: bool,
    quantified: bool,
    log: bool,
    json_output: bool,
) -> None:
    """Solve the completion of a tight PROGRAM with an SMT solver."""
    cli_ctx = _get_ctx(ctx)
    cfg = cli_ctx.config
    _finish(
        RunConfig(
            "solve",
            program,
            horizon=horizon,
            bounds=bounds,
            fixings=fixings,
            solver=solver or cfg.solver,
            all_models=all_models,
            projection=projection or None,
            cap=cap or cfg.cap,
            timeout=timeout or cfg.timeout,
            mode="quantified" if quantified else mode,
            log_dir=_log_dir(cli_ctx, log=log),
            json_output=json_output,
            verbose=cli_ctx.verbose,
        )
    )


@click.command("enumerate")
@click.argument("program")
@_horizon_option
@_bounds_option
@_fix_option
@_project_option
@click.option(
    "--max-candidates", type=click.IntRange(min=1), default=None, help="Search node limit."
)
@click.option("--jobs", type=click.IntRange(min=1), default=1, help="Worker processes.")
@_log_option
@_json_option
@click.pass_context
def enumerate_cmd(  # noqa: PLR0913
    ctx: click.Context,
    program: str,
    horizon: int | None,
    bounds: tuple[str, ...],
    fixings: tuple[str, ...],
    projection: tuple[str, ...],
    max_candidates: int | None,
    jobs: int,
    *,
    log: bool,
    json_output: bool,
) -> None:
    """Enumerate the stable models of PROGRAM by exhaustive search."""
    cli_ctx = _get_ctx(ctx)
    _finish(
        RunConfig(
            "enumerate",
            program,
            horizon=horizon,
            bounds=bounds,
            fixings=fixings,
            projection=projection or None,
            max_candidates=max_candidates or cli_ctx.config.max_candidates,
            jobs=jobs,
            log_dir=_log_dir(cli_ctx, log=log),
            json_output=json_output,
            verbose=cli_ctx.verbose,
        )
    )


@click.command("verify")
@click.argument("program")
@_horizon_option
@_bounds_option
@_fix_option
@click.option("--solver", default=None, help="SMT solver command line, e.g. 'z3 -in'.")
@_project_option
@click.option("--cap", type=click.IntRange(min=1), default=None, help="SMT model limit.")
@click.option("--timeout", type=float, default=None, help="Seconds per solver call.")
@click.option(
    "--max-candidates", type=click.IntRange(min=1), default=None, help="Search node limit."
)
@click.option("--jobs", type=click.IntRange(min=1), default=1, help="Worker processes.")
@_log_option
@_json_option
@click.pass_context
def verify_cmd(  # noqa: PLR0913
    ctx: click.Context,
    program: str,
    horizon: int | None,
    bounds: tuple[str, ...],
    fixings: tuple[str, ...],
    solver: str | None,
    projection: tuple[str, ...],
    cap: int | None,
    timeout: float | None,
    max_candidates: int | None,
    jobs: int,
    *,
    log: bool,
    json_output: bool,
) -> None:
    """Compare oracle stable models with SMT models of the completion (exit 0 iff equal)."""
    cli_ctx = _get_ctx(ctx)
    cfg = cli_ctx.config
    _finish(
        RunConfig(
            "verify",
            program,
            horizon=horizon,
            bounds=bounds,
            fixings=fixings,
            solver=solver or cfg.solver,
            projection=projection or None,
            cap=cap or cfg.cap,
            timeout=timeout or cfg.timeout,
            max_candidates=max_candidates or cfg.max_candidates,
            jobs=jobs,
            log_dir=_log_dir(cli_ctx, log=log),
            json_output=json_output,
            verbose=cli_ctx.verbose,
        )
    )


@click.command("check-stable")
@click.argument("program")
@click.option(
    "--assign",
    multiple=True,
    metavar="NAME[(ARGS)]=VALUE",
    help="Value of one cell; unlisted predicate cells are false. Repeatable.",
)
@_horizon_option
@_bounds_option
@click.option(
    "--max-candidates", type=click.IntRange(min=1), default=None, help="Search node limit."
)
@_json_option
@click.pass_context
def check_stable_cmd(  # noqa: PLR0913
    ctx: click.Context,
    program: str,
    assign: tuple[str, ...],
    horizon: int | None,
    bounds: tuple[str, ...],
    max_candidates: int | None,
    *,
    json_output: bool,
) -> None:
    """Decide whether an interpretation is a stable model of PROGRAM (exit 1 if not)."""
    cli_ctx = _get_ctx(ctx)
    _finish(
        RunConfig(
            "check-stable",
            program,
            assign=assign,
            horizon=horizon,
            bounds=bounds,
            max_candidates=max_candidates or cli_ctx.config.max_candidates,
            json_output=json_output,
            verbose=cli_ctx.verbose,
        )
    )


@click.command("examples")
@_json_option
def examples_cmd(*, json_output: bool) -> None:
    """List bundled example programs."""
    _finish(RunConfig("examples", json_output=json_output))


@click.command("logs")
@click.option("--last", "last_n", type=int, default=10, help="Number of entries to show.")
@click.option(
    "--type",
    "entry_type",
    default=None,
    help="Filter by entry type (e.g. 'solve', 'enumerate').",
)
@_json_option
@click.pass_context
def logs_cmd(
    ctx: click.Context, last_n: int, entry_type: str | None, *, json_output: bool
) -> None:
    """View solver and oracle history from history.jsonl."""
    cli_ctx = _get_ctx(ctx)
    _finish(
        RunConfig(
            "logs",
            log_dir=cli_ctx.config.log_dir,
            last=last_n,
            entry_type=entry_type,
            json_output=json_output,
        )
    )
