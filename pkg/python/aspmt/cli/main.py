# SPDX-License-Identifier: BSD-2-Clause
# Copyright (c) deftio llc

"""CLI entry point for aspmt."""

from __future__ import annotations

import dataclasses
from pathlib import Path

import click

from aspmt import __version__
from aspmt._config import AspmtConfig, load_config


@dataclasses.dataclass
class CliContext:
    """Shared state passed through Click's context object."""

    config: AspmtConfig = dataclasses.field(default_factory=AspmtConfig)
    verbose: bool = False


@click.group()
@click.option("--verbose", "-v", is_flag=True, help="Print search and solver statistics.")
@click.version_option(version=__version__, prog_name="aspmt")
@click.pass_context
def cli(ctx: click.Context, *, verbose: bool) -> None:
    """Compile ASPMT programs to SMT-LIB and check them against a stable-model oracle."""
    ctx.ensure_object(dict)
    ctx.obj = CliContext(config=load_config(Path.cwd()), verbose=verbose)


# --- Register commands ---

from aspmt.cli._commands import (  # noqa: E402
    check_stable_cmd,
    check_tight_cmd,
    complete_cmd,
    enumerate_cmd,
    examples_cmd,
    logs_cmd,
    solve_cmd,
    verify_cmd,
)

cli.add_command(check_tight_cmd)
cli.add_command(complete_cmd)
cli.add_command(solve_cmd)
cli.add_command(enumerate_cmd)
cli.add_command(verify_cmd)
cli.add_command(check_stable_cmd)
cli.add_command(examples_cmd)
cli.add_command(logs_cmd)
