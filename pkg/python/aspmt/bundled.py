# SPDX-License-Identifier: BSD-2-Clause
# Copyright (c) deftio llc

"""Bundled example program registry.

Maps short names (``"bucket"``, ``"gears"``, ...) to program files shipped
inside the package, so every CLI command accepts ``aspmt solve bucket`` as
well as a path.
"""

from __future__ import annotations

import dataclasses
import pathlib

from aspmt.errors import ProgramNotFound


@dataclasses.dataclass(frozen=True)
class ProgramInfo:
    """Metadata for a bundled example program."""

    name: str
    filename: str
    tight: bool
    description: str
    suggested: str = ""


PROGRAMS: dict[str, ProgramInfo] = {
    "bucket": ProgramInfo(
        name="bucket",
        filename="_programs/bucket.aspmt",
        tight=True,
        description="Leaking bucket that can be refilled to the maximum amount",
        suggested="--fix amount0=6",
    ),
    "gears": ProgramInfo(
        name="gears",
        filename="_programs/gears.aspmt",
        tight=True,
        description="Two gears with motors; reach surface speed 17 for gear 1",
        suggested="--horizon 1",
    ),
    "selfloop": ProgramInfo(
        name="selfloop",
        filename="_programs/selfloop.aspmt",
        tight=False,
        description="p :- p. The smallest program that is not tight",
    ),
    "office": ProgramInfo(
        name="office",
        filename="_programs/office.aspmt",
        tight=True,
        description="Inconsistent office assumptions over object constants; no stable model",
    ),
    "nested": ProgramInfo(
        name="nested",
        filename="_programs/nested.aspmt",
        tight=True,
        description="((p -> q) -> r) -> p; one dependency edge from p to r",
    ),
}


def resolve_program(name: str) -> ProgramInfo:
    """Look up a bundled program by name.

    Raises:
        ProgramNotFound: If *name* is not a bundled program.

    """
    try:
        return PROGRAMS[name]
    except KeyError:
        raise ProgramNotFound(name) from None


def list_programs() -> list[ProgramInfo]:
    """Return all bundled programs."""
    return list(PROGRAMS.values())


def get_program_path(name: str) -> pathlib.Path:
    """Return the absolute path of a bundled program file."""
    info = resolve_program(name)
    # _programs/ lives next to this file inside the installed package.
    package_dir = pathlib.Path(__file__).resolve().parent
    return package_dir / info.filename


def read_program(name: str) -> str:
    """Return the source text of a bundled program."""
    return get_program_path(name).read_text()
