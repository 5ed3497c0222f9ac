"""Shared fixtures for aspmt tests."""

from __future__ import annotations

import os
import shlex
import shutil

import pytest
from aspmt.bundled import read_program
from aspmt.parser import parse_program
from aspmt.pipeline import CompiledProgram, compile_program
from aspmt.syntax import Program


def _find_solver() -> str | None:
    """Detect an SMT solver the differential tests can drive."""
    explicit = os.environ.get("ASPMT_SOLVER")
    if explicit and shutil.which(shlex.split(explicit)[0]):
        return explicit
    if shutil.which("z3"):
        return "z3 -in"
    if shutil.which("cvc5"):
        return "cvc5 --lang smt2"
    return None


SOLVER_COMMAND = _find_solver()
HAS_SOLVER = SOLVER_COMMAND is not None

requires_solver = pytest.mark.skipif(
    not HAS_SOLVER,
    reason="No SMT solver found (set ASPMT_SOLVER or install z3 or cvc5)",
)


@pytest.fixture
def solver_command() -> str:
    """Return the detected solver command line, or skip the test."""
    if SOLVER_COMMAND is None:
        pytest.skip("No SMT solver found")
    return SOLVER_COMMAND


@pytest.fixture
def bucket() -> Program:
    return parse_program(read_program("bucket"))


@pytest.fixture
def bucket_compiled(bucket: Program) -> CompiledProgram:
    return compile_program(bucket)
