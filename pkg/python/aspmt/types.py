# SPDX-License-Identifier: BSD-2-Clause
# Copyright (c) deftio llc

from __future__ import annotations

import dataclasses
import enum
from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from aspmt.interpretation import Interpretation


class Verdict(enum.Enum):
    """Outcome of one solver call."""

    SAT = "sat"
    UNSAT = "unsat"
    UNKNOWN = "unknown"
    FAILURE = "failure"


@dataclasses.dataclass(frozen=True)
class SmtModel:
    """Values the solver assigned to declared symbols."""

    assignment: dict[str, int | bool] = dataclasses.field(default_factory=dict)


@dataclasses.dataclass(frozen=True)
class SolverResult:
    """Result of running one SMT-LIB script through an external solver."""

    verdict: Verdict
    model: SmtModel | None = None
    stdout: str = ""
    stderr: str = ""
    exit_code: int | None = None
    duration_ms: float = 0.0
    detail: str = ""

    @property
    def ok(self) -> bool:
        """Return True for a definite sat or unsat answer."""
        return self.verdict in (Verdict.SAT, Verdict.UNSAT)


@dataclasses.dataclass(frozen=True)
class AllModelsResult:
    """Models found by repeated solving with blocking assertions."""

    models: tuple[Interpretation, ...]
    truncated: bool = False
    verdict: Verdict = Verdict.UNSAT
    calls: int = 0
    detail: str = ""


@dataclasses.dataclass(frozen=True)
class OracleResult:
    """Stable models found by exhaustive search, with search statistics."""

    models: tuple[Interpretation, ...]
    candidates: int = 0
    classical_models: int = 0
    duration_ms: float = 0.0


@dataclasses.dataclass(frozen=True)
class StabilityVerdict:
    """Whether an interpretation is stable; ``witness`` is a smaller model of the reduct."""

    stable: bool
    model: bool
    witness: Interpretation | None = None


@dataclasses.dataclass(frozen=True)
class VerifyReport:
    """Comparison of projected model sets from the oracle and the SMT pipeline."""

    projection: tuple[str, ...]
    oracle_models: tuple[dict[str, str], ...]
    smt_models: tuple[dict[str, str], ...]
    truncated: bool = False
    discrepancy: dict[str, str] | None = None
    missing_from: str = ""
    oracle: OracleResult | None = None
    smt: AllModelsResult | None = None

    @property
    def equal(self) -> bool:
        return not self.truncated and self.discrepancy is None
