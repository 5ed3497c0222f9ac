# SPDX-License-Identifier: BSD-2-Clause
# Copyright (c) deftio llc

from __future__ import annotations

from importlib.metadata import version

from aspmt._config import AspmtConfig, load_config
from aspmt.bundled import ProgramInfo, list_programs, resolve_program
from aspmt.completion import CompletedTheory, complete, simplify, split_biconditional
from aspmt.errors import (
    AspmtError,
    CandidateCapExceeded,
    DecodeError,
    EmissionError,
    GroundingError,
    NormalizationError,
    NotTight,
    ProgramNotFound,
    SolverError,
    SortError,
    SubstitutionError,
    SyntaxDiagnosticsError,
    UnboundedQuantifier,
    UnevaluableAtom,
    UniverseMismatch,
)
from aspmt.grounder import Bounds, ground, ground_formula, reduct
from aspmt.horizon import unroll_steps
from aspmt.interpretation import Interpretation
from aspmt.normalize import ClarkProgram, Definition, rewrite_choice, to_clark_normal_form
from aspmt.oracle import (
    check_stability,
    enumerate_models,
    enumerate_stable_models,
    is_stable,
    less_than,
    run_oracle,
)
from aspmt.parser import parse_formula, parse_program
from aspmt.pipeline import CompiledProgram, compile_program, load_program, verify_program
from aspmt.printer import print_formula, print_program, print_term
from aspmt.smt import Mode, SmtScript, decode_model, emit
from aspmt.solver import all_models, find_solver, run_solver
from aspmt.sorts import check_well_sorted
from aspmt.syntax import Program, Rule, Signature, Sort, SortKind
from aspmt.tightness import TDependencyGraph, build_t_dependency_graph, check_program, is_tight
from aspmt.types import (
    AllModelsResult,
    OracleResult,
    SmtModel,
    SolverResult,
    StabilityVerdict,
    Verdict,
    VerifyReport,
)

__version__ = version("aspmt")


def get_version() -> str:
    """Return the aspmt package version string."""
    return __version__


__all__ = [
    "AllModelsResult",
    "AspmtConfig",
    "AspmtError",
    "Bounds",
    "CandidateCapExceeded",
    "ClarkProgram",
    "CompiledProgram",
    "CompletedTheory",
    "DecodeError",
    "Definition",
    "EmissionError",
    "GroundingError",
    "Interpretation",
    "Mode",
    "NormalizationError",
    "NotTight",
    "OracleResult",
    "Program",
    "ProgramInfo",
    "ProgramNotFound",
    "Rule",
    "Signature",
    "SmtModel",
    "SmtScript",
    "SolverError",
    "SolverResult",
    "Sort",
    "SortError",
    "SortKind",
    "StabilityVerdict",
    "SubstitutionError",
    "SyntaxDiagnosticsError",
    "TDependencyGraph",
    "UnboundedQuantifier",
    "UnevaluableAtom",
    "UniverseMismatch",
    "Verdict",
    "VerifyReport",
    "__version__",
    "all_models",
    "build_t_dependency_graph",
    "check_program",
    "check_stability",
    "check_well_sorted",
    "compile_program",
    "complete",
    "decode_model",
    "emit",
    "enumerate_models",
    "enumerate_stable_models",
    "find_solver",
    "get_version",
    "ground",
    "ground_formula",
    "is_stable",
    "is_tight",
    "less_than",
    "list_programs",
    "load_config",
    "load_program",
    "parse_formula",
    "parse_program",
    "print_formula",
    "print_program",
    "print_term",
    "reduct",
    "resolve_program",
    "rewrite_choice",
    "run_oracle",
    "run_solver",
    "simplify",
    "split_biconditional",
    "to_clark_normal_form",
    "unroll_steps",
    "verify_program",
]
