"""Unit tests for pipeline.py: compilation and verification (solver mocked)."""

from __future__ import annotations

from typing import TYPE_CHECKING
from unittest.mock import patch

import pytest
from aspmt.errors import NotTight, ProgramNotFound, SolverError
from aspmt.oracle import interpretation_from_texts, parse_fixings
from aspmt.pipeline import compile_program, load_program, read_source, verify_program
from aspmt.types import AllModelsResult, Verdict

if TYPE_CHECKING:
    from pathlib import Path

    from aspmt.interpretation import Interpretation
    from aspmt.pipeline import CompiledProgram

# --- Loading ---


def test_read_source_bundled() -> None:
    label, text = read_source("bucket")
    assert label == "bucket"
    assert "intensional amount1." in text


def test_read_source_file(tmp_path: Path) -> None:
    path = tmp_path / "p.aspmt"
    path.write_text("pred p.\nintensional p.\np.\n")
    label, text = read_source(str(path))
    assert label == str(path)
    assert text.startswith("pred p.")


def test_read_source_missing() -> None:
    with pytest.raises(ProgramNotFound, match="nosuch"):
        read_source("nosuch")


def test_load_program_unrolls_steps() -> None:
    program = load_program("gears", horizon=1)
    assert "m1speed_0" in program.signature.functions
    assert "m1speed" not in program.signature.functions


# --- Compilation ---


def test_compile_rejects_non_tight_program() -> None:
    program = load_program("selfloop")
    with pytest.raises(NotTight, match="cycle p -> p") as info:
        compile_program(program)
    assert info.value.cycle == ("p",)


def test_compile_non_tight_on_request() -> None:
    compiled = compile_program(load_program("selfloop"), require_tight=False)
    assert not compiled.tightness.tight
    assert list(compiled.theory.biconditionals) == ["p"]


def test_compile_stages(bucket_compiled: CompiledProgram) -> None:
    assert bucket_compiled.tightness.tight
    assert list(bucket_compiled.clark.definitions) == ["amount1"]
    assert bucket_compiled.theory.signature is bucket_compiled.program.signature


# --- Verification ---


def _bucket_models(compiled: CompiledProgram, *rows: list[str]) -> tuple[Interpretation, ...]:
    sig = compiled.program.signature
    return tuple(interpretation_from_texts(sig, row) for row in rows)


STABLE = (["amount0=6", "amount1=5"], ["amount0=6", "amount1=10", "fillup=true"])


def test_verify_equal(bucket_compiled: CompiledProgram) -> None:
    fixings = parse_fixings(["amount0=6"], bucket_compiled.program.signature)
    smt = AllModelsResult(_bucket_models(bucket_compiled, *STABLE), calls=3)
    with patch("aspmt.pipeline.all_models", return_value=smt) as mock_all:
        report = verify_program(bucket_compiled, "z3 -in", fixings=fixings)
    assert report.equal
    assert report.projection == ("amount0", "amount1", "fillup")
    assert report.oracle_models == (
        {"amount0": "6", "amount1": "5", "fillup": "false"},
        {"amount0": "6", "amount1": "10", "fillup": "true"},
    )
    assert mock_all.call_args.args[2] == ("amount0", "amount1", "fillup")


def test_verify_reports_model_missing_from_smt(bucket_compiled: CompiledProgram) -> None:
    fixings = parse_fixings(["amount0=6"], bucket_compiled.program.signature)
    smt = AllModelsResult(_bucket_models(bucket_compiled, STABLE[0]))
    with patch("aspmt.pipeline.all_models", return_value=smt):
        report = verify_program(bucket_compiled, "z3 -in", fixings=fixings)
    assert not report.equal
    assert report.missing_from == "smt"
    assert report.discrepancy == {"amount0": "6", "amount1": "10", "fillup": "true"}


def test_verify_reports_extra_smt_model(bucket_compiled: CompiledProgram) -> None:
    fixings = parse_fixings(["amount0=6"], bucket_compiled.program.signature)
    rows = (*STABLE, ["amount0=6", "amount1=8"])
    smt = AllModelsResult(_bucket_models(bucket_compiled, *rows))
    with patch("aspmt.pipeline.all_models", return_value=smt):
        report = verify_program(bucket_compiled, "z3 -in", fixings=fixings)
    assert report.missing_from == "oracle"
    assert report.discrepancy == {"amount0": "6", "amount1": "8", "fillup": "false"}


def test_verify_with_projection(bucket_compiled: CompiledProgram) -> None:
    fixings = parse_fixings(["amount0=6"], bucket_compiled.program.signature)
    smt = AllModelsResult(_bucket_models(bucket_compiled, *STABLE))
    with patch("aspmt.pipeline.all_models", return_value=smt):
        report = verify_program(bucket_compiled, "z3 -in", fixings=fixings, projection=["fillup"])
    assert report.equal
    assert report.oracle_models == ({"fillup": "false"}, {"fillup": "true"})


def test_truncated_smt_run_is_never_equal(bucket_compiled: CompiledProgram) -> None:
    fixings = parse_fixings(["amount0=6"], bucket_compiled.program.signature)
    smt = AllModelsResult(
        _bucket_models(bucket_compiled, STABLE[0]), truncated=True, verdict=Verdict.SAT
    )
    with patch("aspmt.pipeline.all_models", return_value=smt):
        report = verify_program(bucket_compiled, "z3 -in", fixings=fixings, cap=1)
    assert report.truncated
    assert report.discrepancy is None
    assert not report.equal


def test_verify_raises_on_unknown(bucket_compiled: CompiledProgram) -> None:
    smt = AllModelsResult((), verdict=Verdict.UNKNOWN, detail="incomplete")
    with (
        patch("aspmt.pipeline.all_models", return_value=smt),
        pytest.raises(SolverError, match="incomplete"),
    ):
        verify_program(bucket_compiled, "z3 -in", fixings={("amount0", ()): 6})


def test_verify_office_has_no_models() -> None:
    compiled = compile_program(load_program("office"))
    with patch("aspmt.pipeline.all_models", return_value=AllModelsResult(())):
        report = verify_program(compiled, "z3 -in")
    assert report.equal
    assert report.oracle_models == ()