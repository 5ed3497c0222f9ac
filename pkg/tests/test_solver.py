"""Unit tests for solver.py: all subprocess calls are mocked."""

from __future__ import annotations

import subprocess
from typing import TYPE_CHECKING
from unittest.mock import patch

import pytest
from aspmt._logger import SolverLogger, read_history
from aspmt.smt import SmtScript, emit
from aspmt.solver import all_models, find_solver, parse_response, run_solver
from aspmt.types import Verdict

if TYPE_CHECKING:
    from pathlib import Path

    from aspmt.pipeline import CompiledProgram


def _done(stdout: str, returncode: int = 0) -> subprocess.CompletedProcess[str]:
    return subprocess.CompletedProcess(args=[], returncode=returncode, stdout=stdout, stderr="")


def _bucket_model(amount1: int, *, fillup: bool) -> str:
    flag = "true" if fillup else "false"
    return (
        "sat\n(model\n"
        "  (define-fun amount0 () Int 6)\n"
        f"  (define-fun amount1 () Int {amount1})\n"
        f"  (define-fun fillup () Bool {flag})\n)\n"
    )


@pytest.fixture
def script(bucket_compiled: CompiledProgram) -> SmtScript:
    return emit(bucket_compiled.theory, fixings={("amount0", ()): 6})


# --- parse_response ---


def test_parse_sat_with_model() -> None:
    result = parse_response("sat\n(model (define-fun p () Bool true))\n")
    assert result.verdict is Verdict.SAT
    assert result.ok
    assert result.model is not None
    assert result.model.assignment == {"p": True}


def test_parse_unsat_and_unknown() -> None:
    assert parse_response("unsat\n(error \"no model\")\n", exit_code=1).verdict is Verdict.UNSAT
    unknown = parse_response("unknown\n")
    assert unknown.verdict is Verdict.UNKNOWN
    assert not unknown.ok


@pytest.mark.parametrize(
    ("stdout", "exit_code", "detail"),
    [
        ("", 0, "empty response"),
        ("(error \"bad\")\n", 1, "unexpected response"),
        ("sat\n(model)\n", 2, "solver exited with status 2"),
        ("sat\n(model (define-fun\n", 0, "malformed model"),
    ],
)
def test_parse_failures(stdout: str, exit_code: int, detail: str) -> None:
    result = parse_response(stdout, "", exit_code)
    assert result.verdict is Verdict.FAILURE
    assert result.detail.startswith(detail)


# --- run_solver ---


def test_run_solver_sends_script(script: SmtScript) -> None:
    with patch("aspmt.solver.subprocess.run", return_value=_done("unsat\n")) as mock_run:
        result = run_solver(script, "z3 -in", timeout=5)
    assert result.verdict is Verdict.UNSAT
    args, kwargs = mock_run.call_args
    assert args[0] == ["z3", "-in"]
    assert kwargs["timeout"] == 5
    assert kwargs["input"].startswith("(set-option :produce-models true)\n")
    assert kwargs["input"].endswith("(check-sat)\n(get-model)\n")


def test_run_solver_timeout(script: SmtScript) -> None:
    error = subprocess.TimeoutExpired(cmd="z3", timeout=1)
    with patch("aspmt.solver.subprocess.run", side_effect=error):
        result = run_solver(script, "z3 -in", timeout=1)
    assert result.verdict is Verdict.FAILURE
    assert result.detail == "timed out after 1s"


def test_run_solver_missing_executable(script: SmtScript) -> None:
    with patch("aspmt.solver.subprocess.run", side_effect=FileNotFoundError("nosuch")):
        result = run_solver(script, "nosuch")
    assert result.verdict is Verdict.FAILURE
    assert result.detail.startswith("cannot run 'nosuch'")


def test_run_solver_logs_calls(script: SmtScript, tmp_path: Path) -> None:
    logger = SolverLogger(tmp_path)
    with patch("aspmt.solver.subprocess.run", return_value=_done("unsat\n")):
        run_solver(script, "z3 -in", logger=logger)
    (entry,) = read_history(tmp_path)
    assert entry["type"] == "solve"
    assert entry["verdict"] == "unsat"
    assert entry["symbols"] == 3
    (log_file,) = tmp_path.glob("solve-*.smt2")
    assert log_file.read_text().startswith("; command: z3 -in\n; verdict: unsat\n")


# --- all_models ---


def test_all_models_blocks_each_model(script: SmtScript) -> None:
    replies = [_done(_bucket_model(10, fillup=True)), _done(_bucket_model(5, fillup=False))]
    replies.append(_done("unsat\n"))
    with patch("aspmt.solver.subprocess.run", side_effect=replies) as mock_run:
        result = all_models(script, "z3 -in")
    assert result.verdict is Verdict.UNSAT
    assert not result.truncated
    assert result.calls == 3
    assert [m.assignment() for m in result.models] == [
        {"amount0": "6", "amount1": "5", "fillup": "false"},
        {"amount0": "6", "amount1": "10", "fillup": "true"},
    ]
    last_input = mock_run.call_args_list[2].kwargs["input"]
    assert "(assert (not (= amount1 10)))" in last_input
    assert "(assert (not (= amount1 5)))" in last_input


def test_all_models_with_projection(script: SmtScript) -> None:
    replies = [_done(_bucket_model(10, fillup=True)), _done("unsat\n")]
    with patch("aspmt.solver.subprocess.run", side_effect=replies) as mock_run:
        all_models(script, "z3 -in", projection=["amount1", "fillup"])
    second = mock_run.call_args_list[1].kwargs["input"]
    assert "(assert (not (and (= amount1 10) fillup)))" in second


def test_all_models_stops_at_cap(script: SmtScript) -> None:
    replies = [_done(_bucket_model(5, fillup=False)), _done(_bucket_model(10, fillup=True))]
    with patch("aspmt.solver.subprocess.run", side_effect=replies):
        result = all_models(script, "z3 -in", cap=1)
    assert result.truncated
    assert result.verdict is Verdict.SAT
    assert result.calls == 2
    assert [m.assignment()["amount1"] for m in result.models] == ["5"]


def test_all_models_at_cap_without_further_model(script: SmtScript) -> None:
    replies = [_done(_bucket_model(5, fillup=False)), _done("unsat\n")]
    with patch("aspmt.solver.subprocess.run", side_effect=replies):
        result = all_models(script, "z3 -in", cap=1)
    assert not result.truncated
    assert result.verdict is Verdict.UNSAT
    assert len(result.models) == 1


def test_all_models_failure_after_models(script: SmtScript) -> None:
    replies = [_done(_bucket_model(5, fillup=False)), _done('(error "segfault")\n', 1)]
    with patch("aspmt.solver.subprocess.run", side_effect=replies):
        result = all_models(script, "z3 -in")
    assert result.verdict is Verdict.FAILURE
    assert not result.truncated
    assert len(result.models) == 1
    assert result.detail.startswith("unexpected response")


def test_all_models_reports_failure(script: SmtScript) -> None:
    with patch("aspmt.solver.subprocess.run", return_value=_done("unknown\n")):
        result = all_models(script, "z3 -in")
    assert result.verdict is Verdict.UNKNOWN
    assert result.models == ()


def test_all_models_validates_arguments(script: SmtScript) -> None:
    with pytest.raises(ValueError, match="at least 1"):
        all_models(script, "z3 -in", cap=0)
    with pytest.raises(ValueError, match="unknown projection constants: nosuch"):
        all_models(script, "z3 -in", projection=["nosuch"])


# --- find_solver ---


def test_find_solver_prefers_environment(monkeypatch: pytest.MonkeyPatch) -> None:
    monkeypatch.setenv("ASPMT_SOLVER", "mysolver --smt2")
    assert find_solver() == "mysolver --smt2"


def test_find_solver_searches_path(monkeypatch: pytest.MonkeyPatch) -> None:
    monkeypatch.delenv("ASPMT_SOLVER", raising=False)
    with patch("aspmt.solver.shutil.which", side_effect=lambda name: name == "cvc5" or None):
        assert find_solver() == "cvc5 --lang smt2"
    with patch("aspmt.solver.shutil.which", return_value=None):
        assert find_solver() is None
