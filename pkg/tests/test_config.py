"""Unit tests for _config.py: configuration loading with precedence."""

from __future__ import annotations

import dataclasses
from typing import TYPE_CHECKING
from unittest.mock import patch

import pytest
from aspmt._config import AspmtConfig, _build_config, _merge_yaml, load_config

if TYPE_CHECKING:
    from pathlib import Path


@pytest.fixture(autouse=True)
def _no_solver_env(monkeypatch: pytest.MonkeyPatch) -> None:
    monkeypatch.delenv("ASPMT_SOLVER", raising=False)


def _write(root: Path, text: str) -> None:
    config_dir = root / ".aspmt"
    config_dir.mkdir(parents=True, exist_ok=True)
    (config_dir / "aspmt.yaml").write_text(text)


# --- Default config ---


def test_default_config_values() -> None:
    cfg = AspmtConfig()
    assert cfg.solver is None
    assert cfg.timeout == 60.0
    assert cfg.max_candidates == 10_000_000
    assert cfg.cap == 1000
    assert cfg.auto_log is False
    assert cfg.log_dir == ".aspmt/logs"


def test_config_is_frozen() -> None:
    cfg = AspmtConfig()
    with pytest.raises(dataclasses.FrozenInstanceError):
        cfg.cap = 5  # type: ignore[misc]


# --- load_config ---


def test_load_config_no_files_returns_defaults(tmp_path: Path) -> None:
    with patch("aspmt._config.Path.home", return_value=tmp_path):
        cfg = load_config(project_root=None)
    assert cfg == AspmtConfig()


def test_load_config_project_override(tmp_path: Path) -> None:
    project = tmp_path / "project"
    _write(project, "solver: cvc5 --lang smt2\ncap: 50\ntimeout: 2.5\n")

    with patch("aspmt._config.Path.home", return_value=tmp_path / "home"):
        cfg = load_config(project_root=project)

    assert cfg.solver == "cvc5 --lang smt2"
    assert cfg.cap == 50
    assert cfg.timeout == 2.5
    # Other defaults unchanged
    assert cfg.max_candidates == 10_000_000


def test_load_config_install_level_override(tmp_path: Path) -> None:
    _write(tmp_path, "max_candidates: 500\n")

    with patch("aspmt._config.Path.home", return_value=tmp_path):
        cfg = load_config(project_root=None)

    assert cfg.max_candidates == 500


def test_load_config_project_overrides_install(tmp_path: Path) -> None:
    home = tmp_path / "home"
    _write(home, "solver: z3 -in\ncap: 10\n")
    project = tmp_path / "project"
    _write(project, "cap: 20\n")

    with patch("aspmt._config.Path.home", return_value=home):
        cfg = load_config(project_root=project)

    assert cfg.solver == "z3 -in"
    assert cfg.cap == 20


def test_environment_overrides_files(tmp_path: Path, monkeypatch: pytest.MonkeyPatch) -> None:
    _write(tmp_path, "solver: z3 -in\n")
    monkeypatch.setenv("ASPMT_SOLVER", "yices-smt2")

    with patch("aspmt._config.Path.home", return_value=tmp_path):
        cfg = load_config(project_root=tmp_path)

    assert cfg.solver == "yices-smt2"


def test_empty_environment_value_is_ignored(
    tmp_path: Path, monkeypatch: pytest.MonkeyPatch
) -> None:
    monkeypatch.setenv("ASPMT_SOLVER", "")
    with patch("aspmt._config.Path.home", return_value=tmp_path):
        assert load_config().solver is None


def test_logging_section_is_flattened(tmp_path: Path) -> None:
    _write(tmp_path, "logging:\n  auto_log: true\n  log_dir: /var/tmp/aspmt\n")

    with patch("aspmt._config.Path.home", return_value=tmp_path / "home"):
        cfg = load_config(project_root=tmp_path)

    assert cfg.auto_log is True
    assert cfg.log_dir == "/var/tmp/aspmt"


# --- _merge_yaml ---


def test_merge_yaml_ignores_invalid_yaml(tmp_path: Path) -> None:
    path = tmp_path / "bad.yaml"
    path.write_text("cap: [1, 2\n")
    target: dict[str, object] = {"cap": 3}
    _merge_yaml(target, path)
    assert target == {"cap": 3}


def test_merge_yaml_ignores_non_mapping(tmp_path: Path) -> None:
    path = tmp_path / "list.yaml"
    path.write_text("- solver\n- z3\n")
    target: dict[str, object] = {}
    _merge_yaml(target, path)
    assert target == {}


# --- _build_config ---


def test_build_config_drops_unknown_keys() -> None:
    cfg = _build_config({"cap": 7, "colour": "blue"})
    assert cfg.cap == 7
    assert not hasattr(cfg, "colour")
