# SPDX-License-Identifier: BSD-2-Clause
# Copyright (c) deftio llc

"""Configuration loading with install-level -> project-level -> environment precedence."""

from __future__ import annotations

import dataclasses
import os
from pathlib import Path
from typing import Any

import yaml

_CONFIG_DIRNAME = ".aspmt"
_CONFIG_FILENAME = "aspmt.yaml"


@dataclasses.dataclass(frozen=True)
class AspmtConfig:
    """Resolved aspmt configuration."""

    solver: str | None = None
    timeout: float = 60.0
    max_candidates: int = 10_000_000
    cap: int = 1000
    auto_log: bool = False
    log_dir: str = ".aspmt/logs"


def load_config(project_root: Path | None = None) -> AspmtConfig:
    """Load configuration with precedence: environment > project > install > defaults.

    1. Start with defaults
    2. Overlay install-level ``~/.aspmt/aspmt.yaml`` (if exists)
    3. Overlay project-level ``.aspmt/aspmt.yaml`` (if exists)
    4. Overlay ``ASPMT_SOLVER`` (if set)

    Command-line flags are applied by the CLI on top of the result.
    """
    overrides: dict[str, Any] = {}

    install_config = Path.home() / _CONFIG_DIRNAME / _CONFIG_FILENAME
    if install_config.is_file():
        _merge_yaml(overrides, install_config)

    if project_root is not None:
        project_config = project_root / _CONFIG_DIRNAME / _CONFIG_FILENAME
        if project_config.is_file():
            _merge_yaml(overrides, project_config)

    solver = os.environ.get("ASPMT_SOLVER")
    if solver:
        overrides["solver"] = solver

    return _build_config(overrides)


def _merge_yaml(target: dict[str, Any], path: Path) -> None:
    """Parse a YAML file and merge its values into *target*."""
    try:
        data = yaml.safe_load(path.read_text())
    except yaml.YAMLError:
        return
    if not isinstance(data, dict):
        return

    for key, value in data.items():
        if key == "logging" and isinstance(value, dict):
            # Flatten logging sub-keys into top-level config keys
            target.update(value)
        else:
            target[key] = value


def _build_config(overrides: dict[str, Any]) -> AspmtConfig:
    """Build an ``AspmtConfig`` from a dict of overrides."""
    field_names = {f.name for f in dataclasses.fields(AspmtConfig)}
    filtered = {k: v for k, v in overrides.items() if k in field_names}
    return AspmtConfig(**filtered)
