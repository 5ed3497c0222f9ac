"""Smoke test: verify the package is importable and versioned."""

from __future__ import annotations


def test_import_aspmt() -> None:
    import aspmt

    assert hasattr(aspmt, "__name__")


def test_version_attribute() -> None:
    import aspmt

    assert isinstance(aspmt.__version__, str)
    assert aspmt.__version__ == "0.3.0"


def test_get_version_function() -> None:
    from aspmt import get_version

    assert get_version() == "0.3.0"


def test_all_names_resolve() -> None:
    import aspmt

    missing = [name for name in aspmt.__all__ if not hasattr(aspmt, name)]
    assert missing == []


def test_import_pipeline_entry_points() -> None:
    from aspmt import compile_program, load_program, verify_program

    assert callable(load_program)
    assert callable(compile_program)
    assert callable(verify_program)


def test_import_cli_main() -> None:
    from aspmt.cli.main import cli

    assert callable(cli)
