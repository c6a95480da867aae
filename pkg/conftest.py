"""
conftest.py

Shared fixtures. Sits at the repository root so that `app`, `cli` and
`inference` import from the tests without installing anything.
"""

import io
from dataclasses import dataclass
from pathlib import Path

import pytest
from rich.console import Console

from app import SharpenerApp
from tests.reference_tables import TWELVE_MONTHS


@dataclass
class CliResult:
    code: int
    stdout: str
    stderr: str


@pytest.fixture
def run_cli():
    """Run the app in-process and capture both of its streams"""
    def run(*argv: str) -> CliResult:
        stdout = io.StringIO()
        stderr = io.StringIO()
        console = Console(file=stderr, width=200, color_system=None,
                          highlight=False)
        app = SharpenerApp(stdout=stdout, console=console)
        code = app.run(list(argv))
        return CliResult(int(code), stdout.getvalue(), stderr.getvalue())
    return run


@pytest.fixture
def write_returns(tmp_path: Path):
    """Write the given text to a returns file and return its path"""
    def write(text: str, name: str = "returns.csv") -> str:
        path = tmp_path / name
        path.write_text(text, encoding="utf-8")
        return str(path)
    return write


@pytest.fixture
def twelve_months() -> list[float]:
    return list(TWELVE_MONTHS)
