import shutil
from pathlib import Path

import pytest

REPO_ROOT = Path(__file__).resolve().parent.parent
FIXTURES = REPO_ROOT / "fixtures"
GOLDEN = Path(__file__).resolve().parent / "golden"


@pytest.fixture(scope="session")
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture(scope="session")
def golden_dir() -> Path:
    return GOLDEN


def fixture_project_copy(name: str, tmp_path: Path) -> Path:
    """Copy a fixture project into tmp so tests can mutate it."""
    target = tmp_path / name
    shutil.copytree(FIXTURES / "projects" / name, target)
    return target


def read_golden(name: str) -> str:
    return (GOLDEN / name).read_text(encoding="utf-8")
