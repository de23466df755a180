import os
import pathlib

import pytest

REPO_ROOT = pathlib.Path(__file__).resolve().parents[2]


@pytest.fixture(scope="session")
def cli_path() -> str:
    path = os.environ.get("HODOKIT_CLI", str(REPO_ROOT / "build" / "tools" / "hodokit"))
    if not os.path.exists(path):
        pytest.skip(f"hodokit CLI not found at {path}")
    return path


@pytest.fixture(scope="session")
def golden_dir() -> pathlib.Path:
    return pathlib.Path(os.environ.get("HODOKIT_GOLDEN_DIR", REPO_ROOT / "tests" / "golden"))


@pytest.fixture(scope="session")
def schema_dir() -> pathlib.Path:
    return pathlib.Path(os.environ.get("HODOKIT_SCHEMA_DIR", REPO_ROOT / "schemas"))
