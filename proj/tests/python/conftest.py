import os
import pathlib

import pytest

ROOT = pathlib.Path(__file__).resolve().parents[2]


@pytest.fixture
def examples():
    return ROOT / "data" / "examples"


@pytest.fixture
def fixtures():
    return ROOT / "data" / "fixtures"


@pytest.fixture
def cli():
    path = os.environ.get("STIFFID_CLI")
    if not path:
        pytest.skip("STIFFID_CLI not set")
    return path
