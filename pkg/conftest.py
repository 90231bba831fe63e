import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from backend.checks import NCP5_WITNESS, NCP6_WITNESS  # noqa: E402
from utils.config import set_max_n  # noqa: E402
from utils.notation import parse_chamber  # noqa: E402


@pytest.fixture(autouse=True)
def default_limits(monkeypatch):
    monkeypatch.delenv("NCPART_MAX_N", raising=False)
    set_max_n(None)
    yield
    set_max_n(None)


@pytest.fixture
def ncp5_pair():
    return tuple(parse_chamber(text) for text in NCP5_WITNESS)


@pytest.fixture
def ncp6_pair():
    return tuple(parse_chamber(text) for text in NCP6_WITNESS)
