import logging
import random
from pathlib import Path

import pytest

from tameforge.config import resolve_settings

REPO_ROOT = Path(__file__).resolve().parents[1]
DATA_DIR = REPO_ROOT / "data"


@pytest.fixture
def data_dir() -> Path:
    return DATA_DIR


@pytest.fixture
def malformed_dir() -> Path:
    return DATA_DIR / "malformed"


@pytest.fixture
def rng() -> random.Random:
    return random.Random(1234)


@pytest.fixture
def settings(tmp_path, monkeypatch):
    monkeypatch.delenv("TAMEFORGE_MAX_ELEMENTS", raising=False)
    monkeypatch.setenv("TAMEFORGE_LOG_DIR", str(tmp_path / "logs"))
    return resolve_settings({})


@pytest.fixture
def restore_root_logger():
    root = logging.getLogger()
    handlers = list(root.handlers)
    level = root.level
    yield
    for handler in list(root.handlers):
        root.removeHandler(handler)
        handler.close()
    for handler in handlers:
        root.addHandler(handler)
    root.setLevel(level)
