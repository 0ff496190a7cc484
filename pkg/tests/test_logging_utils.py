import logging

import pytest

from tameforge.logging_utils import LOG_FILENAME, get_logger, setup_logging


def test_setup_logging_writes_file(tmp_path, restore_root_logger):
    log_dir = tmp_path / "logs"
    logger = setup_logging(str(log_dir), "debug", console=False)
    assert logger.level == logging.DEBUG
    assert len(logger.handlers) == 1
    get_logger("tameforge.test").info("tower recovered")
    for handler in logger.handlers:
        handler.flush()
    text = (log_dir / LOG_FILENAME).read_text(encoding="utf-8")
    assert "INFO tameforge.test tower recovered" in text


def test_setup_logging_replaces_handlers(tmp_path, restore_root_logger):
    setup_logging(str(tmp_path), "INFO", console=True)
    logger = setup_logging(str(tmp_path), "INFO", console=True)
    assert len(logger.handlers) == 2


def test_setup_logging_requires_dir():
    with pytest.raises(ValueError):
        setup_logging("")


def test_get_logger_requires_name():
    with pytest.raises(ValueError):
        get_logger("")
