import logging

import pytest

import logging_config
from config import config
from logging_config import setup_main_logging


@pytest.fixture
def restore_logging():
    yield
    setup_main_logging(level="INFO", log_dir=None, force_reset=True)


def test_level_defaults_to_config(monkeypatch, restore_logging):
    monkeypatch.setattr(config, "log_level", "DEBUG")
    monkeypatch.setattr(config, "log_dir", None)
    setup_main_logging(force_reset=True)
    assert logging.getLogger().level == logging.DEBUG


def test_log_dir_defaults_to_config(monkeypatch, tmp_path, restore_logging):
    monkeypatch.setattr(config, "log_level", "INFO")
    monkeypatch.setattr(config, "log_dir", str(tmp_path / "logs"))
    setup_main_logging(force_reset=True)
    assert logging_config.current_file_handler is not None
    assert list((tmp_path / "logs").glob("harmonic_info_*.log"))


def test_explicit_level_wins_over_config(monkeypatch, restore_logging):
    monkeypatch.setattr(config, "log_level", "DEBUG")
    monkeypatch.setattr(config, "log_dir", None)
    setup_main_logging(level="WARNING", force_reset=True)
    assert logging.getLogger().level == logging.WARNING


def test_unknown_level_falls_back_to_info(monkeypatch, restore_logging):
    monkeypatch.setattr(config, "log_dir", None)
    setup_main_logging(level="chatty", force_reset=True)
    assert logging.getLogger().level == logging.INFO
