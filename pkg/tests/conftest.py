# conftest.py - shared fixtures: isolated config and log, fixed seed, epsilon numbers
from fractions import Fraction

import pytest

from backend import app_logging, config
from backend.exact import EpsNumber


@pytest.fixture(autouse=True)
def isolated_config(tmp_path, monkeypatch):
    """Every test gets its own config.ini and app.log"""
    path = tmp_path / "config.ini"
    monkeypatch.setattr(config, "CONFIG_FILE", path)
    monkeypatch.setattr(app_logging, "LOG_FILE", str(tmp_path / "app.log"))
    return path


@pytest.fixture
def seed():
    return config.DEFAULT_SEED


@pytest.fixture
def eps():
    """eps("1/9", 1) -> 1/9 + e"""
    def make(const, coeff=1):
        return EpsNumber(Fraction(const), Fraction(coeff))
    return make
