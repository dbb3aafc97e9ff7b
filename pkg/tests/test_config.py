"""Tests for environment-driven configuration."""
import pytest

from dfk.config import HARD_LIMITS, Config
from dfk.errors import ConfigError, DFKError


@pytest.fixture(autouse=True)
def clean_env(monkeypatch):
    for key in ("DFK_MAX_BOUND", "DFK_SEED", "DFK_NO_TIMESTAMP"):
        monkeypatch.delenv(key, raising=False)


def test_env_values_are_converted(monkeypatch):
    """Integers and the timestamp switch are read from the environment."""
    monkeypatch.setenv("DFK_MAX_BOUND", "6")
    monkeypatch.setenv("DFK_SEED", "42")
    monkeypatch.setenv("DFK_NO_TIMESTAMP", "yes")

    config = Config()

    assert config.get('max_bound') == 6
    assert config.get('seed') == 42
    assert config.get('no_timestamp') is True
    assert config.limit('frame_tokens') == 6
    assert config.limit('exhaustive_universe') == HARD_LIMITS['exhaustive_universe']


def test_explicit_values_win_over_env(monkeypatch):
    monkeypatch.setenv("DFK_MAX_BOUND", "6")
    config = Config({'max_bound': None})
    assert config.limit('poset_elements') == HARD_LIMITS['poset_elements']


@pytest.mark.parametrize("key", ["DFK_MAX_BOUND", "DFK_SEED"])
def test_non_integer_env_value(monkeypatch, key):
    """A bad integer names the variable instead of leaking a bare ValueError."""
    monkeypatch.setenv(key, "lots")

    with pytest.raises(ConfigError) as info:
        Config()

    assert key in str(info.value)
    assert info.value.witness == (key, "lots")
    assert isinstance(info.value, DFKError)
