"""Tests for settings management."""

from rgglab.core.errors import ConfigError, InvalidParameterError, RgglabError
from rgglab.core.settings import ApiSettings, Settings, get_settings


def test_settings_defaults():
    """Settings() is complete and the API is disabled."""
    settings = Settings()
    assert settings.quadrature.min_nodes == 256
    assert settings.spectrum.kmax == 40
    assert settings.spectrum.kmax_cap == 200
    assert settings.run.cell_timeout == 600.0
    assert settings.run.workers == 1
    assert not settings.is_api_enabled()


def test_api_enabled_with_section():
    """An api section switches the HTTP surface on."""
    settings = Settings(api=ApiSettings())
    assert settings.is_api_enabled()
    assert settings.api is not None
    assert settings.api.max_n == 512
    assert settings.api.max_trials == 500


def test_environment_is_ignored(monkeypatch):
    """Only init arguments are read."""
    monkeypatch.setenv("RUN__WORKERS", "8")
    monkeypatch.setenv("API", "{}")
    settings = Settings()
    assert settings.run.workers == 1
    assert settings.api is None


def test_get_settings_is_cached():
    """The default instance is shared."""
    assert get_settings() is get_settings()


def test_errors_subclass_builtins():
    """Domain errors can be caught as their builtin counterparts."""
    assert issubclass(InvalidParameterError, ValueError)
    assert issubclass(InvalidParameterError, RgglabError)


def test_config_error_lists_problems_in_line_order():
    """Problems are sorted by line and all appear in the message."""
    err = ConfigError([(5, "bad alpha"), (2, "unknown key 'x'"), (0, "no seed")])
    assert [line for line, _ in err.problems] == [0, 2, 5]
    message = str(err)
    assert "line 2: unknown key 'x'" in message
    assert "line 5: bad alpha" in message
    assert "no seed" in message
