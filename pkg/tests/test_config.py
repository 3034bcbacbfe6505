"""Tests for the configuration system."""
import pytest
from typing import Any
from pathlib import Path
from src.config import AppConfig, BUDGET_ENV_VAR, get_config, resolve_budget, set_config, reload_config


@pytest.fixture
def test_config_file(tmp_path: Path):
    """Create a temporary test config file."""
    config_content = """
limits:
  max_group_order: 12
  cli_max_group_order: 8
  budget: 5000
truncation:
  d_bar: 4
  n_max: 3
tate:
  window: [-2, 2]
  max_stage_gap: 8
"""
    config_path = tmp_path / "test_config.yaml"
    config_path.write_text(config_content)
    return config_path


@pytest.fixture(autouse=True)
def no_budget_override(monkeypatch):
    """Keep a developer's MACKEYKIT_BUDGET out of these tests."""
    monkeypatch.delenv(BUDGET_ENV_VAR, raising=False)
    yield
    set_config(None)


def test_load_from_yaml(test_config_file: Any):
    """Test loading config from YAML file."""
    config = AppConfig.from_yaml(test_config_file)
    assert config.limits.max_group_order == 12
    assert config.limits.cli_max_group_order == 8
    assert config.budget == 5000
    assert config.truncation.d_bar == 4
    assert config.truncation.n_max == 3
    assert config.tate.window == (-2, 2)
    assert config.tate.max_stage_gap == 8


def test_load_from_default_yaml():
    """Test loading from default config.yaml."""
    set_config(None)
    config = AppConfig.from_yaml()
    assert config.limits.max_group_order == 24
    assert config.limits.cli_max_group_order == 12
    assert config.budget == 2_000_000
    assert config.truncation.d_bar == 5
    assert config.truncation.n_max == 4
    assert config.tate.window == (-3, 3)
    assert config.tate.max_stage_gap == 4
    assert config.logging.format == "text"


def test_missing_sections_use_defaults(tmp_path: Path):
    """An empty file gives the model defaults."""
    config_path = tmp_path / "empty.yaml"
    config_path.write_text("")
    config = AppConfig.from_yaml(config_path)
    assert config.truncation.resolution_length == 8
    assert config.logging.level == "WARNING"


def test_budget_from_environment(test_config_file: Any, monkeypatch):
    """MACKEYKIT_BUDGET overrides limits.budget."""
    monkeypatch.setenv(BUDGET_ENV_VAR, "1234")
    config = AppConfig.from_yaml(test_config_file)
    assert config.budget == 1234


def test_invalid_budget_environment(test_config_file: Any, monkeypatch):
    monkeypatch.setenv(BUDGET_ENV_VAR, "lots")
    with pytest.raises(ValueError):
        AppConfig.from_yaml(test_config_file)


def test_resolve_budget(test_config_file: Any):
    set_config(AppConfig.from_yaml(test_config_file))
    assert resolve_budget(None) == 5000
    assert resolve_budget(7) == 7


def test_global_config(test_config_file: Any):
    """Test global config singleton."""
    set_config(None)  # Reset
    config1 = get_config(test_config_file)
    config2 = get_config(test_config_file)
    assert config1 is config2  # Same instance


def test_set_and_get_config(test_config_file: Any):
    """Test setting and getting global config."""
    custom_config = AppConfig.from_yaml(test_config_file)
    set_config(custom_config)

    retrieved_config = get_config()
    assert retrieved_config is custom_config


def test_reload_config(tmp_path: Path):
    """Test reloading config from file."""
    config_path = tmp_path / "reload_config.yaml"
    config_path.write_text("limits:\n  budget: 100\n")

    config1 = get_config(config_path)
    assert config1.budget == 100

    config_path.write_text("limits:\n  budget: 200\n")

    config2 = reload_config(config_path)
    assert config2.budget == 200
    assert config2 is not config1


def test_missing_config_file():
    """Test that missing config file raises error."""
    set_config(None)
    with pytest.raises(FileNotFoundError):
        AppConfig.from_yaml(Path("/nonexistent/config.yaml"))


@pytest.mark.parametrize(
    "content",
    [
        "limits:\n  budget: 0\n",
        "truncation:\n  d_bar: 0\n",
        "tate:\n  window: [3, -3]\n",
        "tate:\n  max_stage_gap: 0\n",
        "logging:\n  format: xml\n",
    ],
)
def test_config_validation(tmp_path: Path, content: str):
    """Test that invalid config values are rejected."""
    config_path = tmp_path / "invalid.yaml"
    config_path.write_text(content)

    with pytest.raises(ValueError):
        AppConfig.from_yaml(config_path)


if __name__ == "__main__":
    # Run with pytest
    import sys
    sys.exit(pytest.main([__file__, "-v"]))
