import os
import yaml
from pathlib import Path
from typing import Literal, Optional, Tuple
from pydantic import BaseModel, Field, field_validator
from dotenv import load_dotenv

# Load environment variables from .env file
load_dotenv()

BUDGET_ENV_VAR = "MACKEYKIT_BUDGET"


class LimitsConfig(BaseModel):
    """
    Hard limits on group sizes and enumeration budgets.
    """

    max_group_order: int = Field(
        default=24,
        gt=0,
        description="Largest group order accepted by subgroup enumeration"
    )

    cli_max_group_order: int = Field(
        default=12,
        gt=0,
        description="Largest group order accepted for CLI jobs"
    )

    budget: int = Field(
        default=2_000_000,
        gt=0,
        description="Maximum number of basis diagrams/chains in a single degree"
    )


class TruncationConfig(BaseModel):
    """
    Default truncations for bar complexes and bicomplexes.
    """

    d_bar: int = Field(default=5, ge=1, description="Bar-direction truncation degree")
    n_max: int = Field(default=4, ge=1, description="Chain-length truncation for C_n groupoids")
    resolution_length: int = Field(
        default=8,
        ge=1,
        description="Default length of free resolutions"
    )


class TateConfig(BaseModel):
    """
    Defaults for Tate cohomology computations.
    """

    window: Tuple[int, int] = Field(
        default=(-3, 3),
        description="Default degree window (inclusive)"
    )

    max_stage_gap: int = Field(
        default=4,
        ge=1,
        description="Widest spacing of the default generalized Tate stages; the gap doubles from 1 up to this"
    )

    @field_validator("window")
    @classmethod
    def window_ordered(cls, v: Tuple[int, int]) -> Tuple[int, int]:
        if v[0] > v[1]:
            raise ValueError(f"Window lower end {v[0]} exceeds upper end {v[1]}")
        return v


class LoggingConfig(BaseModel):
    """
    Logging configuration.
    """

    level: str = Field(default="WARNING", description="Root log level for the mackeykit loggers")
    format: Literal["text", "json"] = Field(default="text", description="Log record format")


class AppConfig(BaseModel):
    """
    Application configuration: limits, truncations and logging.
    """

    limits: LimitsConfig = Field(default_factory=LimitsConfig)
    truncation: TruncationConfig = Field(default_factory=TruncationConfig)
    tate: TateConfig = Field(default_factory=TateConfig)
    logging: LoggingConfig = Field(default_factory=LoggingConfig)

    @property
    def budget(self) -> int:
        """Get the enumeration budget."""
        return self.limits.budget

    @classmethod
    def from_yaml(cls, config_path: Optional[Path] = None) -> "AppConfig":
        """
        Create config from YAML file and environment variables.

        Args:
            config_path: Path to config file. If None, uses default config.yaml in project root.

        Returns:
            AppConfig instance loaded from YAML, with MACKEYKIT_BUDGET applied

        Raises:
            FileNotFoundError: If config file doesn't exist
            ValueError: If config file or the environment override is invalid
        """
        if config_path is None:
            # Default to config.yaml in project root
            config_path = Path(__file__).parent.parent / "config.yaml"

        if not config_path.exists():
            raise FileNotFoundError(
                f"Config file not found: {config_path}\n"
                f"Please create a config.yaml file or specify a valid path."
            )

        with open(config_path, "r") as f:
            config_data = yaml.safe_load(f) or {}

        env_budget = os.getenv(BUDGET_ENV_VAR)
        if env_budget:
            try:
                budget = int(env_budget)
            except ValueError:
                raise ValueError(f"{BUDGET_ENV_VAR} must be an integer, got {env_budget!r}")
            config_data.setdefault("limits", {})["budget"] = budget

        return cls(**config_data)


# Global config instance
_config: Optional[AppConfig] = None


def get_config(config_path: Optional[Path] = None) -> AppConfig:
    """
    Get or create the global config instance.

    Args:
        config_path: Path to config file. If None, uses default config.yaml.

    Returns:
        AppConfig instance loaded from YAML file

    Raises:
        FileNotFoundError: If config file doesn't exist
    """
    global _config
    if _config is None:
        _config = AppConfig.from_yaml(config_path)
    return _config


def set_config(config: Optional[AppConfig]) -> None:
    """
    Set the global config instance.

    Args:
        config: AppConfig instance to use, or None to reset
    """
    global _config
    _config = config


def reload_config(config_path: Optional[Path] = None) -> AppConfig:
    """
    Reload configuration from file.

    Args:
        config_path: Path to config file. If None, uses default config.yaml.

    Returns:
        Newly loaded AppConfig instance
    """
    set_config(None)
    return get_config(config_path)


def resolve_budget(budget: Optional[int]) -> int:
    """Return the explicit budget or the configured default."""
    return budget if budget is not None else get_config().budget
