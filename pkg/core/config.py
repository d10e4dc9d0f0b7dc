"""
Configuration for sigma-spectra.

Values come from config/default.yaml (or the file named by SIGMA_CONFIG_PATH),
then from SIGMA_-prefixed environment variables, e.g.
SIGMA_SEARCH__NODE_BUDGET=5000000 sets search.node_budget.
"""

import os
from pathlib import Path
from typing import Any, Dict, Optional

import yaml
from dotenv import load_dotenv
from pydantic import BaseModel, Field, field_validator

from core.constants import SearchDefaults

ENV_PREFIX = "SIGMA_"
CONFIG_PATH_ENV = "SIGMA_CONFIG_PATH"
DEFAULT_CONFIG_PATH = "config/default.yaml"
LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")


class SearchConfig(BaseModel):
    """Exhaustive search and oracle limits."""
    node_budget: int = SearchDefaults.NODE_BUDGET
    edge_cap: int = SearchDefaults.EDGE_CAP
    use_constructions: bool = True
    use_walks: bool = True
    walk_step_limit: int = SearchDefaults.WALK_STEP_LIMIT
    max_concurrent_searches: int = SearchDefaults.MAX_CONCURRENT_SEARCHES

    @field_validator('node_budget', 'edge_cap', 'walk_step_limit', 'max_concurrent_searches')
    @classmethod
    def _positive(cls, value: int) -> int:
        if value < 1:
            raise ValueError("must be a positive integer")
        return value


class OutputConfig(BaseModel):
    """Report rendering."""
    format: str = "json"
    indent: Optional[int] = 2

    @field_validator('format')
    @classmethod
    def _known_format(cls, value: str) -> str:
        if value not in ("json", "text"):
            raise ValueError("format must be 'json' or 'text'")
        return value


class LoggingConfig(BaseModel):
    level: str = "WARNING"
    file: Optional[str] = None
    max_size_mb: int = 10
    retention_days: int = 7
    format: str = "json"

    @field_validator('level')
    @classmethod
    def _known_level(cls, value: str) -> str:
        if value.upper() not in LOG_LEVELS:
            raise ValueError(f"level must be one of {', '.join(LOG_LEVELS)}")
        return value.upper()


class Config(BaseModel):
    search: SearchConfig = Field(default_factory=SearchConfig)
    output: OutputConfig = Field(default_factory=OutputConfig)
    logging: LoggingConfig = Field(default_factory=LoggingConfig)


def _read_yaml(path: Path) -> Dict[str, Any]:
    if not path.is_file():
        return {}
    with path.open("r", encoding="utf-8") as handle:
        return yaml.safe_load(handle) or {}


def load_config(config_path: Optional[str] = None) -> Config:
    """
    Build a Config from YAML plus environment overrides.

    A missing file is not an error: defaults apply. Invalid values raise
    pydantic's ValidationError.

    Args:
        config_path: YAML file; SIGMA_CONFIG_PATH or config/default.yaml when None
    """
    load_dotenv()
    path = Path(config_path or os.getenv(CONFIG_PATH_ENV, DEFAULT_CONFIG_PATH))
    return Config(**_apply_env_overrides(_read_yaml(path)))


def _apply_env_overrides(config_dict: Dict[str, Any]) -> Dict[str, Any]:
    """Overlay SIGMA_SECTION__KEY variables; names without "__" are ignored."""
    for name, raw in os.environ.items():
        if not name.startswith(ENV_PREFIX) or name == CONFIG_PATH_ENV:
            continue
        *sections, key = name[len(ENV_PREFIX):].lower().split("__")
        if not sections:
            continue

        node = config_dict
        for section in sections:
            child = node.get(section)
            if not isinstance(child, dict):
                child = node[section] = {}
            node = child
        node[key] = _parse_env_value(raw)
    return config_dict


def _parse_env_value(value: str) -> Any:
    """
    Read an environment string as bool, int, float or str.

    Only words are booleans, so "1" stays the integer budget 1.
    """
    word = value.strip().lower()
    if word in ("true", "yes"):
        return True
    if word in ("false", "no"):
        return False
    for cast in (int, float):
        try:
            return cast(value)
        except ValueError:
            continue
    return value


_config: Optional[Config] = None


def get_config() -> Config:
    """Process-wide configuration, loaded on first use."""
    global _config
    if _config is None:
        _config = load_config()
    return _config


def reload_config(config_path: Optional[str] = None) -> Config:
    global _config
    _config = load_config(config_path)
    return _config
