"""
Configuration for the simulation runs.
Global numerical settings plus the flag > file > default precedence resolver.
"""

import json
import os
from pathlib import Path
from typing import Any, Dict, Optional, Type, TypeVar

from pydantic import BaseModel, Field

T = TypeVar("T", bound=BaseModel)


class SimulationConfig(BaseModel):
    """Numerical and storage settings shared by the CLI and the MCP server."""

    # Integration
    ermakov_step: float = Field(default=1e-3, gt=0)

    # Output
    significant_digits: int = Field(default=12, ge=1, le=17)

    # Storage
    runs_path: str = os.getenv("HARMONIC_RUNS_DIR", str(Path.cwd() / "runs"))
    max_stored_runs: int = Field(default=200, ge=1)

    # Logging
    log_dir: Optional[str] = os.getenv("HARMONIC_LOG_DIR")
    log_level: str = os.getenv("HARMONIC_LOG_LEVEL", "INFO")


def load_config_file(path: Optional[str]) -> Dict[str, Any]:
    """Read a JSON run configuration; an absent path yields an empty mapping."""
    if not path:
        return {}
    file_path = Path(path)
    try:
        data = json.loads(file_path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as e:
        raise ValueError(f"{file_path}: line {e.lineno}: {e.msg}") from e
    if not isinstance(data, dict):
        raise ValueError(f"{file_path}: top level must be a JSON object")
    return data


def resolve_config(
    model_cls: Type[T],
    config_file: Optional[str] = None,
    overrides: Optional[Dict[str, Any]] = None,
) -> T:
    """
    Build a run configuration.

    Flags override the config file, which overrides the model defaults.
    Overrides set to None are treated as not given.
    """
    merged = load_config_file(config_file)
    for key, value in (overrides or {}).items():
        if value is not None:
            merged[key] = value
    return model_cls.model_validate(merged)


# Global instance
config = SimulationConfig()
