"""
Run configuration loading and merging.

Precedence (lowest to highest):
    1. RunConfig defaults
    2. JSON config file (--config)
    3. Command-line flags that were given explicitly
    4. Environment variables (SFL_SEED overrides the seed)
"""

import hashlib
import json
import os
from pathlib import Path
from typing import Any, Optional

from pydantic import ValidationError as PydanticValidationError

from spectral_filter_lab.errors import ValidationError, file_not_found_error
from spectral_filter_lab.logging import get_logger
from spectral_filter_lab.types import RunConfig

logger = get_logger(__name__)

ENV_PREFIX = "SFL_"
DEFAULT_LOG_LEVEL = "INFO"


def load_config_file(path: str) -> dict[str, Any]:
    """Read a JSON config file into a plain dict.

    Raises:
        NotFoundError: If the file does not exist
        ValidationError: CONFIG_PARSE_ERROR for invalid JSON or a non-object root
    """
    config_path = Path(path)
    if not config_path.exists():
        raise file_not_found_error(path, "config")
    try:
        data = json.loads(config_path.read_text())
    except json.JSONDecodeError as e:
        raise ValidationError(
            message=f"Invalid JSON in config file {path}: {e.msg} (line {e.lineno})",
            error_code="CONFIG_PARSE_ERROR",
            details={"path": path, "line": e.lineno},
        ) from e
    if not isinstance(data, dict):
        raise ValidationError(
            message=f"Config file {path} must contain a JSON object",
            error_code="CONFIG_PARSE_ERROR",
            details={"path": path, "type": type(data).__name__},
        )
    logger.debug(f"Loaded config file {path} with keys {sorted(data)}")
    return data


def load_config_from_env() -> dict[str, Any]:
    """Load overrides from environment variables.

    Environment variables:
        SFL_SEED: Global seed (integer)
        SFL_JOBS: Worker threads (integer)
        SFL_LOG_LEVEL: Logging level (default: INFO)

    Returns:
        Dict with the keys whose variables are set and valid
    """
    overrides: dict[str, Any] = {}
    for key in ("seed", "jobs"):
        name = f"{ENV_PREFIX}{key.upper()}"
        if name in os.environ:
            try:
                overrides[key] = int(os.environ[name])
            except ValueError:
                logger.warning(f"Invalid {name} value: {os.environ[name]}, ignoring")
    overrides["log_level"] = os.getenv(f"{ENV_PREFIX}LOG_LEVEL", DEFAULT_LOG_LEVEL)
    return overrides


def _deep_merge(base: dict[str, Any], update: dict[str, Any]) -> dict[str, Any]:
    merged = dict(base)
    for key, value in update.items():
        if isinstance(value, dict) and isinstance(merged.get(key), dict):
            merged[key] = _deep_merge(merged[key], value)
        else:
            merged[key] = value
    return merged


def _drop_unset(values: dict[str, Any]) -> dict[str, Any]:
    cleaned = {}
    for key, value in values.items():
        if isinstance(value, dict):
            value = _drop_unset(value)
            if not value:
                continue
        if value is not None:
            cleaned[key] = value
    return cleaned


def merge_config(
    command: str,
    file_config: Optional[dict[str, Any]] = None,
    cli_overrides: Optional[dict[str, Any]] = None,
    env: Optional[dict[str, Any]] = None,
) -> RunConfig:
    """
    Build the effective RunConfig for one command.

    Args:
        command: Subcommand name
        file_config: Parsed config file (nested like RunConfig)
        cli_overrides: Flag values, None meaning "not given"; nested dicts allowed
        env: Output of load_config_from_env (only seed and jobs are used)

    Raises:
        ValidationError: INVALID_CONFIG when the merged values fail validation
    """
    merged: dict[str, Any] = {"command": command}
    merged = _deep_merge(merged, file_config or {})
    merged = _deep_merge(merged, _drop_unset(cli_overrides or {}))
    for key in ("seed", "jobs"):
        if env and env.get(key) is not None:
            merged[key] = env[key]
    merged["command"] = command

    try:
        return RunConfig.model_validate(merged)
    except PydanticValidationError as e:
        problems = [".".join(map(str, err["loc"])) + ": " + err["msg"] for err in e.errors()]
        raise ValidationError(
            message=f"Invalid configuration: {e.error_count()} error(s)",
            error_code="INVALID_CONFIG",
            details={"errors": problems},
        ) from e


def config_hash(config: Any) -> str:
    """sha256 of the canonical (sorted-key) JSON of a config or plain dict."""
    if hasattr(config, "model_dump"):
        config = config.model_dump(mode="json")
    canonical = json.dumps(config, sort_keys=True, separators=(",", ":"), default=str)
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()
