"""Configuration system for tameforge enumeration bounds and logging."""

from __future__ import annotations

import json
import os
from dataclasses import asdict, dataclass, replace
from pathlib import Path
from typing import Any, Dict, Optional, Tuple

import yaml

CONFIG_ENV_VAR = "TAMEFORGE_CONFIG_PATH"
MAX_ELEMENTS_ENV_VAR = "TAMEFORGE_MAX_ELEMENTS"
LOG_DIR_ENV_VAR = "TAMEFORGE_LOG_DIR"

SIMPLE_SYSTEM_MODES = {"auto", "given"}

DEFAULT_BOUNDS: Dict[str, Any] = {
    "max_group_elements": 10_000,
    "weyl_enumeration": 100_000,
    "galois_closure": 10_000,
    "max_field_order": 729,
    "gl2_q": [3, 5, 7, 9],
    "cocycle_search": 1_000_000,
}


@dataclass(frozen=True)
class Bounds:
    """Desk-scale guardrails for every enumeration."""

    max_group_elements: int = 10_000
    weyl_enumeration: int = 100_000
    galois_closure: int = 10_000
    max_field_order: int = 729
    gl2_q: Tuple[int, ...] = (3, 5, 7, 9)
    cocycle_search: int = 1_000_000


@dataclass(frozen=True)
class Settings:
    """Resolved settings for one run."""

    bounds: Bounds
    simple_system: str
    log_level: str
    log_dir: str

    def to_dict(self) -> Dict[str, Any]:
        data = asdict(self)
        data["bounds"]["gl2_q"] = list(self.bounds.gl2_q)
        return data


def _repo_root() -> Path:
    return Path(__file__).resolve().parents[1]


def _default_config_path() -> Optional[str]:
    env_path = os.getenv(CONFIG_ENV_VAR)
    if env_path:
        return env_path

    local_config = _repo_root() / "config" / "tameforge.local.yaml"
    if local_config.exists():
        return str(local_config)

    repo_config = _repo_root() / "config" / "tameforge.yaml"
    if repo_config.exists():
        return str(repo_config)

    return None


def default_log_dir() -> str:
    env_path = os.getenv(LOG_DIR_ENV_VAR)
    if env_path:
        return env_path
    return str(_repo_root() / "runtime" / "logs")


def load_config(path: str | None = None) -> Dict[str, Any]:
    """Load the YAML config file; an absent default file yields an empty mapping."""
    resolved_path = path or _default_config_path()
    if resolved_path is None:
        return {}

    if not os.path.exists(resolved_path):
        raise FileNotFoundError(f"Config file not found: {resolved_path}")

    with open(resolved_path, "r", encoding="utf-8") as handle:
        data = yaml.safe_load(handle) or {}

    if not isinstance(data, dict):
        raise ValueError("Config root must be a mapping of sections to settings.")

    return data


def validate_config(cfg: Dict[str, Any]) -> None:
    """Validate the configuration structure and values."""

    if not isinstance(cfg, dict):
        raise ValueError("Config root must be a dictionary.")

    for section in ("bounds", "rootdata", "logging"):
        value = cfg.get(section)
        if value is not None and not isinstance(value, dict):
            raise ValueError(f"Config section '{section}' must be a mapping.")

    bounds = cfg.get("bounds") or {}
    for key, value in bounds.items():
        if key not in DEFAULT_BOUNDS:
            raise ValueError(f"Unknown bound '{key}'.")
        if key == "gl2_q":
            if not isinstance(value, list) or not value:
                raise ValueError("bounds.gl2_q must be a non-empty list of odd prime powers.")
            for q in value:
                if not isinstance(q, int) or q < 3 or q % 2 == 0:
                    raise ValueError(f"bounds.gl2_q entry {q!r} must be an odd integer >= 3.")
            continue
        if not isinstance(value, int) or isinstance(value, bool) or value < 1:
            raise ValueError(f"bounds.{key} must be an int >= 1.")

    mode = (cfg.get("rootdata") or {}).get("simple_system", "auto")
    if mode not in SIMPLE_SYSTEM_MODES:
        raise ValueError(f"rootdata.simple_system must be one of {sorted(SIMPLE_SYSTEM_MODES)}.")

    level = (cfg.get("logging") or {}).get("level", "INFO")
    if not isinstance(level, str):
        raise ValueError("logging.level must be a string.")


def _env_max_elements() -> Optional[int]:
    raw = os.getenv(MAX_ELEMENTS_ENV_VAR)
    if not raw:
        return None
    try:
        value = int(raw)
    except ValueError as exc:
        raise ValueError(f"{MAX_ELEMENTS_ENV_VAR} must be an integer, got {raw!r}") from exc
    if value < 1:
        raise ValueError(f"{MAX_ELEMENTS_ENV_VAR} must be >= 1")
    return value


def resolve_settings(
    cfg: Dict[str, Any] | None = None,
    *,
    max_group_elements: Optional[int] = None,
) -> Settings:
    """Merge defaults, file values and environment overrides.

    Precedence for the group bound: explicit argument, environment, file,
    built-in default.
    """
    cfg = cfg or {}
    validate_config(cfg)

    merged = dict(DEFAULT_BOUNDS)
    merged.update(cfg.get("bounds") or {})
    merged["gl2_q"] = tuple(merged["gl2_q"])
    bounds = Bounds(**merged)

    env_bound = _env_max_elements()
    if env_bound is not None:
        bounds = replace(bounds, max_group_elements=env_bound)
    if max_group_elements is not None:
        if max_group_elements < 1:
            raise ValueError("max_group_elements must be >= 1")
        bounds = replace(bounds, max_group_elements=max_group_elements)

    logging_cfg = cfg.get("logging") or {}
    log_dir = os.getenv(LOG_DIR_ENV_VAR) or logging_cfg.get("dir") or default_log_dir()

    return Settings(
        bounds=bounds,
        simple_system=(cfg.get("rootdata") or {}).get("simple_system", "auto"),
        log_level=str(logging_cfg.get("level", "INFO")),
        log_dir=str(log_dir),
    )


def default_settings() -> Settings:
    """Settings from the default config file plus environment overrides."""
    return resolve_settings(load_config())


if __name__ == "__main__":
    print(json.dumps(default_settings().to_dict(), indent=2))
