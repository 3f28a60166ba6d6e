from __future__ import annotations

import os
from pathlib import Path

APP_NAME = "fhcalc"
BASE_DIR = Path(__file__).resolve().parent.parent
CORPUS_DIR = BASE_DIR / "corpus"

LOG_DIR = BASE_DIR / "logs"

DEFAULT_BUDGET = 200_000
DEFAULT_MAXDEG = 4
DEFAULT_LEVEL = 3

BUDGET_ENV = "FHCALC_BUDGET"
LOG_LEVEL_ENV = "FHCALC_LOG_LEVEL"
LOG_FILE_ENV = "FHCALC_LOG_FILE"

_DEFAULT_LOG_LEVEL = "WARNING"

_ENV_LOADED = False


def ensure_directories() -> None:
    if is_file_logging_enabled():
        LOG_DIR.mkdir(parents=True, exist_ok=True)


def load_env_file() -> None:
    """Load environment variables from a local .env file if needed."""
    global _ENV_LOADED
    if _ENV_LOADED:
        return

    env_path = BASE_DIR / ".env"
    if env_path.exists():
        with env_path.open("r", encoding="utf-8") as handle:
            for raw_line in handle:
                line = raw_line.strip()
                if not line or line.startswith("#") or "=" not in line:
                    continue
                key, value = line.split("=", 1)
                key = key.strip()
                if key and key not in os.environ:
                    os.environ[key] = value.strip()
    _ENV_LOADED = True


def get_budget() -> int:
    """Return the cap on basis elements per complex.

    Controlled by env var FHCALC_BUDGET (positive integer). Anything else
    falls back to DEFAULT_BUDGET.
    """
    load_env_file()
    raw = os.getenv(BUDGET_ENV, "").strip()
    if not raw:
        return DEFAULT_BUDGET
    try:
        value = int(raw)
    except ValueError:
        _warn_invalid(BUDGET_ENV, raw)
        return DEFAULT_BUDGET
    if value <= 0:
        _warn_invalid(BUDGET_ENV, raw)
        return DEFAULT_BUDGET
    return value


def get_log_level() -> str:
    load_env_file()
    raw = os.getenv(LOG_LEVEL_ENV, _DEFAULT_LOG_LEVEL).strip().upper()
    if raw not in {"DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"}:
        return _DEFAULT_LOG_LEVEL
    return raw


def is_file_logging_enabled() -> bool:
    """Return whether JSON-lines logs are written under LOG_DIR.

    Controlled by env var FHCALC_LOG_FILE (default: true).
    """
    load_env_file()
    raw = os.getenv(LOG_FILE_ENV, "true").strip().lower()
    return raw in {"1", "true", "yes", "on"}


def resolve_input_path(name: str) -> Path:
    """Resolve a CLI input either as a path or as a bundled corpus file."""
    candidate = Path(name)
    if candidate.exists():
        return candidate
    bundled = CORPUS_DIR / name
    if bundled.exists():
        return bundled
    return candidate


def _warn_invalid(key: str, raw: str) -> None:
    # logging_config imports this module, so the logger is looked up lazily
    import logging

    logging.getLogger(APP_NAME).warning(
        "Ignoring invalid %s=%r; using default", key, raw
    )


load_env_file()
