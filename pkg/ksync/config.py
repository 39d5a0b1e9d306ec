# ksync/config.py
from __future__ import annotations

import logging
import os
from dataclasses import dataclass
from pathlib import Path

logger = logging.getLogger(__name__)

DEFAULT_MAX_STATES = 1_000_000
DEFAULT_MAX_EXCHANGES = 200_000
DEFAULT_ORACLE_MAX_EVENTS = 12


def _env(*names: str, default: str = "") -> str:
    """
    Берём первое непустое значение из списка переменных окружения.
    """
    for n in names:
        v = (os.getenv(n) or "").strip()
        if v:
            return v
    return (default or "").strip()


def _env_int(name: str, default: int) -> int:
    raw = _env(name, default=str(default))
    try:
        value = int(raw.replace("_", ""))
    except ValueError:
        logger.warning("%s=%r is not an integer, using %s", name, raw, default)
        return default
    if value <= 0:
        logger.warning("%s=%s must be positive, using %s", name, value, default)
        return default
    return value


def setup_logging() -> None:
    level = _env("LOG_LEVEL", default="INFO").upper()
    logging.basicConfig(
        level=getattr(logging, level, logging.INFO),
        format="%(asctime)s [%(levelname)s] %(name)s: %(message)s",
    )


@dataclass(frozen=True, slots=True)
class VerifierConfig:
    max_states: int
    max_exchanges: int
    oracle_max_events: int
    output_dir: Path
    log_level: str


def load_verifier_config() -> VerifierConfig:
    output_dir = _env("KSYNC_OUTPUT_DIR", "STORAGE_DIR", default="data")
    return VerifierConfig(
        max_states=_env_int("KSYNC_MAX_STATES", DEFAULT_MAX_STATES),
        max_exchanges=_env_int("KSYNC_MAX_EXCHANGES", DEFAULT_MAX_EXCHANGES),
        oracle_max_events=_env_int("KSYNC_ORACLE_MAX_EVENTS", DEFAULT_ORACLE_MAX_EVENTS),
        output_dir=Path(output_dir),
        log_level=_env("LOG_LEVEL", default="INFO").upper(),
    )
