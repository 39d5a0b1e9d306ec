# ksync/storage.py
"""Atomic JSON / text output for verdicts, counterexamples and reproducers."""

from __future__ import annotations

import json
import logging
import os
import tempfile
from pathlib import Path
from typing import Any

logger = logging.getLogger(__name__)


def dumps(data: Any) -> str:
    """Deterministic JSON text (sorted keys, UTF-8 kept as is)."""
    return json.dumps(data, ensure_ascii=False, indent=2, sort_keys=True) + "\n"


def write_text_atomic(path: Path, text: str) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with tempfile.NamedTemporaryFile("w", delete=False, dir=path.parent, encoding="utf-8") as tmp:
        tmp.write(text)
        tmp.flush()
        os.fsync(tmp.fileno())
        temp_name = tmp.name
    os.replace(temp_name, path)
    logger.debug("wrote %s", path)
    return path


def write_json_atomic(path: Path, data: Any) -> Path:
    return write_text_atomic(path, dumps(data))


def read_json(path: Path, default: Any = None) -> Any:
    try:
        raw = Path(path).read_text(encoding="utf-8", errors="replace").strip()
    except FileNotFoundError:
        return default
    if not raw:
        return default
    try:
        return json.loads(raw)
    except json.JSONDecodeError:
        logger.warning("ignoring malformed JSON in %s", path)
        return default


__all__ = ["dumps", "read_json", "write_json_atomic", "write_text_atomic"]
