from __future__ import annotations

import logging

# Finer than DEBUG; used for per-node search tracing.
TRACE = 5

logging.addLevelName(TRACE, "TRACE")

LOG_FORMAT = "%(asctime)s [%(levelname)s] %(name)s: %(message)s"


def parse_level(value: str) -> int:
    """Accept a level name (including TRACE) or its numeric value."""
    if value.lstrip("-").isdigit():
        return int(value)
    level = logging.getLevelName(value.upper())
    if not isinstance(level, int):
        raise ValueError(f"unknown log level {value!r}")
    return level


__all__ = ["TRACE", "LOG_FORMAT", "parse_level"]
