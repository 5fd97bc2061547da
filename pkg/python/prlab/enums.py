from __future__ import annotations

from enum import Enum


class Mode(str, Enum):
    """Which copies of the pattern are forbidden."""

    PROPERLY_COLORED = "pr"
    RAINBOW = "ar"


class Provenance(str, Enum):
    """Where a number in a report comes from."""

    PROVED_RANGE = "proved-range"
    CONJECTURED = "conjectured"
    LOWER_BOUND_ONLY = "lower-bound-only"
    UNPROVED_RANGE = "unproved-range"
    COMPUTED = "computed"
    TRIVIAL = "trivial"


class Termination(str, Enum):
    """Why an exact search stopped."""

    OPTIMALITY = "optimality"
    TIME_LIMIT = "time_limit"
    NODE_LIMIT = "node_limit"


__all__ = ["Mode", "Provenance", "Termination"]
