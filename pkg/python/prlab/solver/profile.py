"""Search budgets shared by the exact solvers."""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

from ..errors import ConfigError

DEFAULT_TIME_LIMIT = 60.0
DEFAULT_NODE_LIMIT = 10**8
DEFAULT_ORDERLY_MAX_VERTICES = 6


@dataclass(frozen=True)
class SearchBudget:
    """Limits for one exact search.

    ``None`` disables a limit.  Budgets are immutable; the ``with_*`` methods
    return adjusted copies.
    """

    time_limit: float | None = DEFAULT_TIME_LIMIT
    node_limit: int | None = DEFAULT_NODE_LIMIT
    threads: int = 1
    orderly_max_vertices: int = DEFAULT_ORDERLY_MAX_VERTICES

    def __post_init__(self) -> None:
        if self.time_limit is not None and (not math.isfinite(self.time_limit) or self.time_limit < 0):
            raise ConfigError("time_limit must be a non-negative, finite number")
        if self.node_limit is not None and self.node_limit < 0:
            raise ConfigError("node_limit must be a non-negative integer")
        if self.threads < 1:
            raise ConfigError("threads must be at least 1")
        if self.orderly_max_vertices < 0:
            raise ConfigError("orderly_max_vertices must be a non-negative integer")

    @classmethod
    def unlimited(cls) -> SearchBudget:
        return cls(time_limit=None, node_limit=None)

    def with_time_limit(self, time_limit: float | None) -> SearchBudget:
        return replace(self, time_limit=time_limit)

    def with_node_limit(self, node_limit: int | None) -> SearchBudget:
        return replace(self, node_limit=node_limit)

    def with_threads(self, threads: int) -> SearchBudget:
        return replace(self, threads=threads)

    def with_orderly_max_vertices(self, orderly_max_vertices: int) -> SearchBudget:
        return replace(self, orderly_max_vertices=orderly_max_vertices)


__all__ = [
    "DEFAULT_NODE_LIMIT",
    "DEFAULT_ORDERLY_MAX_VERTICES",
    "DEFAULT_TIME_LIMIT",
    "SearchBudget",
]
