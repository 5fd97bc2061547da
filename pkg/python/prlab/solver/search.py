"""Exact pr(K_n, G) and ar(K_n, G) by branch and bound over set partitions of E(K_n).

Colorings are enumerated as restricted-growth strings over the colex edge
order, so each coloring is seen once up to renaming colors.  When edge e is
colored only copies of the pattern through e can be new, and only those are
searched for.  At the end of every vertex block (the first C(j, 2) edges form
K_j) a prefix is dropped unless no relabeling of vertices 0..j-1 makes it
lexicographically larger, for j up to ``SearchBudget.orderly_max_vertices``.
"""

from __future__ import annotations

import logging
import multiprocessing
import time
from collections.abc import Iterator
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import TYPE_CHECKING

from ..coloring import EdgeColoring
from ..constructions import applicable_constructions
from ..detect import CopyDetector, PatternSpec, find_pc_embedding, find_rainbow_embedding
from ..enums import Mode, Provenance, Termination
from ..errors import InvalidArgumentError, ResourceLimitError
from ..graphs import SimpleGraph, colex_pairs, pair_count
from ..graphs.invariants import is_lex_maximal_prefix
from ..log import TRACE
from .profile import SearchBudget

if TYPE_CHECKING:
    from multiprocessing.sharedctypes import Synchronized

logger = logging.getLogger(__name__)

# Budget and shared incumbent are consulted every this many nodes.
_CHECK_EVERY = 1024
# Restricted-growth prefixes of this length are the parallel work units.
FAN_OUT_DEPTH = 6


@dataclass
class SearchStats:
    nodes: int = 0
    copy_prunes: int = 0
    bound_prunes: int = 0
    orderly_prunes: int = 0
    wall_time: float = 0.0

    def merge(self, other: SearchStats) -> None:
        self.nodes += other.nodes
        self.copy_prunes += other.copy_prunes
        self.bound_prunes += other.bound_prunes
        self.orderly_prunes += other.orderly_prunes

    def as_dict(self) -> dict[str, int | float]:
        return {
            "nodes": self.nodes,
            "copy_prunes": self.copy_prunes,
            "bound_prunes": self.bound_prunes,
            "orderly_prunes": self.orderly_prunes,
            "wall_time": round(self.wall_time, 3),
        }


def _next_colors(blocks: int) -> list[int]:
    """Colors tried on the next edge: a fresh one first, then the existing ones."""
    return [blocks, *range(blocks)]


@dataclass(frozen=True)
class PartialColoring:
    """A colored prefix of the colex edge order, as a restricted-growth string."""

    colors: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        top = -1
        for e, c in enumerate(self.colors):
            if not 0 <= c <= top + 1:
                raise InvalidArgumentError(f"entry {e} = {c} breaks the restricted-growth property")
            top = max(top, c)

    @property
    def prefix_length(self) -> int:
        return len(self.colors)

    @property
    def blocks_used(self) -> int:
        return max(self.colors) + 1 if self.colors else 0

    def extended(self, c: int) -> PartialColoring:
        return PartialColoring((*self.colors, c))

    def children(self) -> list[PartialColoring]:
        """One-edge extensions in the order the search tries them."""
        return [self.extended(c) for c in _next_colors(self.blocks_used)]


def restricted_growth_strings(m: int) -> Iterator[tuple[int, ...]]:
    """Every restricted-growth string of length ``m``, in search order; there are Bell(m)."""
    if m < 0:
        raise InvalidArgumentError(f"length must be non-negative, got {m}")
    stack = [PartialColoring()]
    while stack:
        prefix = stack.pop()
        if prefix.prefix_length == m:
            yield prefix.colors
            continue
        stack.extend(reversed(prefix.children()))


@dataclass(frozen=True)
class SearchResult:
    """Outcome of an exact search.

    When the budget runs out ``value`` is the best coloring found and
    ``upper`` bounds every branch left unexplored; otherwise both are equal.
    """

    n: int
    pattern: SimpleGraph
    mode: Mode
    value: int
    witness: EdgeColoring | None
    stats: SearchStats = field(default_factory=SearchStats)
    upper: int = -1
    termination: Termination = Termination.OPTIMALITY
    provenance: Provenance = Provenance.COMPUTED

    def __post_init__(self) -> None:
        if self.upper < 0:
            object.__setattr__(self, "upper", self.value)

    @property
    def exact(self) -> bool:
        return self.termination is Termination.OPTIMALITY

    @property
    def bracket(self) -> tuple[int, int]:
        return self.value, self.upper


class _BudgetExhausted(Exception):
    def __init__(self, termination: Termination) -> None:
        super().__init__(termination.value)
        self.termination = termination


_shared_best: Synchronized[int] | None = None


class _PartitionSearch:
    def __init__(
        self,
        n: int,
        spec: PatternSpec,
        mode: Mode,
        budget: SearchBudget,
        best: int,
        deadline: float | None,
        node_limit: int | None,
        shared: Synchronized[int] | None = None,
    ) -> None:
        self.n = n
        self.m = pair_count(n)
        self.pairs = colex_pairs(n)
        self.detector = CopyDetector(spec, n, rainbow=mode is Mode.RAINBOW)
        self.boundaries = {pair_count(j): j for j in range(3, min(n, budget.orderly_max_vertices) + 1)}
        self.colors = [-1] * self.m
        self.best = best
        self.found: tuple[int, list[int]] | None = None
        self.open_bound = -1
        self.stats = SearchStats()
        self.deadline = deadline
        self.node_limit = node_limit
        self.shared = shared

    def _load(self, prefix: PartialColoring) -> int:
        self.colors = [-1] * self.m
        self.colors[: prefix.prefix_length] = prefix.colors
        return prefix.blocks_used

    def _tick(self) -> None:
        stats = self.stats
        stats.nodes += 1
        if self.node_limit is not None and stats.nodes > self.node_limit:
            raise _BudgetExhausted(Termination.NODE_LIMIT)
        if stats.nodes % _CHECK_EVERY == 0:
            if self.shared is not None and self.shared.value > self.best:
                self.best = self.shared.value
            if self.deadline is not None and time.monotonic() > self.deadline:
                raise _BudgetExhausted(Termination.TIME_LIMIT)

    def _leave_open(self, potential: int) -> None:
        self.open_bound = max(self.open_bound, potential)

    def _orderly_reject(self, e: int) -> bool:
        j = self.boundaries.get(e)
        if j is not None and not is_lex_maximal_prefix(self.colors, j, renormalize=True):
            self.stats.orderly_prunes += 1
            return True
        return False

    def _record(self, blocks: int) -> None:
        self.best = blocks
        self.found = (blocks, list(self.colors))
        logger.debug("new incumbent with %d colors after %d nodes", blocks, self.stats.nodes)
        if self.shared is not None:
            with self.shared.get_lock():
                if self.shared.value < blocks:
                    self.shared.value = blocks

    def run(self, prefix: PartialColoring = PartialColoring()) -> Termination:
        blocks = self._load(prefix)
        try:
            self._maximize(prefix.prefix_length, blocks)
        except _BudgetExhausted as exc:
            return exc.termination
        return Termination.OPTIMALITY

    def _maximize(self, e: int, blocks: int) -> None:
        m = self.m
        try:
            self._tick()
        except _BudgetExhausted:
            self._leave_open(blocks + m - e)
            raise
        if self._orderly_reject(e):
            return
        if e == m:
            if blocks > self.best:
                self._record(blocks)
            return
        if blocks + m - e <= self.best:
            self.stats.bound_prunes += 1
            return
        i, j = self.pairs[e]
        colors = self.colors
        candidates = _next_colors(blocks)
        for pos, c in enumerate(candidates):
            grown = blocks + 1 if c == blocks else blocks
            if grown + m - e - 1 <= self.best:
                self.stats.bound_prunes += 1
                continue
            colors[e] = c
            try:
                if self.detector.copy_through(colors, i, j) is None:
                    self._maximize(e + 1, grown)
                else:
                    self.stats.copy_prunes += 1
                    if logger.isEnabledFor(TRACE):
                        logger.log(TRACE, "copy through edge %d with color %d", e, c)
            except _BudgetExhausted:
                colors[e] = -1
                if pos + 1 < len(candidates):
                    self._leave_open(blocks + m - e - 1)
                raise
            colors[e] = -1

    def decide(self, k: int) -> list[int] | None:
        """A surjective k-coloring without a forbidden copy, or None."""
        self._load(PartialColoring())
        m = self.m

        def extend(e: int, blocks: int) -> bool:
            self._tick()
            if self._orderly_reject(e):
                return False
            if e == m:
                return blocks == k
            if blocks + m - e < k:
                self.stats.bound_prunes += 1
                return False
            i, j = self.pairs[e]
            for c in _next_colors(blocks) if blocks < k else range(blocks):
                self.colors[e] = c
                if self.detector.copy_through(self.colors, i, j) is None:
                    if extend(e + 1, max(blocks, c + 1)):
                        return True
                else:
                    self.stats.copy_prunes += 1
                self.colors[e] = -1
            return False

        if extend(0, 0):
            return list(self.colors)
        return None

    def frontier(self, depth: int) -> list[PartialColoring]:
        """Prefixes of length ``depth`` holding no forbidden copy and not rejected as isomorphs."""
        self._load(PartialColoring())
        found: list[PartialColoring] = []

        def extend(prefix: PartialColoring) -> None:
            e = prefix.prefix_length
            if self._orderly_reject(e):
                return
            if e == depth:
                found.append(prefix)
                return
            i, j = self.pairs[e]
            for child in prefix.children():
                self.colors[e] = child.colors[e]
                if self.detector.copy_through(self.colors, i, j) is None:
                    extend(child)
                self.colors[e] = -1

        extend(PartialColoring())
        return found


@dataclass(frozen=True)
class _Task:
    n: int
    spec: PatternSpec
    mode: Mode
    budget: SearchBudget
    prefix: PartialColoring
    best: int
    deadline: float | None
    node_limit: int | None


@dataclass(frozen=True)
class _TaskOutcome:
    found: tuple[int, list[int]] | None
    stats: SearchStats
    open_bound: int
    termination: Termination


def _init_worker(shared: Synchronized[int]) -> None:
    global _shared_best
    _shared_best = shared


def _run_task(task: _Task) -> _TaskOutcome:
    best = task.best
    if _shared_best is not None:
        best = max(best, _shared_best.value)
    search = _PartitionSearch(
        task.n, task.spec, task.mode, task.budget, best, task.deadline, task.node_limit, shared=_shared_best
    )
    termination = search.run(task.prefix)
    return _TaskOutcome(search.found, search.stats, search.open_bound, termination)


def _as_spec(pattern: SimpleGraph | PatternSpec) -> PatternSpec:
    return pattern if isinstance(pattern, PatternSpec) else PatternSpec.from_graph(pattern)


def _has_copy(col: EdgeColoring, spec: PatternSpec, mode: Mode) -> bool:
    if mode is Mode.RAINBOW:
        return find_rainbow_embedding(col, spec) is not None
    return find_pc_embedding(col, spec) is not None


def _is_degenerate(core: SimpleGraph, mode: Mode) -> bool:
    """Every coloring of K_n, n >= |V(G)|, contains a forbidden copy."""
    if mode is Mode.RAINBOW:
        return core.edge_count <= 1
    return not core.adjacent_edge_pairs()


def _seed(n: int, spec: PatternSpec, mode: Mode) -> tuple[int, EdgeColoring]:
    """Best verified starting coloring: monochromatic or a known construction."""
    best = EdgeColoring.monochromatic(n)
    for report in applicable_constructions(n, spec.graph):
        col = report.coloring
        if col.color_count <= best.color_count:
            continue
        if _has_copy(col, spec, mode):
            logger.warning(
                "construction %s on K%d contains a forbidden copy; not used as a seed", report.formula_name, n
            )
            continue
        best = col
    logger.debug("seeded %s search on K%d for %s with %d colors", mode.value, n, spec.name, best.color_count)
    return best.color_count, best


def _deadline(budget: SearchBudget, started: float) -> float | None:
    return None if budget.time_limit is None else started + budget.time_limit


def _solve(n: int, pattern: SimpleGraph | PatternSpec, mode: Mode, budget: SearchBudget) -> SearchResult:
    if n < 0:
        raise InvalidArgumentError(f"n must be non-negative, got {n}")
    started = time.monotonic()
    spec = _as_spec(pattern)
    g = spec.graph
    m = pair_count(n)
    if n < g.vertex_count:
        return SearchResult(n, g, mode, m, EdgeColoring.rainbow(n), provenance=Provenance.TRIVIAL)
    core = g.without_isolated()
    if _is_degenerate(core, mode):
        return SearchResult(n, g, mode, 0, None, provenance=Provenance.TRIVIAL)

    core_spec = PatternSpec(core, spec.token)
    seed_value, seed_witness = _seed(n, spec, mode)
    deadline = _deadline(budget, started)

    if budget.threads > 1 and m > FAN_OUT_DEPTH:
        found, stats, open_bound, termination = _solve_parallel(n, core_spec, mode, budget, seed_value, deadline)
    else:
        search = _PartitionSearch(n, core_spec, mode, budget, seed_value, deadline, budget.node_limit)
        termination = search.run()
        found, stats, open_bound = search.found, search.stats, search.open_bound

    if found is not None and found[0] > seed_value:
        value, witness = found[0], EdgeColoring(n, tuple(found[1]))
    else:
        value, witness = seed_value, seed_witness
    stats.wall_time = time.monotonic() - started
    upper = value if termination is Termination.OPTIMALITY else max(value, open_bound)
    if termination is not Termination.OPTIMALITY:
        logger.warning(
            "%s search on K%d for %s stopped (%s): bracket [%d, %d]",
            mode.value,
            n,
            spec.name,
            termination.value,
            value,
            upper,
        )
    logger.debug("%s(K%d, %s) search stats: %s", mode.value, n, spec.name, stats.as_dict())
    return SearchResult(n, g, mode, value, witness, stats, upper, termination)


def partition_frontier(
    n: int,
    pattern: SimpleGraph | PatternSpec,
    depth: int,
    mode: Mode = Mode.PROPERLY_COLORED,
    budget: SearchBudget | None = None,
) -> list[PartialColoring]:
    """Colorings of the first ``depth`` colex edges that the search would go on to extend.

    With orderly rejection off and a pattern that cannot occur in K_n this is
    every restricted-growth string of length ``depth``.
    """
    m = pair_count(n)
    if not 0 <= depth <= m:
        raise InvalidArgumentError(f"depth must be between 0 and C({n}, 2) = {m}, got {depth}")
    return _PartitionSearch(n, _as_spec(pattern), mode, budget or SearchBudget(), 0, None, None).frontier(depth)


def _solve_parallel(
    n: int, spec: PatternSpec, mode: Mode, budget: SearchBudget, seed_value: int, deadline: float | None
) -> tuple[tuple[int, list[int]] | None, SearchStats, int, Termination]:
    prefixes = partition_frontier(n, spec, FAN_OUT_DEPTH, mode, budget)
    share = None
    if budget.node_limit is not None and prefixes:
        share = max(1, budget.node_limit // len(prefixes))
    tasks = [_Task(n, spec, mode, budget, p, seed_value, deadline, share) for p in prefixes]
    logger.debug("fanning %d prefixes of length %d out to %d workers", len(tasks), FAN_OUT_DEPTH, budget.threads)

    shared = multiprocessing.Value("i", seed_value)
    with ProcessPoolExecutor(max_workers=budget.threads, initializer=_init_worker, initargs=(shared,)) as pool:
        outcomes = list(pool.map(_run_task, tasks))

    stats = SearchStats()
    found: tuple[int, list[int]] | None = None
    open_bound = -1
    termination = Termination.OPTIMALITY
    for outcome in outcomes:
        stats.merge(outcome.stats)
        if outcome.found is not None and (found is None or outcome.found[0] > found[0]):
            found = outcome.found
        if outcome.termination is not Termination.OPTIMALITY:
            open_bound = max(open_bound, outcome.open_bound)
            if termination is Termination.OPTIMALITY:
                termination = outcome.termination
    return found, stats, open_bound, termination


def pr_exact(n: int, pattern: SimpleGraph | PatternSpec, budget: SearchBudget | None = None) -> SearchResult:
    """pr(K_n, G): most colors in a coloring of K_n with no properly colored copy of G.

    For n < |V(G)| the answer is C(n, 2).  If G has no two adjacent edges every
    coloring contains a properly colored copy and the value is 0 without witness.
    """
    return _solve(n, pattern, Mode.PROPERLY_COLORED, budget or SearchBudget())


def ar_exact(n: int, pattern: SimpleGraph | PatternSpec, budget: SearchBudget | None = None) -> SearchResult:
    """ar(K_n, G): most colors in a coloring of K_n with no rainbow copy of G."""
    return _solve(n, pattern, Mode.RAINBOW, budget or SearchBudget())


def decide(
    n: int,
    pattern: SimpleGraph | PatternSpec,
    k: int,
    mode: Mode = Mode.PROPERLY_COLORED,
    budget: SearchBudget | None = None,
) -> EdgeColoring | None:
    """A surjective k-coloring of K_n with no forbidden copy, or None if there is none."""
    m = pair_count(n)
    if not 1 <= k <= m:
        raise InvalidArgumentError(f"k must be between 1 and C({n}, 2) = {m}, got {k}")
    budget = budget or SearchBudget.unlimited()
    spec = _as_spec(pattern)
    if n < spec.graph.vertex_count:
        return EdgeColoring(n, tuple(min(e, k - 1) for e in range(m)))
    core = spec.graph.without_isolated()
    if _is_degenerate(core, mode):
        return None
    started = time.monotonic()
    search = _PartitionSearch(
        n, PatternSpec(core, spec.token), mode, budget, 0, _deadline(budget, started), budget.node_limit
    )
    try:
        colors = search.decide(k)
    except _BudgetExhausted as exc:
        if exc.termination is Termination.NODE_LIMIT:
            limit, used = budget.node_limit or 0, search.stats.nodes
        else:
            limit, used = int(budget.time_limit or 0), int(time.monotonic() - started)
        raise ResourceLimitError("decision search", exc.termination.value, limit, used) from None
    logger.debug("decision %s(K%d, %s) >= %d: %s", mode.value, n, spec.name, k, colors is not None)
    return None if colors is None else EdgeColoring(n, tuple(colors))


def pr_decision(
    n: int, pattern: SimpleGraph | PatternSpec, k: int, budget: SearchBudget | None = None
) -> EdgeColoring | None:
    return decide(n, pattern, k, Mode.PROPERLY_COLORED, budget)


__all__ = [
    "FAN_OUT_DEPTH",
    "PartialColoring",
    "SearchResult",
    "SearchStats",
    "ar_exact",
    "decide",
    "partition_frontier",
    "pr_decision",
    "pr_exact",
    "restricted_growth_strings",
]
