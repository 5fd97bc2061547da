"""Exact Turán numbers for small n, the subchromatic number, and two
consistency checks built on them."""

from __future__ import annotations

import logging
import time
from dataclasses import dataclass
from fractions import Fraction

from .detect import CopyDetector, PatternSpec
from .errors import InvalidArgumentError, ResourceLimitError
from .graphs import SimpleGraph, colex_pairs, pair_count
from .graphs.catalog import cycle_graph, path_graph
from .graphs.family import GraphFamily, reduced_family
from .graphs.invariants import chromatic_number, is_lex_maximal_prefix

logger = logging.getLogger(__name__)

MAX_TURAN_VERTICES = 9
DEFAULT_ORDERLY_VERTICES = 6


@dataclass(frozen=True)
class TuranResult:
    n: int
    family: GraphFamily
    value: int
    witness: SimpleGraph
    nodes: int = 0

    def __str__(self) -> str:
        return f"ex({self.n}, {{{', '.join(self.family.names())}}}) = {self.value}"


def ex_exact(n: int, family: GraphFamily, orderly_max_vertices: int = DEFAULT_ORDERLY_VERTICES) -> TuranResult:
    """ex(n, family) and one extremal graph.

    Depth-first over the edges of K_n in colex order, including each edge
    before excluding it.  An edge is only included when it closes no copy of
    a family member, and a branch is cut once even taking every remaining edge
    cannot beat the best count.  The first maximum found is the one with the
    lexicographically smallest edge-index list.
    """
    if n < 0:
        raise InvalidArgumentError(f"n must be non-negative, got {n}")
    if n > MAX_TURAN_VERTICES:
        raise ResourceLimitError("ex_exact", "MAX_TURAN_VERTICES", MAX_TURAN_VERTICES, n)

    m = pair_count(n)
    members = family.minimal()
    if len(members) == 0:
        return TuranResult(n, family, m, SimpleGraph.complete(n, name=f"EX({n})"))

    started = time.monotonic()
    detectors = [CopyDetector(PatternSpec.from_graph(member), n) for member in members]
    pairs = colex_pairs(n)
    boundaries = {pair_count(j): j for j in range(3, min(n, orderly_max_vertices) + 1)}
    marks = [-1] * m
    bits = [0] * m
    best = -1
    best_bits: list[int] = []
    nodes = 0

    def dfs(e: int, count: int) -> None:
        nonlocal best, best_bits, nodes
        nodes += 1
        j = boundaries.get(e)
        if j is not None and not is_lex_maximal_prefix(bits, j):
            return
        if e == m:
            if count > best:
                best, best_bits = count, list(bits)
            return
        if count + m - e <= best:
            return
        i, k = pairs[e]
        marks[e], bits[e] = e, 1
        if all(d.copy_through(marks, i, k) is None for d in detectors):
            dfs(e + 1, count + 1)
        marks[e], bits[e] = -1, 0
        dfs(e + 1, count)

    dfs(0, 0)
    witness = SimpleGraph.from_edge_indices(n, (e for e, b in enumerate(best_bits) if b), name=f"EX({n})")
    logger.debug(
        "ex(%d, %s) = %d after %d nodes in %.3fs",
        n,
        ",".join(members.names()),
        best,
        nodes,
        time.monotonic() - started,
    )
    return TuranResult(n, family, best, witness, nodes)


def subchromatic(family: GraphFamily) -> int:
    """Psi(family): the least chromatic number of a member, minus one."""
    if len(family) == 0:
        raise InvalidArgumentError("subchromatic number of an empty family is undefined")
    return min(chromatic_number(member) for member in family) - 1


@dataclass(frozen=True)
class ErdosGallaiReport:
    n: int
    r: int
    path_ex: int
    path_bound: Fraction
    cycle_ex: int
    cycle_bound: Fraction

    @property
    def path_slack(self) -> Fraction:
        return self.path_bound - self.path_ex

    @property
    def cycle_slack(self) -> Fraction:
        return self.cycle_bound - self.cycle_ex

    @property
    def holds(self) -> bool:
        return self.path_slack >= 0 and self.cycle_slack >= 0


def long_cycle_family(n: int, r: int) -> GraphFamily:
    """Cycles of every length from r + 1 up to n."""
    return GraphFamily.from_graphs(cycle_graph(k) for k in range(max(r + 1, 3), n + 1))


def erdos_gallai_check(n: int, r: int) -> ErdosGallaiReport:
    """Measure ex(n, P_r) against (r - 2) n / 2 and the long-cycle Turán number against r (n - 1) / 2."""
    if not 2 <= r <= n:
        raise InvalidArgumentError(f"erdos_gallai_check needs 2 <= r <= n, got n={n}, r={r}")
    paths = ex_exact(n, GraphFamily((path_graph(r),)))
    cycles = ex_exact(n, long_cycle_family(n, r))
    report = ErdosGallaiReport(n, r, paths.value, Fraction((r - 2) * n, 2), cycles.value, Fraction(r * (n - 1), 2))
    if not report.holds:
        logger.warning("Erdős–Gallai bound violated at n=%d, r=%d: %s", n, r, report)
    return report


@dataclass(frozen=True)
class CliqueConsistency:
    t: int
    psi: int
    b: int

    @property
    def consistent(self) -> bool:
        return self.psi == self.b


def clique_consistency(t: int) -> CliqueConsistency:
    """Compare Psi of the matching-deleted family of K_t with floor((t - 1) / 2)."""
    if t < 3:
        raise InvalidArgumentError(f"clique_consistency needs t >= 3, got t={t}")
    psi = subchromatic(reduced_family(SimpleGraph.complete(t), minimal_only=True))
    return CliqueConsistency(t, psi, (t - 1) // 2)


__all__ = [
    "DEFAULT_ORDERLY_VERTICES",
    "MAX_TURAN_VERTICES",
    "CliqueConsistency",
    "ErdosGallaiReport",
    "TuranResult",
    "clique_consistency",
    "erdos_gallai_check",
    "ex_exact",
    "long_cycle_family",
    "subchromatic",
]
