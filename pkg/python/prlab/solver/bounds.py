"""Everything known about pr(K_n, G) for one (n, G), gathered into a bracket."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from math import comb

from ..constructions import (
    PATH_FORMULA_PROVED_FROM,
    applicable_constructions,
    cycle_conjecture_value,
    cycle_threshold_value,
    path_formula_provenance,
    path_formula_value,
)
from ..detect import PatternSpec
from ..enums import Provenance
from ..graphs import SimpleGraph, pair_count
from ..graphs.catalog import identify_pattern
from ..turan import CliqueConsistency, clique_consistency
from .profile import SearchBudget
from .search import SearchResult, pr_exact

logger = logging.getLogger(__name__)

# Largest n for which a report runs the Turán engine or the exact search by default.
REPORT_TURAN_MAX_VERTICES = 7
REPORT_SEARCH_MAX_VERTICES = 7
# Largest clique pattern whose matching-deleted family is checked against floor((t - 1) / 2).
REPORT_CLIQUE_CHECK_MAX_VERTICES = 7


@dataclass(frozen=True)
class Bound:
    value: int
    source: str
    provenance: Provenance

    def __str__(self) -> str:
        return f"{self.value} ({self.source}, {self.provenance.value})"


@dataclass(frozen=True)
class KnownValues:
    exact: tuple[Bound, ...] = ()
    upper: tuple[Bound, ...] = ()
    conjectured: tuple[Bound, ...] = ()


def _parameter(token: str, prefix: str) -> int | None:
    if token.startswith(prefix) and token[len(prefix) :].isdigit():
        return int(token[len(prefix) :])
    return None


def known_values(n: int, pattern: SimpleGraph) -> KnownValues:
    """Published values of pr(K_n, G) for catalog patterns, with the range they are proved in."""
    token = identify_pattern(pattern)
    if token is None or n < pattern.vertex_count:
        return KnownValues()
    exact: list[Bound] = []
    upper: list[Bound] = []
    conjectured: list[Bound] = []

    paths = {3: 1, 4: 2, 5: 3, 6: n}
    length = _parameter(token, "P")
    if length is not None:
        if length in paths:
            exact.append(Bound(paths[length], f"P{length} exact", Provenance.PROVED_RANGE))
        elif length >= 4:
            value = path_formula_value(n, length)
            provenance = path_formula_provenance(n, length)
            if provenance is Provenance.PROVED_RANGE:
                exact.append(Bound(value, "path formula", provenance))
            elif length < PATH_FORMULA_PROVED_FROM:
                conjectured.append(Bound(value, "path formula", provenance))

    cycles = {4: n, 5: n + 2, 6: n + 5}
    k = _parameter(token, "C")
    if token == "K3":
        exact.append(Bound(n - 1, "C3 exact", Provenance.PROVED_RANGE))
    if k is not None:
        if k == n:
            exact.append(Bound(comb(n - 1, 2) + 1, "Hamiltonian cycle exact", Provenance.PROVED_RANGE))
        elif k in cycles:
            exact.append(Bound(cycles[k], f"C{k} exact", Provenance.PROVED_RANGE))
        if k >= 4:
            conjectured.append(Bound(cycle_conjecture_value(n, k), "cycle conjecture", Provenance.CONJECTURED))
        if k >= 5:
            threshold = cycle_threshold_value(n, k)
            conjectured.append(Bound(threshold, "cycle threshold conjecture", Provenance.CONJECTURED))

    if token == "K4-":
        exact.append(Bound(3 * (n - 1) // 2, "K4- exact", Provenance.PROVED_RANGE))
    if token == "K2,3":
        upper.append(Bound(2 * n - 1, "K2,3 upper", Provenance.PROVED_RANGE))
    return KnownValues(tuple(exact), tuple(upper), tuple(conjectured))


@dataclass(frozen=True)
class BoundsReport:
    n: int
    pattern: SimpleGraph
    lower: tuple[Bound, ...]
    upper: tuple[Bound, ...]
    conjectured: tuple[Bound, ...] = ()
    search: SearchResult | None = field(default=None, compare=False)
    clique_check: CliqueConsistency | None = None

    @property
    def best_lower(self) -> Bound:
        return max(self.lower, key=lambda b: b.value)

    @property
    def best_upper(self) -> Bound:
        return min(self.upper, key=lambda b: b.value)

    @property
    def bracket(self) -> tuple[int, int]:
        return self.best_lower.value, self.best_upper.value

    @property
    def exact(self) -> bool:
        return self.best_lower.value == self.best_upper.value

    @property
    def consistent(self) -> bool:
        if self.clique_check is not None and not self.clique_check.consistent:
            return False
        return self.best_lower.value <= self.best_upper.value

    def lines(self) -> list[str]:
        lower, upper = self.best_lower, self.best_upper
        out = [
            f"n={self.n}",
            f"pattern={self.pattern.name or self.pattern}",
            f"lower={lower.value}",
            f"lower_source={lower.source}",
            f"lower_provenance={lower.provenance.value}",
            f"upper={upper.value}",
            f"upper_source={upper.source}",
            f"upper_provenance={upper.provenance.value}",
            f"exact={str(self.exact).lower()}",
        ]
        out += [f"conjectured={b.value} ({b.source}, {b.provenance.value})" for b in self.conjectured]
        if self.clique_check is not None:
            check = self.clique_check
            out += [f"clique_psi={check.psi}", f"clique_psi_expected={check.b}"]
        return out


def _clique_check(g: SimpleGraph) -> CliqueConsistency | None:
    core = g.without_isolated()
    t = core.vertex_count
    if 3 <= t <= REPORT_CLIQUE_CHECK_MAX_VERTICES and core.edge_count == comb(t, 2):
        return clique_consistency(t)
    return None


def bounds_report(
    n: int,
    pattern: SimpleGraph | PatternSpec,
    budget: SearchBudget | None = None,
    search: bool = True,
    turan: bool = True,
) -> BoundsReport:
    """Lower bounds from constructions, the Turán bound and search; upper bounds
    from known results and search.  Conjectured values are listed but never
    used as bounds."""
    spec = pattern if isinstance(pattern, PatternSpec) else PatternSpec.from_graph(pattern)
    g = spec.graph
    m = pair_count(n)
    if n < g.vertex_count:
        vacuous = Bound(m, "no copy fits", Provenance.TRIVIAL)
        return BoundsReport(n, g, (vacuous,), (vacuous,))
    if not g.without_isolated().adjacent_edge_pairs():
        every = Bound(0, "every copy is properly colored", Provenance.TRIVIAL)
        return BoundsReport(n, g, (every,), (every,))

    lower = [Bound(1, "monochromatic", Provenance.TRIVIAL)]
    upper = [Bound(m, "all edges distinct", Provenance.TRIVIAL)]
    seeds = applicable_constructions(n, g, REPORT_TURAN_MAX_VERTICES if turan else 0)
    lower += [Bound(r.claimed_colors, r.formula_name, r.provenance) for r in seeds]

    known = known_values(n, g)
    lower += known.exact
    upper += known.exact + known.upper

    result: SearchResult | None = None
    if search and n <= REPORT_SEARCH_MAX_VERTICES:
        result = pr_exact(n, spec, budget)
        lower.append(Bound(result.value, "search", Provenance.COMPUTED))
        upper.append(Bound(result.upper, "search", Provenance.COMPUTED))

    report = BoundsReport(n, g, tuple(lower), tuple(upper), known.conjectured, result, _clique_check(g))
    check = report.clique_check
    if check is not None and not check.consistent:
        logger.error("reduced family of K%d has psi=%d, expected %d", check.t, check.psi, check.b)
    if report.best_lower.value > report.best_upper.value:
        logger.error(
            "inconsistent bounds for pr(K%d, %s): %s > %s", n, spec.name, report.best_lower, report.best_upper
        )
    return report


__all__ = [
    "REPORT_CLIQUE_CHECK_MAX_VERTICES",
    "REPORT_SEARCH_MAX_VERTICES",
    "REPORT_TURAN_MAX_VERTICES",
    "Bound",
    "BoundsReport",
    "KnownValues",
    "bounds_report",
    "known_values",
]
