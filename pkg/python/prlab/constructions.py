"""Lower-bound colorings of K_n, each paired with its closed-form color count.

Every generator returns a :class:`ConstructionReport`; the coloring is
normalized and uses exactly ``claimed_colors`` colors.  Whether a coloring
really avoids a properly colored copy of its target is checked by the
verifier (``prlab verify``) and the test suite, not at construction time.
"""

from __future__ import annotations

import logging
from collections.abc import Callable, Iterable
from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil, comb

from .coloring import EdgeColoring
from .enums import Provenance
from .errors import InvalidArgumentError
from .graphs import SimpleGraph, edge_index, pair_count
from .graphs.catalog import complete_bipartite, cycle_graph, identify_pattern, k4_minus, path_graph
from .graphs.family import reduced_family
from .turan import MAX_TURAN_VERTICES, ex_exact

logger = logging.getLogger(__name__)

# Smallest l for which the path formula is proved, and then only for n >= 2 l^3.
PATH_FORMULA_PROVED_FROM = 27
# Largest n at which the Turán construction is offered as a seed.
TURAN_CONSTRUCTION_MAX_VERTICES = 7


@dataclass(frozen=True)
class ConstructionReport:
    coloring: EdgeColoring
    claimed_colors: int
    formula_name: str
    parameters: dict[str, int]
    target: SimpleGraph
    provenance: Provenance = Provenance.LOWER_BOUND_ONLY
    notes: tuple[str, ...] = field(default=())

    def report_lines(self) -> list[str]:
        """Side-car report as key=value lines."""
        lines = [f"formula={self.formula_name}", f"target={self.target.name}"]
        lines += [f"{key}={value}" for key, value in self.parameters.items()]
        lines += [f"claimed_colors={self.claimed_colors}", f"provenance={self.provenance.value}"]
        lines += [f"note={note}" for note in self.notes]
        return lines


class _Painter:
    """Accumulates raw colors on K_n, handing out fresh color ids."""

    def __init__(self, n: int) -> None:
        self.n = n
        self.raw = [-1] * pair_count(n)
        self._next = 0

    def fresh(self) -> int:
        self._next += 1
        return self._next - 1

    def paint(self, i: int, j: int, c: int) -> None:
        self.raw[edge_index(i, j, self.n)] = c

    def rainbow(self, pairs: Iterable[tuple[int, int]]) -> None:
        for i, j in pairs:
            self.paint(i, j, self.fresh())

    def flood(self, c: int) -> None:
        self.raw = [c if x < 0 else x for x in self.raw]

    def finish(self) -> EdgeColoring:
        if any(x < 0 for x in self.raw):
            raise AssertionError("construction left an edge uncolored")
        return EdgeColoring.from_raw(self.n, self.raw)


def _clique_pairs(vertices: list[int]) -> list[tuple[int, int]]:
    return [(vertices[a], vertices[b]) for b in range(len(vertices)) for a in range(b)]


def _paint_blocker(painter: _Painter, vertices: list[int], r: int) -> None:
    """1 + r colors on the clique over ``vertices`` with no properly colored P_{3+r}."""
    if r == 0:
        c = painter.fresh()
        for i, j in _clique_pairs(vertices):
            painter.paint(i, j, c)
        return
    u, rest = vertices[0], vertices[1:]
    c_u = painter.fresh()
    for w in rest:
        painter.paint(u, w, c_u)
    if r == 2:
        v, rest = rest[0], rest[1:]
        c_v = painter.fresh()
        for w in rest:
            painter.paint(v, w, c_v)
    c_rest = painter.fresh()
    for i, j in _clique_pairs(rest):
        painter.paint(i, j, c_rest)


def small_path_blocker(n: int, r: int) -> ConstructionReport:
    """Colorings with 1 + r colors and no properly colored P_{3+r}, r in {0, 1, 2}."""
    if r not in (0, 1, 2):
        raise InvalidArgumentError(f"r must be 0, 1 or 2, got {r}")
    if n < 3 + r:
        raise InvalidArgumentError(f"small_path_blocker needs n >= {3 + r}, got n={n}")
    painter = _Painter(n)
    _paint_blocker(painter, list(range(n)), r)
    return ConstructionReport(
        painter.finish(), 1 + r, "path-blocker", {"n": n, "r": r}, path_graph(3 + r), Provenance.PROVED_RANGE
    )


def _join_count(n: int, a: int, r: int) -> int:
    return a * n - comb(a + 1, 2) + 1 + r


def _paint_join(n: int, a: int, r: int) -> EdgeColoring:
    """Rainbow on every edge touching the first ``a`` vertices, a blocker on the rest."""
    painter = _Painter(n)
    painter.rainbow((i, j) for j in range(n) for i in range(min(a, j)))
    _paint_blocker(painter, list(range(a, n)), r)
    return painter.finish()


def _paint_clique(n: int, size: int) -> EdgeColoring:
    painter = _Painter(n)
    painter.rainbow(_clique_pairs(list(range(size))))
    painter.flood(painter.fresh())
    return painter.finish()


def path_lower_bound(n: int, length: int, variant: str = "join") -> ConstructionReport:
    """Colorings of K_n without a properly colored path on ``length`` vertices."""
    if length < 4:
        raise InvalidArgumentError(f"path_lower_bound needs l >= 4, got l={length}")
    if n < length:
        raise InvalidArgumentError(f"path_lower_bound needs n >= l, got n={n}, l={length}")
    target = path_graph(length)
    if variant == "clique":
        claimed = comb(length - 3, 2) + 1
        return ConstructionReport(_paint_clique(n, length - 3), claimed, "path-clique", {"n": n, "l": length}, target)
    if variant == "join":
        a, r = length // 3 - 1, length % 3
        return ConstructionReport(
            _paint_join(n, a, r),
            _join_count(n, a, r),
            "path-join",
            {"n": n, "l": length, "r_l": r},
            target,
            path_formula_provenance(n, length),
        )
    raise InvalidArgumentError(f"unknown path variant {variant!r}")


def cycle_lower_bound(n: int, k: int, variant: str = "join") -> ConstructionReport:
    if k < 4:
        raise InvalidArgumentError(f"cycle_lower_bound needs k >= 4, got k={k}")
    if n < k:
        raise InvalidArgumentError(f"cycle_lower_bound needs n >= k, got n={n}, k={k}")
    target = cycle_graph(k)
    params = {"n": n, "k": k}
    if variant == "clique":
        stated = comb(k - 1, 2) + n - k + 1
        claimed = comb(k - 1, 2) + 1
        notes: tuple[str, ...] = ()
        if stated > claimed:
            notes = (f"stated bound C(k-1,2)+n-k+1={stated} exceeds this coloring by {stated - claimed}",)
        return ConstructionReport(_paint_clique(n, k - 1), claimed, "cycle-clique", params, target, notes=notes)
    if variant == "clique-stars":
        painter = _Painter(n)
        painter.rainbow(_clique_pairs(list(range(k - 1))))
        for v in range(k - 1, n):
            c = painter.fresh()
            for u in range(v):
                painter.paint(u, v, c)
        return ConstructionReport(
            painter.finish(), comb(k - 1, 2) + n - k + 1, "cycle-clique-stars", params, target
        )
    if variant == "join":
        a, r = (k - 1) // 3, (k - 1) % 3
        return ConstructionReport(
            _paint_join(n, a, r), _join_count(n, a, r), "cycle-join", {**params, "r_k-1": r}, target
        )
    raise InvalidArgumentError(f"unknown cycle variant {variant!r}")


def k4minus_lower_bound(n: int) -> ConstructionReport:
    """Triangle 0,1,2 plus a matching of the remaining vertices, each matched
    vertex carrying one color back to everything placed before it."""
    if n < 4:
        raise InvalidArgumentError(f"k4minus_lower_bound needs n >= 4, got n={n}")
    painter = _Painter(n)
    painter.rainbow([(0, 1), (0, 2), (1, 2)])
    pairs = (n - 3) // 2
    for p in range(pairs):
        x, y = 3 + 2 * p, 4 + 2 * p
        for end in (x, y):
            c = painter.fresh()
            for u in range(x):
                painter.paint(u, end, c)
        painter.paint(x, y, painter.fresh())
    if n % 2 == 0:
        c = painter.fresh()
        for u in range(n - 1):
            painter.paint(u, n - 1, c)
    return ConstructionReport(
        painter.finish(), 3 * (n - 1) // 2, "k4minus", {"n": n}, k4_minus(), Provenance.PROVED_RANGE
    )


def k23_lower_bound(n: int) -> ConstructionReport:
    """Blocks of four (the last of size 1..4); edges between blocks i < j get color c_i."""
    if n < 5:
        raise InvalidArgumentError(f"k23_lower_bound needs n >= 5, got n={n}")
    k = (n - 1) // 4
    r = n - 4 * k
    block = [min(v // 4, k) for v in range(n)]
    painter = _Painter(n)
    for b in range(k + 1):
        painter.rainbow(_clique_pairs([v for v in range(n) if block[v] == b]))
    between = [painter.fresh() for _ in range(k)]
    for j in range(n):
        for i in range(j):
            if block[i] != block[j]:
                painter.paint(i, j, between[min(block[i], block[j])])
    return ConstructionReport(
        painter.finish(), 7 * k + comb(r, 2), "k23", {"n": n, "k": k, "r": r}, complete_bipartite(2, 3)
    )


def turan_based_lower_bound(n: int, g: SimpleGraph) -> ConstructionReport:
    """Rainbow extremal graph for the matching-deleted family plus one flood color."""
    result = ex_exact(n, reduced_family(g, minimal_only=True))
    painter = _Painter(n)
    painter.rainbow(result.witness.edges)
    notes: tuple[str, ...] = ()
    if result.value < pair_count(n):
        painter.flood(painter.fresh())
        claimed = result.value + 1
    else:
        claimed = result.value
        notes = ("extremal graph is complete; no flood color",)
    logger.debug("turan-based coloring for %s on K%d: ex=%d", g, n, result.value)
    return ConstructionReport(painter.finish(), claimed, "turan", {"n": n, "ex": result.value}, g, notes=notes)


def path_formula_value(n: int, length: int) -> int:
    """(floor(l/3) - 1) n - C(floor(l/3), 2) + 1 + (l mod 3) for paths on l = ``length`` vertices."""
    if length < 4:
        raise InvalidArgumentError(f"l must be at least 4, got {length}")
    return _join_count(n, length // 3 - 1, length % 3)


def path_formula_provenance(n: int, length: int) -> Provenance:
    if length < PATH_FORMULA_PROVED_FROM:
        return Provenance.UNPROVED_RANGE
    if n >= 2 * length**3:
        return Provenance.PROVED_RANGE
    return Provenance.LOWER_BOUND_ONLY


def cycle_conjecture_value(n: int, k: int) -> int:
    """Conjectured cycle value; never a proven bound."""
    if k < 4 or n < k:
        raise InvalidArgumentError(f"cycle_conjecture_value needs n >= k >= 4, got n={n}, k={k}")
    a, r = (k - 1) // 3, (k - 1) % 3
    return max(comb(k - 1, 2) + n - k + 1, _join_count(n, a, r))


def cycle_threshold_value(n: int, k: int) -> int:
    """Older conjectured value for C_k: one less than the color count conjectured to force a
    properly colored C_k.  It splits at n = (10l^2 - 6l - 18) / (6(l - 3)) with l = k - 1."""
    if k < 5 or n < k:
        raise InvalidArgumentError(f"cycle_threshold_value needs n >= k >= 5, got n={n}, k={k}")
    length = k - 1
    cut = Fraction(10 * length * length - 6 * length - 18, 6 * (length - 3))
    if n <= cut:
        threshold = Fraction(length * (length + 1), 2) + n - length + 1
    else:
        threshold = Fraction(length * n, 3) - Fraction(length * (length + 3), 18) + 2
    return ceil(threshold) - 1


def _need(params: dict[str, int], *names: str) -> list[int]:
    missing = [name for name in names if name not in params]
    if missing:
        raise InvalidArgumentError(f"missing parameter(s): {', '.join(missing)}")
    return [params[name] for name in names]


def _need_pattern(pattern: SimpleGraph | None) -> SimpleGraph:
    if pattern is None:
        raise InvalidArgumentError("missing parameter(s): pattern")
    return pattern


CONSTRUCTIONS: dict[str, Callable[[dict[str, int], SimpleGraph | None], ConstructionReport]] = {
    "path-blocker": lambda p, _: small_path_blocker(*_need(p, "n", "r")),
    "path-clique": lambda p, _: path_lower_bound(*_need(p, "n", "l"), variant="clique"),
    "path-join": lambda p, _: path_lower_bound(*_need(p, "n", "l"), variant="join"),
    "cycle-clique": lambda p, _: cycle_lower_bound(*_need(p, "n", "k"), variant="clique"),
    "cycle-clique-stars": lambda p, _: cycle_lower_bound(*_need(p, "n", "k"), variant="clique-stars"),
    "cycle-join": lambda p, _: cycle_lower_bound(*_need(p, "n", "k"), variant="join"),
    "k4minus": lambda p, _: k4minus_lower_bound(*_need(p, "n")),
    "k23": lambda p, _: k23_lower_bound(*_need(p, "n")),
    "turan": lambda p, g: turan_based_lower_bound(*_need(p, "n"), _need_pattern(g)),
}


def build_construction(name: str, params: dict[str, int], pattern: SimpleGraph | None = None) -> ConstructionReport:
    try:
        builder = CONSTRUCTIONS[name]
    except KeyError:
        raise InvalidArgumentError(
            f"unknown construction {name!r}; expected one of {', '.join(sorted(CONSTRUCTIONS))}"
        ) from None
    return builder(params, pattern)


def applicable_constructions(
    n: int, g: SimpleGraph, turan_max_vertices: int = TURAN_CONSTRUCTION_MAX_VERTICES
) -> list[ConstructionReport]:
    """Every construction for ``g`` whose preconditions hold at ``n``.

    Catalog constructions apply when their target is isomorphic to ``g``; the
    Turán construction applies to any pattern with two adjacent edges, up to
    ``turan_max_vertices`` (0 turns it off).
    """
    found: list[ConstructionReport] = []
    token = identify_pattern(g)
    v = g.vertex_count
    if token == f"P{v}":
        if 3 <= v <= 5 and n >= v:
            found.append(small_path_blocker(n, v - 3))
        if 4 <= v <= n:
            found += [path_lower_bound(n, v, "clique"), path_lower_bound(n, v, "join")]
    elif token == f"C{v}" and 4 <= v <= n:
        found += [cycle_lower_bound(n, v, variant) for variant in ("clique", "clique-stars", "join")]
    elif token == "K4-" and n >= 4:
        found.append(k4minus_lower_bound(n))
    elif token == "K2,3" and n >= 5:
        found.append(k23_lower_bound(n))
    if v <= n <= min(turan_max_vertices, MAX_TURAN_VERTICES) and g.adjacent_edge_pairs():
        found.append(turan_based_lower_bound(n, g))
    return found


__all__ = [
    "CONSTRUCTIONS",
    "PATH_FORMULA_PROVED_FROM",
    "TURAN_CONSTRUCTION_MAX_VERTICES",
    "ConstructionReport",
    "applicable_constructions",
    "build_construction",
    "cycle_conjecture_value",
    "cycle_lower_bound",
    "cycle_threshold_value",
    "k23_lower_bound",
    "k4minus_lower_bound",
    "path_formula_provenance",
    "path_formula_value",
    "path_lower_bound",
    "small_path_blocker",
    "turan_based_lower_bound",
]
