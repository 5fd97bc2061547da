"""Properly colored and rainbow copies of a pattern inside an edge-colored K_n.

All searches share one backtracking skeleton: pattern vertices are placed in a
fixed order that keeps the placed part connected where possible, and a partial
map is abandoned as soon as the pattern edges mapped so far break the
forbidden-copy predicate.  Host edges whose color is negative count as
missing, which is how the exact solver restricts detection to the colored
prefix of K_n.
"""

from __future__ import annotations

import logging
from collections.abc import Sequence
from dataclasses import dataclass, field
from functools import cached_property

from .coloring import EdgeColoring, Embedding
from .errors import InvalidArgumentError
from .graphs import Edge, SimpleGraph
from .graphs.catalog import identify_pattern, load_pattern
from .graphs.invariants import automorphisms

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class _Plan:
    order: tuple[int, ...]
    # back[p]: (earlier pattern vertex, pattern edge id) for edges closing at position p
    back: tuple[tuple[tuple[int, int], ...], ...]
    adjacent: tuple[tuple[int, ...], ...]


def _greedy_order(g: SimpleGraph, start: Sequence[int] = ()) -> tuple[int, ...]:
    """Descending degree, ties by smaller label, preferring neighbors of placed vertices."""
    deg = g.degrees()
    adj = g.neighbors()
    order = list(start)
    placed = set(order)
    while len(order) < g.vertex_count:
        frontier = [v for v in range(g.vertex_count) if v not in placed and adj[v] & placed]
        pool = frontier or [v for v in range(g.vertex_count) if v not in placed]
        v = min(pool, key=lambda u: (-deg[u], u))
        order.append(v)
        placed.add(v)
    return tuple(order)


def _make_plan(g: SimpleGraph, order: tuple[int, ...]) -> _Plan:
    position = {v: p for p, v in enumerate(order)}
    edge_id = {e: k for k, e in enumerate(g.edges)}
    back: list[list[tuple[int, int]]] = [[] for _ in order]
    for u, v in g.edges:
        early, late = (u, v) if position[u] < position[v] else (v, u)
        back[position[late]].append((early, edge_id[(u, v)]))
    adjacent: list[list[int]] = [[] for _ in g.edges]
    for p, q in g.adjacent_edge_pairs():
        adjacent[p].append(q)
        adjacent[q].append(p)
    return _Plan(order, tuple(tuple(b) for b in back), tuple(tuple(a) for a in adjacent))


@dataclass(frozen=True)
class PatternSpec:
    """A forbidden pattern together with the data detection needs about it.

    Derived data is computed on first use and cached on the instance.
    """

    graph: SimpleGraph
    token: str = ""
    _plans: dict[Edge | None, _Plan] = field(default_factory=dict[Edge | None, _Plan], compare=False, repr=False)

    @classmethod
    def parse(cls, text: str) -> PatternSpec:
        """Catalog token or path to a pattern file."""
        return cls(load_pattern(text), text.strip())

    @classmethod
    def from_graph(cls, g: SimpleGraph) -> PatternSpec:
        return cls(g, g.name)

    @property
    def name(self) -> str:
        return self.token or self.graph.name or str(self.graph)

    def identify(self) -> str | None:
        return identify_pattern(self.graph)

    @cached_property
    def automorphisms(self) -> tuple[tuple[int, ...], ...]:
        return tuple(automorphisms(self.graph))

    @cached_property
    def edge_orbit_representatives(self) -> tuple[Edge, ...]:
        """One oriented edge (a, b) per orbit of oriented pattern edges under the automorphisms."""
        reps: set[Edge] = set()
        for u, v in self.graph.edges:
            for a, b in ((u, v), (v, u)):
                reps.add(min((sigma[a], sigma[b]) for sigma in self.automorphisms))
        return tuple(sorted(reps))

    @cached_property
    def adjacent_pairs(self) -> tuple[tuple[int, int], ...]:
        return tuple(self.graph.adjacent_edge_pairs())

    @property
    def has_adjacent_edges(self) -> bool:
        return bool(self.adjacent_pairs)

    @cached_property
    def vertex_order(self) -> tuple[int, ...]:
        return _greedy_order(self.graph)

    def plan(self, anchor: Edge | None = None) -> _Plan:
        plan = self._plans.get(anchor)
        if plan is None:
            order = self.vertex_order if anchor is None else _greedy_order(self.graph, anchor)
            plan = _make_plan(self.graph, order)
            self._plans[anchor] = plan
        return plan


def _as_spec(pattern: SimpleGraph | PatternSpec) -> PatternSpec:
    return pattern if isinstance(pattern, PatternSpec) else PatternSpec.from_graph(pattern)


def _search(
    plan: _Plan,
    vertex_count: int,
    edge_count: int,
    n: int,
    colors: Sequence[int],
    rainbow: bool,
    fixed: Sequence[int] = (),
) -> list[int] | None:
    """Backtracking embedding search; ``fixed`` pins the first positions of the order."""
    order, back, adjacent = plan.order, plan.back, plan.adjacent
    images = [-1] * vertex_count
    edge_color = [-1] * edge_count
    seen: set[int] = set()
    last = len(order)

    def place(p: int, used: int) -> bool:
        if p == last:
            return True
        v = order[p]
        candidates: Sequence[int] = (fixed[p],) if p < len(fixed) else range(n)
        for w in candidates:
            if (used >> w) & 1:
                continue
            assigned: list[int] = []
            ok = True
            for u, f in back[p]:
                x = images[u]
                lo, hi = (x, w) if x < w else (w, x)
                c = colors[hi * (hi - 1) // 2 + lo]
                if c < 0:
                    ok = False
                    break
                if rainbow:
                    if c in seen:
                        ok = False
                        break
                    seen.add(c)
                elif any(edge_color[h] == c for h in adjacent[f]):
                    ok = False
                    break
                edge_color[f] = c
                assigned.append(f)
            if ok:
                images[v] = w
                if place(p + 1, used | (1 << w)):
                    return True
                images[v] = -1
            for f in assigned:
                if rainbow:
                    seen.discard(edge_color[f])
                edge_color[f] = -1
        return False

    if place(0, 0):
        return images
    return None


def _find(col: EdgeColoring, pattern: SimpleGraph | PatternSpec, rainbow: bool) -> Embedding | None:
    spec = _as_spec(pattern)
    g = spec.graph
    if g.vertex_count > col.n:
        return None
    images = _search(spec.plan(), g.vertex_count, g.edge_count, col.n, col.colors, rainbow)
    if images is None:
        return None
    return Embedding(g, tuple(images))


def find_pc_embedding(col: EdgeColoring, pattern: SimpleGraph | PatternSpec) -> Embedding | None:
    """First properly colored embedding of ``pattern`` in search order, if any."""
    return _find(col, pattern, rainbow=False)


def find_rainbow_embedding(col: EdgeColoring, pattern: SimpleGraph | PatternSpec) -> Embedding | None:
    return _find(col, pattern, rainbow=True)


def contains_rainbow(col: EdgeColoring, pattern: SimpleGraph | PatternSpec) -> bool:
    return find_rainbow_embedding(col, pattern) is not None


def _image_colors(col: EdgeColoring, emb: Embedding) -> list[int]:
    if any(not 0 <= w < col.n for w in emb.map):
        raise InvalidArgumentError(f"embedding {emb} leaves K{col.n}")
    return [col.colors[e] for e in emb.host_edge_indices(col.n)]


def is_properly_colored(col: EdgeColoring, emb: Embedding) -> bool:
    colors = _image_colors(col, emb)
    return all(colors[p] != colors[q] for p, q in emb.pattern.adjacent_edge_pairs())


def is_rainbow(col: EdgeColoring, emb: Embedding) -> bool:
    colors = _image_colors(col, emb)
    return len(set(colors)) == len(colors)


class CopyDetector:
    """Finds forbidden copies that use one given host edge.

    Only copies mapping an edge-orbit representative (a, b) onto the host edge
    (i, j) are tried; every copy through (i, j) is equivalent to one of these
    under a pattern automorphism.
    """

    def __init__(self, spec: PatternSpec, n: int, rainbow: bool = False) -> None:
        self.spec = spec
        self.n = n
        self.rainbow = rainbow
        self._anchored = [spec.plan(rep) for rep in spec.edge_orbit_representatives]
        logger.debug(
            "copy detector for %s on K%d: %d anchors, rainbow=%s", spec.name, n, len(self._anchored), rainbow
        )

    def copy_through(self, colors: Sequence[int], i: int, j: int) -> list[int] | None:
        """Images of a forbidden copy through the host edge (i, j), if one exists."""
        g = self.spec.graph
        for plan in self._anchored:
            images = _search(plan, g.vertex_count, g.edge_count, self.n, colors, self.rainbow, fixed=(i, j))
            if images is not None:
                return images
        return None


__all__ = [
    "CopyDetector",
    "PatternSpec",
    "contains_rainbow",
    "find_pc_embedding",
    "find_rainbow_embedding",
    "is_properly_colored",
    "is_rainbow",
]
