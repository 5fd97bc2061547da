"""Small undirected simple graphs and colex edge indexing.

Edges of K_n are numbered in colex order: the pair (i, j) with i < j gets
index j(j-1)/2 + i.  Adding vertex n-1 to K_{n-1} therefore appends the
contiguous block [C(n-1, 2), C(n, 2)), which the searches rely on.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from math import isqrt
from typing import TYPE_CHECKING

from ..errors import InvalidArgumentError

if TYPE_CHECKING:
    import networkx as nx

Edge = tuple[int, int]

# Exact chromatic numbers, canonical forms and automorphisms are brute force.
MAX_EXACT_VERTICES = 16


def pair_count(n: int) -> int:
    return n * (n - 1) // 2


def edge_index(i: int, j: int, n: int) -> int:
    """Colex index of the pair (i, j), i < j, inside K_n."""
    if i >= j:
        raise InvalidArgumentError(f"edge ({i}, {j}) must have i < j")
    if i < 0 or j >= n:
        raise InvalidArgumentError(f"edge ({i}, {j}) out of range for n={n}")
    return j * (j - 1) // 2 + i


def edge_of_index(e: int, n: int) -> Edge:
    """Inverse of :func:`edge_index`."""
    if not 0 <= e < pair_count(n):
        raise InvalidArgumentError(f"edge index {e} out of range for n={n}")
    j = (1 + isqrt(1 + 8 * e)) // 2
    if j * (j - 1) // 2 > e:
        j -= 1
    return e - j * (j - 1) // 2, j


def colex_pairs(n: int) -> list[Edge]:
    """All pairs of K_n, position e holding the pair with index e."""
    return [(i, j) for j in range(n) for i in range(j)]


@dataclass(frozen=True)
class SimpleGraph:
    """An undirected simple graph on vertices 0..vertex_count-1.

    ``edges`` is normalized on construction: every pair is stored as (min, max)
    and the tuple is sorted in colex order.
    """

    vertex_count: int
    edges: tuple[Edge, ...] = ()
    name: str = field(default="", compare=False)

    def __post_init__(self) -> None:
        if self.vertex_count < 0:
            raise InvalidArgumentError(f"vertex_count must be non-negative, got {self.vertex_count}")
        normalized: set[Edge] = set()
        for u, v in self.edges:
            if u == v:
                raise InvalidArgumentError(f"loop at vertex {u}")
            a, b = (u, v) if u < v else (v, u)
            if a < 0 or b >= self.vertex_count:
                raise InvalidArgumentError(f"edge ({u}, {v}) out of range for {self.vertex_count} vertices")
            if (a, b) in normalized:
                raise InvalidArgumentError(f"duplicate edge ({a}, {b})")
            normalized.add((a, b))
        object.__setattr__(self, "edges", tuple(sorted(normalized, key=lambda p: (p[1], p[0]))))

    @classmethod
    def complete(cls, n: int, name: str = "") -> SimpleGraph:
        return cls(n, tuple(colex_pairs(n)), name=name or f"K{n}")

    @classmethod
    def empty(cls, n: int) -> SimpleGraph:
        return cls(n, ())

    @classmethod
    def from_edge_indices(cls, n: int, indices: Iterable[int], name: str = "") -> SimpleGraph:
        return cls(n, tuple(edge_of_index(e, n) for e in indices), name=name)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def __str__(self) -> str:
        label = self.name or "graph"
        return f"{label}(v={self.vertex_count}, e={self.edge_count})"

    def degrees(self) -> list[int]:
        deg = [0] * self.vertex_count
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return deg

    def degree_sequence(self) -> tuple[int, ...]:
        return tuple(sorted(self.degrees()))

    def neighbors(self) -> list[set[int]]:
        adj: list[set[int]] = [set() for _ in range(self.vertex_count)]
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return adj

    def adjacency_masks(self) -> list[int]:
        masks = [0] * self.vertex_count
        for u, v in self.edges:
            masks[u] |= 1 << v
            masks[v] |= 1 << u
        return masks

    def has_edge(self, u: int, v: int) -> bool:
        return ((u, v) if u < v else (v, u)) in set(self.edges)

    def edge_indices(self) -> list[int]:
        return [j * (j - 1) // 2 + i for i, j in self.edges]

    def adjacent_edge_pairs(self) -> list[tuple[int, int]]:
        """Index pairs (p, q), p < q, of edges in ``self.edges`` sharing a vertex."""
        pairs: list[tuple[int, int]] = []
        for p, (a, b) in enumerate(self.edges):
            for q in range(p + 1, self.edge_count):
                c, d = self.edges[q]
                if a in (c, d) or b in (c, d):
                    pairs.append((p, q))
        return pairs

    def relabel(self, perm: Sequence[int], name: str = "") -> SimpleGraph:
        """Image of the graph under the vertex map ``v -> perm[v]``."""
        return SimpleGraph(self.vertex_count, tuple((perm[u], perm[v]) for u, v in self.edges), name=name)

    def without_edges(self, removed: Iterable[Edge]) -> SimpleGraph:
        drop = {(u, v) if u < v else (v, u) for u, v in removed}
        return SimpleGraph(self.vertex_count, tuple(e for e in self.edges if e not in drop))

    def without_isolated(self) -> SimpleGraph:
        """Drop isolated vertices, keeping the relative order of the others."""
        used = sorted({v for e in self.edges for v in e})
        relabel = {v: k for k, v in enumerate(used)}
        return SimpleGraph(len(used), tuple((relabel[u], relabel[v]) for u, v in self.edges), name=self.name)

    def disjoint_union(self, other: SimpleGraph, name: str = "") -> SimpleGraph:
        shift = self.vertex_count
        return SimpleGraph(
            self.vertex_count + other.vertex_count,
            self.edges + tuple((u + shift, v + shift) for u, v in other.edges),
            name=name,
        )

    def to_networkx(self) -> nx.Graph:
        import networkx as nx

        g: nx.Graph = nx.Graph()
        g.add_nodes_from(range(self.vertex_count))
        g.add_edges_from(self.edges)
        return g


__all__ = [
    "Edge",
    "MAX_EXACT_VERTICES",
    "SimpleGraph",
    "colex_pairs",
    "edge_index",
    "edge_of_index",
    "pair_count",
]
