"""Matchings and the matching-deleted family G' = {G - M : M a matching of G}."""

from __future__ import annotations

import logging
from collections.abc import Iterable, Iterator
from dataclasses import dataclass

from ..errors import InvalidArgumentError
from . import Edge, SimpleGraph
from .catalog import identify_pattern
from .invariants import canonical_form, is_subgraph

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Matching:
    """Pairwise vertex-disjoint edges of some host graph."""

    edges: tuple[Edge, ...] = ()

    def __post_init__(self) -> None:
        covered: set[int] = set()
        for u, v in self.edges:
            if u in covered or v in covered:
                raise InvalidArgumentError(f"edge ({u}, {v}) shares a vertex with another matching edge")
            covered.update((u, v))

    def __len__(self) -> int:
        return len(self.edges)


def enumerate_matchings(g: SimpleGraph) -> list[Matching]:
    """Every matching of ``g``, the empty one first, then by size and colex position."""
    found: list[tuple[int, ...]] = []
    chosen: list[int] = []

    def extend(start: int, covered: int) -> None:
        found.append(tuple(chosen))
        for p in range(start, g.edge_count):
            u, v = g.edges[p]
            if (covered >> u) & 1 or (covered >> v) & 1:
                continue
            chosen.append(p)
            extend(p + 1, covered | (1 << u) | (1 << v))
            chosen.pop()

    extend(0, 0)
    found.sort(key=lambda positions: (len(positions), positions))
    return [Matching(tuple(g.edges[p] for p in positions)) for positions in found]


def _display_name(g: SimpleGraph, fallback: str) -> str:
    token = identify_pattern(g)
    if token is not None:
        return token
    if g.edge_count * 2 == g.vertex_count and all(d == 1 for d in g.degrees()):
        return f"{g.edge_count}K2"
    return fallback


@dataclass(frozen=True)
class GraphFamily:
    """Pairwise non-isomorphic graphs without isolated vertices."""

    members: tuple[SimpleGraph, ...] = ()

    def __post_init__(self) -> None:
        forms: set[bytes] = set()
        for member in self.members:
            if any(d == 0 for d in member.degrees()):
                raise InvalidArgumentError(f"family member {member} has an isolated vertex")
            form = canonical_form(member)
            if form in forms:
                raise InvalidArgumentError(f"family member {member} duplicates an earlier member up to isomorphism")
            forms.add(form)

    @classmethod
    def from_graphs(cls, graphs: Iterable[SimpleGraph]) -> GraphFamily:
        """Drop isolated vertices and edgeless graphs, then keep one graph per isomorphism class."""
        members: list[SimpleGraph] = []
        forms: set[bytes] = set()
        for g in graphs:
            core = g.without_isolated()
            if core.edge_count == 0:
                continue
            form = canonical_form(core)
            if form not in forms:
                forms.add(form)
                members.append(core)
        return cls(tuple(members))

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator[SimpleGraph]:
        return iter(self.members)

    def names(self) -> list[str]:
        return [m.name or str(m) for m in self.members]

    def minimal(self) -> GraphFamily:
        """Members that contain no other member; ex(n, .) is unchanged."""
        keep = [
            m
            for m in self.members
            if not any(o is not m and o.edge_count <= m.edge_count and is_subgraph(o, m) for o in self.members)
        ]
        return GraphFamily(tuple(keep))


def reduced_family(g: SimpleGraph, minimal_only: bool = False) -> GraphFamily:
    """The family {G - M} over all matchings M of ``g``, up to isomorphism.

    With ``minimal_only`` any member containing another member is dropped;
    a graph avoids the whole family iff it avoids the minimal members, so
    Turán numbers are the same either way.
    """
    if g.edge_count == 0:
        raise InvalidArgumentError("reduced_family needs a pattern with at least one edge")
    base = g.name or "G"
    graphs: list[SimpleGraph] = []
    for matching in enumerate_matchings(g):
        core = g.without_edges(matching.edges).without_isolated()
        if core.edge_count == 0:
            continue
        fallback = base if not len(matching) else f"{base}-{len(matching)}M"
        graphs.append(SimpleGraph(core.vertex_count, core.edges, name=_display_name(core, fallback)))
    family = GraphFamily.from_graphs(graphs)
    if minimal_only:
        family = family.minimal()
    logger.debug("reduced family of %s: %s", g, ", ".join(family.names()))
    return family


__all__ = ["GraphFamily", "Matching", "enumerate_matchings", "reduced_family"]
