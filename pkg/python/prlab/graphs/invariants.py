"""Isomorphism-level utilities: subgraph containment, chromatic number,
canonical forms and automorphism groups."""

from __future__ import annotations

import logging
from collections.abc import Sequence
from functools import lru_cache
from itertools import permutations

from networkx.algorithms.isomorphism import GraphMatcher

from ..errors import ResourceLimitError
from . import MAX_EXACT_VERTICES, SimpleGraph, colex_pairs, edge_index

logger = logging.getLogger(__name__)


def _check_cap(g: SimpleGraph, what: str) -> None:
    if g.vertex_count > MAX_EXACT_VERTICES:
        raise ResourceLimitError(what, "MAX_EXACT_VERTICES", MAX_EXACT_VERTICES, g.vertex_count)


def is_subgraph(pattern: SimpleGraph, host: SimpleGraph) -> bool:
    """True iff ``host`` has a (not necessarily induced) subgraph isomorphic to ``pattern``."""
    if pattern.vertex_count > host.vertex_count or pattern.edge_count > host.edge_count:
        return False
    if pattern.edge_count == 0:
        return True
    matcher = GraphMatcher(host.to_networkx(), pattern.to_networkx())
    return bool(matcher.subgraph_is_monomorphic())


def chromatic_number(g: SimpleGraph) -> int:
    """Exact chromatic number by DSATUR-ordered branch and bound."""
    _check_cap(g, "chromatic_number")
    n = g.vertex_count
    if n == 0:
        return 0
    if g.edge_count == 0:
        return 1

    adj = g.neighbors()
    colors = [-1] * n
    best = n

    def pick() -> int | None:
        uncolored = [v for v in range(n) if colors[v] < 0]
        if not uncolored:
            return None
        return max(uncolored, key=lambda v: (len({colors[u] for u in adj[v] if colors[u] >= 0}), len(adj[v]), -v))

    def backtrack(used: int) -> None:
        nonlocal best
        v = pick()
        if v is None:
            best = min(best, used)
            return
        blocked = {colors[u] for u in adj[v]}
        # a fresh color is only tried once, as ``used``
        for c in range(min(used + 1, best - 1)):
            if c in blocked:
                continue
            colors[v] = c
            backtrack(max(used, c + 1))
            colors[v] = -1
            if best <= used:
                return

    backtrack(0)
    return best


def _degree_classes(g: SimpleGraph) -> tuple[list[int], list[int]]:
    deg = g.degrees()
    slots = sorted(deg, reverse=True)
    return deg, slots


def canonical_form(g: SimpleGraph) -> bytes:
    """Isomorphism-invariant encoding of ``g``.

    The encoding is the lexicographically largest colex adjacency string over
    all relabelings that list vertices by non-increasing degree, prefixed by
    the vertex count.  Partial labelings whose string prefix already falls
    below the best one found are abandoned.
    """
    _check_cap(g, "canonical_form")
    n = g.vertex_count
    masks = g.adjacency_masks()
    deg, slots = _degree_classes(g)

    best: list[int] = []
    blocks: list[int] = []
    order: list[int] = []
    placed = 0

    def block_of(v: int) -> int:
        value = 0
        for u in order:
            value = (value << 1) | ((masks[v] >> u) & 1)
        return value

    def extend(p: int) -> None:
        nonlocal best, placed
        if p == n:
            if blocks > best:
                best = list(blocks)
            return
        for v in range(n):
            if (placed >> v) & 1 or deg[v] != slots[p]:
                continue
            blocks.append(block_of(v))
            if best and blocks < best[: p + 1]:
                blocks.pop()
                continue
            order.append(v)
            placed |= 1 << v
            extend(p + 1)
            placed &= ~(1 << v)
            order.pop()
            blocks.pop()

    extend(0)

    bits = 0
    width = 0
    for p, block in enumerate(best):
        bits = (bits << p) | block
        width += p
    return bytes([n]) + bits.to_bytes((width + 7) // 8, "big")


def is_isomorphic(g: SimpleGraph, h: SimpleGraph) -> bool:
    if g.vertex_count != h.vertex_count or g.edge_count != h.edge_count:
        return False
    if g.degree_sequence() != h.degree_sequence():
        return False
    return canonical_form(g) == canonical_form(h)


def automorphisms(g: SimpleGraph) -> list[tuple[int, ...]]:
    """All automorphisms of ``g`` as vertex maps, identity first."""
    _check_cap(g, "automorphisms")
    n = g.vertex_count
    masks = g.adjacency_masks()
    deg = g.degrees()
    image = [-1] * n
    found: list[tuple[int, ...]] = []

    def extend(v: int, used: int) -> None:
        if v == n:
            found.append(tuple(image))
            return
        for w in range(n):
            if (used >> w) & 1 or deg[w] != deg[v]:
                continue
            ok = True
            for u in range(v):
                if ((masks[v] >> u) & 1) != ((masks[w] >> image[u]) & 1):
                    ok = False
                    break
            if ok:
                image[v] = w
                extend(v + 1, used | (1 << w))
        image[v] = -1

    extend(0, 0)
    logger.debug("%s has %d automorphisms", g, len(found))
    return found


@lru_cache(maxsize=None)
def _prefix_sources(j: int) -> tuple[tuple[int, ...], ...]:
    pairs = colex_pairs(j)
    identity = tuple(range(j))
    return tuple(
        tuple(edge_index(min(sigma[a], sigma[b]), max(sigma[a], sigma[b]), j) for a, b in pairs)
        for sigma in permutations(range(j))
        if sigma != identity
    )


def is_lex_maximal_prefix(values: Sequence[int], j: int, renormalize: bool = False) -> bool:
    """True iff no relabeling of vertices 0..j-1 makes the first C(j, 2) entries lexicographically larger.

    ``values`` is indexed by colex edge index.  With ``renormalize`` the
    relabeled entries are renumbered by first appearance before comparing,
    which is how colorings up to color relabeling compare.
    """
    for source in _prefix_sources(j):
        relabel: dict[int, int] = {}
        for t, s in enumerate(source):
            x = values[s]
            if renormalize:
                x = relabel.setdefault(x, len(relabel))
            y = values[t]
            if x != y:
                if x > y:
                    return False
                break
    return True


__all__ = [
    "automorphisms",
    "canonical_form",
    "chromatic_number",
    "is_isomorphic",
    "is_lex_maximal_prefix",
    "is_subgraph",
]
