"""Named patterns and the plain-text pattern file format.

Catalog tokens::

    P<l>       path on l >= 2 vertices, labeled along the path
    C<k>       cycle on k >= 3 vertices, labeled around the cycle
    K<t>       complete graph, t >= 2
    K<s>,<t>   complete bipartite graph, s, t >= 1; part A is 0..s-1
    K4-        K4 minus the edge (2, 3)
    bull       triangle 0,1,2 with pendant edges (1, 3) and (2, 4)
    C<k>+      cycle on 0..k-1 with the pendant edge (0, k), k >= 3

Pattern files::

    p <vertex_count> <edge_count>
    e <i> <j>
    ...
"""

from __future__ import annotations

import re
from pathlib import Path

from ..errors import PatternParseError
from . import SimpleGraph
from .invariants import canonical_form

_TOKEN = re.compile(r"^(?:(?P<kind>[PCK])(?P<a>\d+)(?:,(?P<b>\d+))?(?P<plus>\+)?|(?P<k4m>K4-)|(?P<bull>bull))$")


def path_graph(vertices: int) -> SimpleGraph:
    return SimpleGraph(vertices, tuple((v, v + 1) for v in range(vertices - 1)), name=f"P{vertices}")


def cycle_graph(vertices: int) -> SimpleGraph:
    edges = [(v, v + 1) for v in range(vertices - 1)] + [(0, vertices - 1)]
    return SimpleGraph(vertices, tuple(edges), name=f"C{vertices}")


def complete_bipartite(s: int, t: int) -> SimpleGraph:
    edges = tuple((a, s + b) for a in range(s) for b in range(t))
    return SimpleGraph(s + t, edges, name=f"K{s},{t}")


def k4_minus() -> SimpleGraph:
    return SimpleGraph(4, ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3)), name="K4-")


def bull() -> SimpleGraph:
    return SimpleGraph(5, ((0, 1), (0, 2), (1, 2), (1, 3), (2, 4)), name="bull")


def pendant_cycle(k: int) -> SimpleGraph:
    cycle = cycle_graph(k)
    return SimpleGraph(k + 1, cycle.edges + ((0, k),), name=f"C{k}+")


def matching_graph(m: int) -> SimpleGraph:
    return SimpleGraph(2 * m, tuple((2 * i, 2 * i + 1) for i in range(m)), name=f"{m}K2")


def pattern_from_catalog(token: str) -> SimpleGraph:
    """Build the catalog graph named by ``token``."""
    match = _TOKEN.match(token.strip())
    if match is None:
        raise PatternParseError(f"unknown pattern token {token!r}")
    if match["k4m"]:
        return k4_minus()
    if match["bull"]:
        return bull()

    kind, a, b, plus = match["kind"], int(match["a"]), match["b"], match["plus"]
    if b is not None:
        if kind != "K" or plus:
            raise PatternParseError(f"unknown pattern token {token!r}")
        s, t = a, int(b)
        if s < 1 or t < 1:
            raise PatternParseError(f"K<s>,<t> needs s, t >= 1, got {token!r}")
        return complete_bipartite(s, t)
    if plus:
        if kind != "C":
            raise PatternParseError(f"unknown pattern token {token!r}")
        if a < 3:
            raise PatternParseError(f"C<k>+ needs k >= 3, got {token!r}")
        return pendant_cycle(a)
    if kind == "P":
        if a < 2:
            raise PatternParseError(f"P<l> needs l >= 2, got {token!r}")
        return path_graph(a)
    if kind == "C":
        if a < 3:
            raise PatternParseError(f"C<k> needs k >= 3, got {token!r}")
        return cycle_graph(a)
    if a < 2:
        raise PatternParseError(f"K<t> needs t >= 2, got {token!r}")
    return SimpleGraph.complete(a)


def is_catalog_token(text: str) -> bool:
    return _TOKEN.match(text.strip()) is not None


def parse_pattern_text(text: str, name: str = "") -> SimpleGraph:
    """Parse the "p/e" pattern format."""
    header: tuple[int, int] | None = None
    edges: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        if header is None:
            if fields[0] != "p" or len(fields) != 3:
                raise PatternParseError("expected header 'p <vertex_count> <edge_count>'", lineno)
            try:
                header = (int(fields[1]), int(fields[2]))
            except ValueError:
                raise PatternParseError("header counts must be integers", lineno) from None
            if header[0] < 0 or header[1] < 0:
                raise PatternParseError("header counts must be non-negative", lineno)
            continue
        if fields[0] != "e" or len(fields) != 3:
            raise PatternParseError("expected edge line 'e <i> <j>'", lineno)
        try:
            i, j = int(fields[1]), int(fields[2])
        except ValueError:
            raise PatternParseError("edge endpoints must be integers", lineno) from None
        if i == j:
            raise PatternParseError(f"loop at vertex {i}", lineno)
        if not (0 <= i < header[0] and 0 <= j < header[0]):
            raise PatternParseError(f"edge ({i}, {j}) out of range", lineno)
        pair = (min(i, j), max(i, j))
        if pair in seen:
            raise PatternParseError(f"duplicate edge ({pair[0]}, {pair[1]})", lineno)
        if edges and (pair[1], pair[0]) < (edges[-1][1], edges[-1][0]):
            raise PatternParseError(f"edge ({pair[0]}, {pair[1]}) is out of colex order", lineno)
        seen.add(pair)
        edges.append(pair)
    if header is None:
        raise PatternParseError("missing 'p' header")
    if len(edges) != header[1]:
        raise PatternParseError(f"header announces {header[1]} edges, found {len(edges)}")
    return SimpleGraph(header[0], tuple(edges), name=name)


def format_pattern(g: SimpleGraph) -> str:
    lines = [f"p {g.vertex_count} {g.edge_count}"]
    lines.extend(f"e {i} {j}" for i, j in g.edges)
    return "\n".join(lines) + "\n"


def write_pattern_file(g: SimpleGraph, path: str | Path) -> None:
    Path(path).write_text(format_pattern(g))


def load_pattern(text: str) -> SimpleGraph:
    """Resolve a catalog token, or else read a pattern file at that path."""
    if is_catalog_token(text):
        return pattern_from_catalog(text)
    path = Path(text)
    if not path.is_file():
        raise PatternParseError(f"{text!r} is neither a catalog token nor a pattern file")
    return parse_pattern_text(path.read_text(), name=path.stem)


def _catalog_candidates(g: SimpleGraph) -> list[SimpleGraph]:
    v = g.vertex_count
    candidates: list[SimpleGraph] = []
    if v >= 2:
        candidates += [path_graph(v), SimpleGraph.complete(v)]
    if v >= 3:
        candidates.append(cycle_graph(v))
    if v >= 4:
        candidates.append(pendant_cycle(v - 1))
    if v == 4:
        candidates.append(k4_minus())
    if v == 5:
        candidates.append(bull())
    candidates += [complete_bipartite(s, v - s) for s in range(1, v // 2 + 1)]
    return candidates


def identify_pattern(g: SimpleGraph) -> str | None:
    """Catalog token of a graph isomorphic to ``g``, if there is one."""
    if g.vertex_count < 2:
        return None
    form = None
    for candidate in _catalog_candidates(g):
        if candidate.edge_count != g.edge_count or candidate.degree_sequence() != g.degree_sequence():
            continue
        if form is None:
            form = canonical_form(g)
        if canonical_form(candidate) == form:
            return candidate.name
    return None


__all__ = [
    "bull",
    "complete_bipartite",
    "cycle_graph",
    "format_pattern",
    "identify_pattern",
    "is_catalog_token",
    "k4_minus",
    "load_pattern",
    "matching_graph",
    "parse_pattern_text",
    "path_graph",
    "pattern_from_catalog",
    "pendant_cycle",
    "write_pattern_file",
]
