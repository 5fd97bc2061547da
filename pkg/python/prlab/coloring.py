"""Edge-colorings of K_n and the color-derived quantities used in the proofs.

File format "pr-coloring v1"::

    <n> <k>
    <i> <j> <c>        one line per pair, colex order, 0-based

Readers skip blank lines and lines starting with "#".
"""

from __future__ import annotations

import logging
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from pathlib import Path

from .errors import ColoringParseError, InvalidArgumentError
from .graphs import SimpleGraph, colex_pairs, edge_index, edge_of_index, pair_count

logger = logging.getLogger(__name__)


def normalize_colors(raw: Iterable[int]) -> tuple[int, ...]:
    """Renumber colors by first appearance."""
    relabel: dict[int, int] = {}
    return tuple(relabel.setdefault(c, len(relabel)) for c in raw)


def is_normalized(colors: Sequence[int]) -> bool:
    top = -1
    for c in colors:
        if c > top + 1 or c < 0:
            return False
        top = max(top, c)
    return True


@dataclass(frozen=True)
class EdgeColoring:
    """A coloring of the C(n, 2) edges of K_n, entry e coloring the pair with colex index e.

    Colors are normalized: the color of edge 0 is 0 and every new color is the
    smallest unused integer, so the colors used are exactly 0..color_count-1.
    """

    n: int
    colors: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.n < 0:
            raise InvalidArgumentError(f"n must be non-negative, got {self.n}")
        if len(self.colors) != pair_count(self.n):
            raise InvalidArgumentError(f"K{self.n} has {pair_count(self.n)} edges, got {len(self.colors)} colors")
        if not is_normalized(self.colors):
            raise InvalidArgumentError("colors are not normalized by first appearance")

    @classmethod
    def from_raw(cls, n: int, raw: Iterable[int]) -> EdgeColoring:
        return cls(n, normalize_colors(raw))

    @classmethod
    def monochromatic(cls, n: int) -> EdgeColoring:
        return cls(n, (0,) * pair_count(n))

    @classmethod
    def rainbow(cls, n: int) -> EdgeColoring:
        return cls(n, tuple(range(pair_count(n))))

    @property
    def color_count(self) -> int:
        return max(self.colors) + 1 if self.colors else 0

    def color(self, i: int, j: int) -> int:
        """Color of the edge {i, j}, in either endpoint order."""
        return self.colors[edge_index(min(i, j), max(i, j), self.n)]

    def classes(self) -> list[list[int]]:
        """Edge indices of each color class, indexed by color."""
        classes: list[list[int]] = [[] for _ in range(self.color_count)]
        for e, c in enumerate(self.colors):
            classes[c].append(e)
        return classes


@dataclass(frozen=True)
class Embedding:
    """An injective map from pattern vertices to vertices of K_n."""

    pattern: SimpleGraph
    map: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.map) != self.pattern.vertex_count:
            raise InvalidArgumentError(f"embedding of {self.pattern} needs {self.pattern.vertex_count} images")
        if len(set(self.map)) != len(self.map):
            raise InvalidArgumentError("embedding is not injective")

    def host_edges(self) -> list[tuple[int, int]]:
        """Images of the pattern edges, each as (smaller, larger)."""
        pairs = [(self.map[a], self.map[b]) for a, b in self.pattern.edges]
        return [(min(u, v), max(u, v)) for u, v in pairs]

    def host_edge_indices(self, n: int) -> list[int]:
        return [edge_index(u, v, n) for u, v in self.host_edges()]

    def __str__(self) -> str:
        return " ".join(f"{v}->{w}" for v, w in enumerate(self.map))


def color_set(col: EdgeColoring, edge_subset: Iterable[int]) -> set[int]:
    """C(H): the colors appearing on the given edges."""
    m = len(col.colors)
    found: set[int] = set()
    for e in edge_subset:
        if not 0 <= e < m:
            raise InvalidArgumentError(f"edge index {e} out of range for K{col.n}")
        found.add(col.colors[e])
    return found


def starred_degree(col: EdgeColoring, v: int) -> int:
    """d^c(v): colors whose whole class is incident to ``v``.

    A single-edge class counts at both of its endpoints.
    """
    if not 0 <= v < col.n:
        raise InvalidArgumentError(f"vertex {v} out of range for K{col.n}")
    count = 0
    for members in col.classes():
        if all(v in edge_of_index(e, col.n) for e in members):
            count += 1
    return count


def representing_subgraph(col: EdgeColoring) -> SimpleGraph:
    """Spanning subgraph keeping the colex-smallest edge of every color."""
    first: dict[int, int] = {}
    for e, c in enumerate(col.colors):
        first.setdefault(c, e)
    return SimpleGraph.from_edge_indices(col.n, first.values(), name="representing")


def format_coloring(col: EdgeColoring) -> str:
    lines = [f"{col.n} {col.color_count}"]
    lines.extend(f"{i} {j} {c}" for (i, j), c in zip(colex_pairs(col.n), col.colors))
    return "\n".join(lines) + "\n"


def write_coloring_file(col: EdgeColoring, path: str | Path) -> None:
    Path(path).write_text(format_coloring(col))


def parse_coloring_text(text: str) -> EdgeColoring:
    header: tuple[int, int] | None = None
    expected: list[tuple[int, int]] = []
    raw: list[int] = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        fields = stripped.split()
        try:
            numbers = [int(f) for f in fields]
        except ValueError:
            raise ColoringParseError(f"expected integers, got {stripped!r}", lineno) from None
        if header is None:
            if len(numbers) != 2 or numbers[0] < 0 or numbers[1] < 0:
                raise ColoringParseError("expected header '<n> <k>'", lineno)
            header = (numbers[0], numbers[1])
            expected = colex_pairs(header[0])
            continue
        if len(numbers) != 3:
            raise ColoringParseError("expected '<i> <j> <c>'", lineno)
        if len(raw) >= len(expected):
            raise ColoringParseError(f"more than {len(expected)} edge lines", lineno)
        i, j, c = numbers
        if (i, j) != expected[len(raw)]:
            want = expected[len(raw)]
            raise ColoringParseError(f"expected pair {want[0]} {want[1]} (colex order), got {i} {j}", lineno)
        if c < 0:
            raise ColoringParseError(f"negative color {c}", lineno)
        raw.append(c)
    if header is None:
        raise ColoringParseError("missing '<n> <k>' header")
    if len(raw) != len(expected):
        raise ColoringParseError(f"expected {len(expected)} edge lines, found {len(raw)}")
    if not is_normalized(raw):
        logger.warning("coloring is not normalized by first appearance; renumbering colors")
    col = EdgeColoring.from_raw(header[0], raw)
    if col.color_count != header[1]:
        raise ColoringParseError(f"header announces {header[1]} colors, found {col.color_count}")
    return col


def read_coloring_file(path: str | Path) -> EdgeColoring:
    return parse_coloring_text(Path(path).read_text())


__all__ = [
    "EdgeColoring",
    "Embedding",
    "color_set",
    "format_coloring",
    "is_normalized",
    "normalize_colors",
    "parse_coloring_text",
    "read_coloring_file",
    "representing_subgraph",
    "starred_degree",
    "write_coloring_file",
]
