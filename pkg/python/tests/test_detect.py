import random

import pytest
from prlab.coloring import EdgeColoring, Embedding
from prlab.detect import (
    CopyDetector,
    PatternSpec,
    contains_rainbow,
    find_pc_embedding,
    find_rainbow_embedding,
    is_properly_colored,
    is_rainbow,
)
from prlab.errors import InvalidArgumentError
from prlab.graphs import SimpleGraph, colex_pairs, pair_count
from prlab.graphs.catalog import path_graph, pattern_from_catalog
from prlab.graphs.invariants import is_subgraph
from tests.helpers.oracles import naive_copy_through, naive_has_pc_copy, naive_has_rainbow_copy, set_partitions

PATTERNS = ["P3", "P4", "P5", "C3", "C4", "C5", "K4-", "K1,3", "K2,3", "bull", "C3+"]


def _random_coloring(rng: random.Random, n: int, k: int) -> EdgeColoring:
    return EdgeColoring.from_raw(n, [rng.randrange(k) for _ in range(pair_count(n))])


def test_pattern_spec_parse():
    spec = PatternSpec.parse("C4")
    assert spec.name == "C4"
    assert spec.identify() == "C4"
    assert len(spec.automorphisms) == 8
    # all oriented edges of a cycle form one orbit
    assert len(spec.edge_orbit_representatives) == 1
    assert spec.has_adjacent_edges


def test_pattern_spec_orbits():
    assert len(PatternSpec.parse("P4").edge_orbit_representatives) == 3
    assert len(PatternSpec.parse("K1,3").edge_orbit_representatives) == 2
    assert len(PatternSpec.parse("K4-").edge_orbit_representatives) == 3
    matching = PatternSpec.from_graph(SimpleGraph(4, ((0, 1), (2, 3)), name="2K2"))
    assert not matching.has_adjacent_edges
    assert matching.name == "2K2"


def test_vertex_order_is_connected():
    spec = PatternSpec.parse("bull")
    order = spec.vertex_order
    assert sorted(order) == list(range(5))
    adj = spec.graph.neighbors()
    for p in range(1, len(order)):
        assert adj[order[p]] & set(order[:p])


def test_rainbow_k5_contains_c4():
    col = EdgeColoring.rainbow(5)
    emb = find_pc_embedding(col, PatternSpec.parse("C4"))
    assert isinstance(emb, Embedding)
    assert is_properly_colored(col, emb)
    assert is_rainbow(col, emb)


def test_monochromatic_has_no_pc_path():
    col = EdgeColoring.monochromatic(5)
    assert find_pc_embedding(col, PatternSpec.parse("P3")) is None
    assert find_rainbow_embedding(col, PatternSpec.parse("P2")) is not None


def test_pattern_larger_than_host():
    assert find_pc_embedding(EdgeColoring.rainbow(3), PatternSpec.parse("C4")) is None


def test_embedding_checks():
    col = EdgeColoring(3, (0, 1, 0))
    p3 = path_graph(3)
    # P3 mapped onto 1-0-2 uses colors 0 and 1
    assert is_properly_colored(col, Embedding(p3, (1, 0, 2)))
    # 0-1-2 uses colors 0 and 0
    assert not is_properly_colored(col, Embedding(p3, (0, 1, 2)))
    assert not is_rainbow(col, Embedding(p3, (0, 1, 2)))
    with pytest.raises(InvalidArgumentError):
        is_properly_colored(col, Embedding(p3, (0, 1, 3)))


@pytest.mark.parametrize("token", PATTERNS)
def test_detection_matches_naive_oracle(token: str):
    rng = random.Random(token)
    spec = PatternSpec.parse(token)
    for n in (4, 5, 6):
        for k in (2, 3, 5, 9):
            col = _random_coloring(rng, n, k)
            pc = find_pc_embedding(col, spec)
            assert (pc is not None) == naive_has_pc_copy(col, spec.graph)
            if pc is not None:
                assert is_properly_colored(col, pc)
            rb = find_rainbow_embedding(col, spec)
            assert (rb is not None) == naive_has_rainbow_copy(col, spec.graph)
            if rb is not None:
                assert is_rainbow(col, rb)
            assert contains_rainbow(col, spec) == (rb is not None)


@pytest.mark.parametrize("token", ["P4", "C4", "K4-", "K1,3", "bull"])
@pytest.mark.parametrize("rainbow", [False, True])
def test_copy_through_matches_naive_oracle(token: str, rainbow: bool):
    rng = random.Random(f"{token}-{rainbow}")
    spec = PatternSpec.parse(token)
    n = 5
    detector = CopyDetector(spec, n, rainbow=rainbow)
    for _ in range(6):
        col = _random_coloring(rng, n, rng.choice((2, 3, 4, 6)))
        for i, j in colex_pairs(n):
            images = detector.copy_through(col.colors, i, j)
            assert (images is not None) == naive_copy_through(col, spec.graph, i, j, rainbow)
            if images is not None:
                assert {i, j} <= set(images)


def test_copy_through_ignores_uncolored_edges():
    spec = PatternSpec.parse("P3")
    n = 4
    detector = CopyDetector(spec, n)
    colors = [-1] * pair_count(n)
    colors[0] = 0  # edge 01
    assert detector.copy_through(colors, 0, 1) is None
    colors[1] = 1  # edge 02
    assert detector.copy_through(colors, 0, 2) is not None
    colors[1] = 0
    assert detector.copy_through(colors, 0, 2) is None


def test_detection_on_bipartite_pattern():
    col = EdgeColoring.rainbow(6)
    emb = find_pc_embedding(col, pattern_from_catalog("K2,3"))
    assert emb is not None
    assert len(emb.host_edges()) == 6


# (smaller, larger) pattern pairs; a properly colored copy of the larger one contains one of the smaller
SUBPATTERN_PAIRS = [
    ("P3", "P4"),
    ("P4", "P5"),
    ("P4", "C4"),
    ("P3", "K1,3"),
    ("C3", "K4-"),
    ("C4", "K4-"),
    ("P5", "C5"),
    ("K1,3", "K2,3"),
    ("C3", "bull"),
]


def _check_monotone(n: int) -> None:
    specs = {token: PatternSpec.parse(token) for pair in SUBPATTERN_PAIRS for token in pair}
    pairs = [(specs[a], specs[b]) for a, b in SUBPATTERN_PAIRS if specs[b].graph.vertex_count <= n]
    for labels in set_partitions(pair_count(n)):
        col = EdgeColoring(n, tuple(labels))
        for small, large in pairs:
            if find_pc_embedding(col, large) is not None:
                assert find_pc_embedding(col, small) is not None, (small.name, large.name, labels)


def test_subpatterns_are_subgraphs():
    for small, large in SUBPATTERN_PAIRS:
        assert is_subgraph(pattern_from_catalog(small), pattern_from_catalog(large)), (small, large)


def test_pc_copy_of_a_pattern_implies_one_of_each_subpattern():
    _check_monotone(4)


@pytest.mark.slow
def test_pc_copy_of_a_pattern_implies_one_of_each_subpattern_on_five_vertices():
    _check_monotone(5)


@pytest.mark.parametrize("token", ["P2", "P3", "P4", "C3", "C4", "K4-", "K1,3", "K4", "C3+"])
def test_detection_matches_naive_oracle_on_every_coloring_of_k4(token: str):
    spec = PatternSpec.parse(token)
    colorings = list(set_partitions(6))
    assert len(colorings) == 203
    for labels in colorings:
        col = EdgeColoring(4, tuple(labels))
        emb = find_pc_embedding(col, spec)
        assert (emb is not None) == naive_has_pc_copy(col, spec.graph), labels
        if emb is not None:
            assert is_properly_colored(col, emb)


@pytest.mark.parametrize("n", [4, 5, 6])
def test_rainbow_copy_implies_pc_copy(n: int):
    rng = random.Random(n)
    specs = [PatternSpec.parse(token) for token in PATTERNS]
    specs = [spec for spec in specs if spec.graph.vertex_count <= n]
    rainbow_seen = 0
    for trial in range(1000):
        spec = specs[trial % len(specs)]
        col = _random_coloring(rng, n, rng.randrange(1, pair_count(n) + 1))
        if contains_rainbow(col, spec):
            rainbow_seen += 1
            emb = find_pc_embedding(col, spec)
            assert emb is not None, (spec.name, col.colors)
            assert is_properly_colored(col, emb)
    assert rainbow_seen > 0
