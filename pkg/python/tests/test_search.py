import pytest
from prlab.coloring import EdgeColoring
from prlab.detect import PatternSpec, find_pc_embedding, find_rainbow_embedding
from prlab.enums import Mode, Provenance, Termination
from prlab.errors import InvalidArgumentError, ResourceLimitError
from prlab.graphs import SimpleGraph
from prlab.graphs.family import reduced_family
from prlab.solver.profile import SearchBudget
from prlab.solver.search import (
    PartialColoring,
    SearchResult,
    SearchStats,
    ar_exact,
    decide,
    partition_frontier,
    pr_decision,
    pr_exact,
    restricted_growth_strings,
)
from prlab.turan import ex_exact
from tests.helpers.oracles import naive_has_pc_copy, naive_max_colors

BELL = [1, 1, 2, 5, 15, 52, 203, 877, 4140, 21147, 115975]
TWO_K2 = SimpleGraph(4, ((0, 1), (2, 3)), name="2K2")


def _turan_floor(n: int, ex: int) -> int:
    # ex = C(n, 2) leaves no edge for an extra color
    return ex if ex == n * (n - 1) // 2 else ex + 1


def _check_witness(result: SearchResult) -> None:
    assert result.witness is not None
    assert result.witness.color_count == result.value
    if result.mode is Mode.PROPERLY_COLORED:
        assert find_pc_embedding(result.witness, result.pattern) is None
    else:
        assert find_rainbow_embedding(result.witness, result.pattern) is None


@pytest.mark.parametrize("m", range(len(BELL)))
def test_restricted_growth_strings_count(m: int):
    assert sum(1 for _ in restricted_growth_strings(m)) == BELL[m]


def test_restricted_growth_strings_order():
    assert list(restricted_growth_strings(3)) == [(0, 1, 2), (0, 1, 0), (0, 1, 1), (0, 0, 1), (0, 0, 0)]
    with pytest.raises(InvalidArgumentError):
        list(restricted_growth_strings(-1))


@pytest.mark.parametrize(("n", "depth"), [(3, 3), (4, 4), (4, 6)])
def test_engine_visits_every_partition_without_pruning(n: int, depth: int):
    unreachable = SimpleGraph.complete(n + 1)
    prefixes = partition_frontier(n, unreachable, depth, budget=SearchBudget(orderly_max_vertices=0))
    assert len(prefixes) == BELL[depth]
    assert [p.colors for p in prefixes] == list(restricted_growth_strings(depth))


@pytest.mark.slow
def test_engine_visits_every_partition_of_k5():
    prefixes = partition_frontier(5, SimpleGraph.complete(6), 10, budget=SearchBudget(orderly_max_vertices=0))
    assert len(prefixes) == BELL[10]


def test_frontier_drops_prefixes_with_copies_and_isomorphs():
    spec = PatternSpec.parse("P3")
    # every pair of adjacent edges must share a color
    assert [p.colors for p in partition_frontier(3, spec, 3)] == [(0, 0, 0)]
    plain = partition_frontier(4, PatternSpec.parse("C4"), 6, budget=SearchBudget(orderly_max_vertices=0))
    orderly = partition_frontier(4, PatternSpec.parse("C4"), 6)
    assert 0 < len(orderly) < len(plain) < BELL[6]
    for prefix in plain:
        assert find_pc_embedding(EdgeColoring(4, prefix.colors), PatternSpec.parse("C4")) is None
    with pytest.raises(InvalidArgumentError):
        partition_frontier(4, spec, 7)


def test_partial_coloring():
    prefix = PartialColoring((0, 1, 0))
    assert prefix.prefix_length == 3
    assert prefix.blocks_used == 2
    assert prefix.extended(2).colors == (0, 1, 0, 2)
    assert PartialColoring().blocks_used == 0
    assert [child.colors for child in prefix.children()] == [(0, 1, 0, 2), (0, 1, 0, 0), (0, 1, 0, 1)]
    with pytest.raises(InvalidArgumentError) as exc_info:
        PartialColoring((0, 2))
    assert "restricted-growth" in str(exc_info.value)


def test_search_stats():
    stats = SearchStats(nodes=3, copy_prunes=1)
    stats.merge(SearchStats(nodes=2, bound_prunes=4, orderly_prunes=1))
    assert stats.as_dict() == {
        "nodes": 5,
        "copy_prunes": 1,
        "bound_prunes": 4,
        "orderly_prunes": 1,
        "wall_time": 0.0,
    }


@pytest.mark.parametrize(
    ("n", "token", "value"),
    [
        (4, "P4", 2),
        (5, "P4", 2),
        (5, "P5", 3),
        (4, "C4", 4),
        (5, "C4", 5),
        (5, "C5", 7),
        (5, "C3", 4),
        (4, "K4-", 4),
        (5, "K4-", 6),
        (5, "P3", 1),
    ],
)
def test_pr_exact_small_values(n: int, token: str, value: int):
    result = pr_exact(n, PatternSpec.parse(token))
    assert result.exact
    assert result.termination is Termination.OPTIMALITY
    assert result.value == value
    assert result.upper == value
    assert result.provenance is Provenance.COMPUTED
    _check_witness(result)


@pytest.mark.parametrize(("n", "token", "value"), [(5, "P4", 2), (5, "C3", 4)])
def test_ar_exact_small_values(n: int, token: str, value: int):
    result = ar_exact(n, PatternSpec.parse(token))
    assert result.value == value
    _check_witness(result)


@pytest.mark.slow
@pytest.mark.parametrize(
    ("token", "value"),
    [("P4", 2), ("P5", 3), ("P6", 6), ("C4", 6), ("C6", 11), ("K4-", 7)],
)
def test_pr_exact_at_six(token: str, value: int):
    result = pr_exact(6, PatternSpec.parse(token), SearchBudget.unlimited())
    assert result.value == value
    _check_witness(result)


@pytest.mark.slow
def test_ar_pendant_triangle_matches_triangle():
    budget = SearchBudget.unlimited()
    assert ar_exact(6, PatternSpec.parse("C3+"), budget).value == ar_exact(6, PatternSpec.parse("C3"), budget).value


def test_k23_lands_inside_its_bracket():
    result = pr_exact(5, PatternSpec.parse("K2,3"))
    assert 7 <= result.value <= 9
    _check_witness(result)


def test_pattern_larger_than_host_is_vacuous():
    result = pr_exact(3, PatternSpec.parse("K4-"))
    assert result.value == 3
    assert result.provenance is Provenance.TRIVIAL
    assert result.witness == EdgeColoring.rainbow(3)


def test_degenerate_patterns():
    result = pr_exact(5, TWO_K2)
    assert result.value == 0
    assert result.witness is None
    assert result.provenance is Provenance.TRIVIAL
    assert ar_exact(5, PatternSpec.parse("P2")).value == 0
    # isolated vertices are ignored once the pattern fits
    padded = SimpleGraph(5, ((0, 1), (1, 2)))
    assert pr_exact(5, padded).value == 1


@pytest.mark.parametrize("token", ["P3", "P4", "C3", "C4", "K4-", "K1,3"])
def test_pr_and_ar_match_naive_oracle(token: str):
    spec = PatternSpec.parse(token)
    for n in range(2, 5):
        assert pr_exact(n, spec).value == naive_max_colors(n, spec.graph)
        assert ar_exact(n, spec).value == naive_max_colors(n, spec.graph, rainbow=True)


@pytest.mark.slow
@pytest.mark.parametrize("token", ["P4", "P5", "C4", "C5", "K4-"])
def test_pr_matches_naive_oracle_at_five(token: str):
    spec = PatternSpec.parse(token)
    assert pr_exact(5, spec).value == naive_max_colors(5, spec.graph)


def test_orderly_rejection_and_threads_preserve_values():
    spec = PatternSpec.parse("C4")
    plain = SearchBudget(orderly_max_vertices=0)
    assert pr_exact(5, spec, plain).value == 5
    assert pr_exact(5, spec, SearchBudget(threads=2)).value == 5
    assert pr_exact(5, PatternSpec.parse("K4-"), SearchBudget(threads=3)).value == 6


def test_node_limit_gives_bracket():
    result = pr_exact(5, PatternSpec.parse("C5"), SearchBudget(node_limit=0))
    assert not result.exact
    assert result.termination is Termination.NODE_LIMIT
    # seeded by the cycle and Turán constructions; nothing of the search tree was explored
    assert result.bracket == (7, 10)
    _check_witness(result)

    partial = pr_exact(5, PatternSpec.parse("C4"), SearchBudget(node_limit=50))
    low, high = partial.bracket
    assert low <= 5 <= high


PR_AR_TOKENS = ["P3", "P4", "P5", "C3", "C4", "C5", "K4-", "K1,3", "K2,3"]


@pytest.mark.parametrize("n", [3, 4, 5])
def test_pr_never_exceeds_ar(n: int):
    for token in PR_AR_TOKENS:
        spec = PatternSpec.parse(token)
        assert pr_exact(n, spec).value <= ar_exact(n, spec).value, token


@pytest.mark.slow
def test_pr_never_exceeds_ar_on_six_vertices():
    for token in PR_AR_TOKENS:
        spec = PatternSpec.parse(token)
        assert pr_exact(6, spec).value <= ar_exact(6, spec).value, token


def test_pr_is_monotone_in_the_pattern():
    chains = [["P3", "P4", "P5"], ["C3", "K4-"], ["P4", "C4", "K4-"]]
    for chain in chains:
        values = [pr_exact(5, PatternSpec.parse(token)).value for token in chain]
        assert values == sorted(values), chain


@pytest.mark.parametrize("token", ["P4", "P5", "C4", "C5", "K4-"])
def test_turan_lower_bound_holds(token: str):
    spec = PatternSpec.parse(token)
    family = reduced_family(spec.graph)
    for n in (3, 4, 5):
        ex = ex_exact(n, family).value
        value = pr_exact(n, spec).value
        assert value >= _turan_floor(n, ex), (token, n)
        if token == "C4" and n >= 4:
            assert value == ex + 1 == n


def test_turan_bound_when_no_member_fits():
    spec = PatternSpec.parse("C5")
    assert ex_exact(4, reduced_family(spec.graph)).value == 6
    assert pr_exact(4, spec).value == 6


def test_decision():
    spec = PatternSpec.parse("C4")
    found = pr_decision(5, spec, 5)
    assert found is not None
    assert found.color_count == 5
    assert find_pc_embedding(found, spec) is None
    assert pr_decision(5, spec, 6) is None
    assert decide(5, PatternSpec.parse("P4"), 2, Mode.RAINBOW) is not None
    assert decide(5, PatternSpec.parse("P4"), 3, Mode.RAINBOW) is None


def test_decision_matches_naive_oracle():
    for token in ("P3", "P4", "C3", "C4", "K4-"):
        spec = PatternSpec.parse(token)
        for n in (3, 4):
            best = naive_max_colors(n, spec.graph)
            for k in range(1, n * (n - 1) // 2 + 1):
                found = pr_decision(n, spec, k)
                assert (found is not None) == (k <= best), (token, n, k)
                if found is not None:
                    assert found.color_count == k
                    assert not naive_has_pc_copy(found, spec.graph)


def test_decision_edge_cases():
    with pytest.raises(InvalidArgumentError) as exc_info:
        pr_decision(5, PatternSpec.parse("C4"), 11)
    assert "between 1 and C(5, 2) = 10" in str(exc_info.value)
    assert pr_decision(3, PatternSpec.parse("C4"), 2) == EdgeColoring(3, (0, 1, 1))
    assert pr_decision(5, TWO_K2, 1) is None
    with pytest.raises(ResourceLimitError) as exc_info:
        pr_decision(5, PatternSpec.parse("C4"), 6, SearchBudget(node_limit=1))
    assert exc_info.value.limit_name == "node_limit"


def test_monochromatic_decision():
    assert pr_decision(4, PatternSpec.parse("P3"), 1) == EdgeColoring.monochromatic(4)


@pytest.mark.slow
@pytest.mark.parametrize("token", ["P4", "P5", "C4", "C5", "K4-"])
def test_turan_lower_bound_holds_at_six(token: str):
    spec = PatternSpec.parse(token)
    ex = ex_exact(6, reduced_family(spec.graph)).value
    value = pr_exact(6, spec, SearchBudget.unlimited()).value
    assert value >= _turan_floor(6, ex)
    if token == "C4":
        assert value == ex + 1 == 6
