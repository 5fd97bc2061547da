from math import comb

import pytest
from prlab.constructions import (
    CONSTRUCTIONS,
    ConstructionReport,
    applicable_constructions,
    build_construction,
    cycle_conjecture_value,
    cycle_threshold_value,
    cycle_lower_bound,
    k4minus_lower_bound,
    k23_lower_bound,
    path_formula_provenance,
    path_formula_value,
    path_lower_bound,
    small_path_blocker,
    turan_based_lower_bound,
)
from prlab.detect import find_pc_embedding
from prlab.enums import Provenance
from prlab.errors import InvalidArgumentError, ResourceLimitError
from prlab.graphs import SimpleGraph
from prlab.graphs.catalog import cycle_graph, pattern_from_catalog
from prlab.graphs.family import reduced_family
from prlab.turan import ex_exact
from tests.helpers.oracles import naive_has_pc_copy


def _reports(max_n: int) -> list[ConstructionReport]:
    found: list[ConstructionReport] = []
    for n in range(3, max_n + 1):
        found += [small_path_blocker(n, r) for r in (0, 1, 2) if n >= 3 + r]
        for size in range(4, n + 1):
            found += [path_lower_bound(n, size, variant) for variant in ("clique", "join")]
            found += [cycle_lower_bound(n, size, variant) for variant in ("clique", "clique-stars", "join")]
        if n >= 4:
            found.append(k4minus_lower_bound(n))
        if n >= 5:
            found.append(k23_lower_bound(n))
    return found


def _assert_valid(report: ConstructionReport) -> None:
    assert report.coloring.color_count == report.claimed_colors, report.report_lines()
    assert find_pc_embedding(report.coloring, report.target) is None, report.report_lines()


@pytest.mark.parametrize(("r", "colors"), [(0, 1), (1, 2), (2, 3)])
def test_small_path_blocker(r: int, colors: int):
    report = small_path_blocker(6, r)
    assert report.claimed_colors == colors
    assert report.target.name == f"P{3 + r}"
    assert report.provenance is Provenance.PROVED_RANGE
    _assert_valid(report)


def test_small_path_blocker_preconditions():
    with pytest.raises(InvalidArgumentError) as exc_info:
        small_path_blocker(4, 2)
    assert "n >= 5" in str(exc_info.value)
    with pytest.raises(InvalidArgumentError):
        small_path_blocker(6, 3)


@pytest.mark.parametrize(
    ("n", "length", "variant", "colors"),
    [(10, 9, "join", 18), (6, 6, "join", 6), (9, 9, "clique", 16)],
)
def test_path_lower_bound_counts(n: int, length: int, variant: str, colors: int):
    report = path_lower_bound(n, length, variant)
    assert report.claimed_colors == colors
    assert report.coloring.color_count == colors


@pytest.mark.parametrize(
    ("n", "k", "variant", "colors"),
    [
        (10, 4, "join", 10),
        (10, 5, "join", 11),
        (10, 5, "clique-stars", 12),
        (7, 6, "clique", 11),
        (7, 6, "clique-stars", 12),
    ],
)
def test_cycle_lower_bound_counts(n: int, k: int, variant: str, colors: int):
    report = cycle_lower_bound(n, k, variant)
    assert report.claimed_colors == colors
    assert report.coloring.color_count == colors


def test_cycle_clique_reports_gap():
    report = cycle_lower_bound(9, 5, "clique")
    assert report.claimed_colors == 7
    assert any("exceeds this coloring by 4" in note for note in report.notes)
    assert any(line.startswith("note=") for line in report.report_lines())


@pytest.mark.parametrize(("n", "colors"), [(4, 4), (5, 6), (6, 7), (7, 9), (8, 10)])
def test_k4minus_counts(n: int, colors: int):
    report = k4minus_lower_bound(n)
    assert report.claimed_colors == colors
    _assert_valid(report)


@pytest.mark.parametrize(("n", "colors"), [(5, 7), (8, 13), (13, 21)])
def test_k23_counts(n: int, colors: int):
    report = k23_lower_bound(n)
    assert report.claimed_colors == colors
    assert report.coloring.color_count == colors


def test_k4minus_and_k23_counts_up_to_one_hundred():
    for n in range(4, 101):
        report = k4minus_lower_bound(n)
        assert report.claimed_colors == report.coloring.color_count == 3 * (n - 1) // 2, n
    for n in range(5, 101):
        k = (n - 1) // 4
        report = k23_lower_bound(n)
        assert report.claimed_colors == report.coloring.color_count == 7 * k + comb(n - 4 * k, 2), n


def test_construction_preconditions():
    with pytest.raises(InvalidArgumentError):
        path_lower_bound(5, 6)
    with pytest.raises(InvalidArgumentError):
        path_lower_bound(5, 3)
    with pytest.raises(InvalidArgumentError):
        cycle_lower_bound(4, 5)
    with pytest.raises(InvalidArgumentError) as exc_info:
        cycle_lower_bound(6, 5, "spiral")
    assert "unknown cycle variant" in str(exc_info.value)
    with pytest.raises(InvalidArgumentError):
        k4minus_lower_bound(3)
    with pytest.raises(InvalidArgumentError):
        k23_lower_bound(4)


def test_constructions_avoid_their_target():
    for report in _reports(8):
        _assert_valid(report)


def _rainbow_clique_size(report: ConstructionReport) -> int:
    params = report.parameters
    if report.formula_name == "path-clique":
        return params["l"] - 3
    if report.formula_name in ("cycle-clique", "cycle-clique-stars"):
        return params["k"] - 1
    return 0


@pytest.mark.slow
def test_constructions_avoid_their_target_up_to_twelve():
    # detection walks every path of a rainbow clique; larger cliques are covered below
    for report in _reports(12):
        if report.coloring.n > 8 and _rainbow_clique_size(report) <= 8:
            _assert_valid(report)


@pytest.mark.parametrize("variant", ["clique", "clique-stars"])
def test_large_cycle_cliques_have_one_color_below_each_outside_vertex(variant: str):
    # the largest vertex of a copy of C_k is outside the clique and reaches both cycle neighbours in one color
    for n in range(10, 13):
        for k in range(10, n + 1):
            report = cycle_lower_bound(n, k, variant)
            col = report.coloring
            assert col.color_count == report.claimed_colors
            assert len({col.color(i, j) for j in range(k - 1) for i in range(j)}) == comb(k - 1, 2)
            for v in range(k - 1, n):
                assert len({col.color(u, v) for u in range(v)}) == 1


def test_large_path_cliques_flood_every_outside_edge():
    # an outside vertex can only end a properly colored path, leaving at most l - 1 vertices
    for n in range(11, 13):
        for length in range(12, n + 1):
            report = path_lower_bound(n, length, "clique")
            col = report.coloring
            assert col.color_count == report.claimed_colors
            outside = {col.color(u, v) for v in range(length - 3, n) for u in range(v)}
            assert len(outside) == 1


def test_constructions_match_naive_oracle():
    for report in _reports(6):
        assert not naive_has_pc_copy(report.coloring, report.target), report.report_lines()


def test_path_formula_matches_join_counts():
    assert path_formula_value(39366, 27) == 314893
    assert path_formula_value(10, 9) == 18
    assert path_formula_value(6, 6) == 6
    for length in range(6, 101, 7):
        for n in range(length, 101, 13):
            report = path_lower_bound(n, length, "join")
            assert report.claimed_colors == path_formula_value(n, length)
            assert report.coloring.color_count == report.claimed_colors


def test_path_formula_provenance():
    assert path_formula_provenance(100, 9) is Provenance.UNPROVED_RANGE
    assert path_formula_provenance(2 * 27**3, 27) is Provenance.PROVED_RANGE
    assert path_formula_provenance(2 * 27**3 - 1, 27) is Provenance.LOWER_BOUND_ONLY


def test_cycle_conjecture_value():
    assert cycle_conjecture_value(10, 5) == 12
    assert cycle_conjecture_value(10, 6) == 15
    assert cycle_conjecture_value(10, 4) == 10
    for n in range(6, 101):
        assert cycle_conjecture_value(n, 4) == n
        assert cycle_conjecture_value(n, 5) == n + 2
        assert cycle_conjecture_value(n, 6) == n + 5
    with pytest.raises(InvalidArgumentError):
        cycle_conjecture_value(4, 5)


def test_cycle_threshold_value():
    # below the split point the count grows like n, above it like (k - 1)n / 3
    assert cycle_threshold_value(10, 5) == 16
    assert cycle_threshold_value(30, 5) == 40
    assert cycle_threshold_value(10, 7) == 25
    assert cycle_threshold_value(30, 5) >= cycle_conjecture_value(30, 5)
    with pytest.raises(InvalidArgumentError):
        cycle_threshold_value(10, 4)
    with pytest.raises(InvalidArgumentError):
        cycle_threshold_value(5, 6)


def test_cycle_counts_never_exceed_conjecture():
    for k in range(4, 101, 9):
        for n in range(k, 101, 11):
            conjectured = cycle_conjecture_value(n, k)
            for variant in ("clique", "join"):
                report = cycle_lower_bound(n, k, variant)
                assert report.claimed_colors <= conjectured
                assert report.coloring.color_count == report.claimed_colors
            assert cycle_lower_bound(n, k, "clique-stars").claimed_colors == comb(k - 1, 2) + n - k + 1


@pytest.mark.slow
def test_path_join_counts_for_every_n_up_to_one_hundred():
    for length in range(6, 101):
        for n in range(length, 101):
            report = path_lower_bound(n, length, "join")
            assert report.claimed_colors == report.coloring.color_count == path_formula_value(n, length)


@pytest.mark.slow
def test_cycle_counts_for_every_n_up_to_one_hundred():
    for k in range(4, 101):
        for n in range(k, 101):
            conjectured = cycle_conjecture_value(n, k)
            for variant in ("clique", "clique-stars", "join"):
                report = cycle_lower_bound(n, k, variant)
                assert report.coloring.color_count == report.claimed_colors <= conjectured, (n, k, variant)


def test_turan_based_lower_bound():
    report = turan_based_lower_bound(6, cycle_graph(4))
    assert report.claimed_colors == 6
    _assert_valid(report)
    assert turan_based_lower_bound(5, pattern_from_catalog("P4")).claimed_colors == 1
    k4 = SimpleGraph.complete(4)
    report = turan_based_lower_bound(5, k4)
    assert report.claimed_colors == ex_exact(5, reduced_family(k4, minimal_only=True)).value + 1
    assert report.coloring.color_count == report.claimed_colors


def test_turan_based_lower_bound_cap():
    with pytest.raises(ResourceLimitError):
        turan_based_lower_bound(10, cycle_graph(4))


def test_build_construction_registry():
    assert set(CONSTRUCTIONS) == {
        "path-blocker",
        "path-clique",
        "path-join",
        "cycle-clique",
        "cycle-clique-stars",
        "cycle-join",
        "k4minus",
        "k23",
        "turan",
    }
    report = build_construction("path-join", {"n": 10, "l": 9})
    assert report.claimed_colors == 18
    assert "l=9" in report.report_lines()
    with pytest.raises(InvalidArgumentError) as exc_info:
        build_construction("path-join", {"n": 10})
    assert "missing parameter(s): l" in str(exc_info.value)
    with pytest.raises(InvalidArgumentError) as exc_info:
        build_construction("spiral", {"n": 10})
    assert "unknown construction" in str(exc_info.value)


def test_build_turan_construction():
    report = build_construction("turan", {"n": 6}, cycle_graph(4))
    assert report.claimed_colors == 6
    assert "ex=5" in report.report_lines()
    with pytest.raises(InvalidArgumentError) as exc_info:
        build_construction("turan", {"n": 6})
    assert "missing parameter(s): pattern" in str(exc_info.value)


def test_applicable_constructions():
    names = {r.formula_name for r in applicable_constructions(7, cycle_graph(5))}
    assert names == {"cycle-clique", "cycle-clique-stars", "cycle-join", "turan"}
    assert "turan" not in {r.formula_name for r in applicable_constructions(8, cycle_graph(5))}
    assert "turan" not in {r.formula_name for r in applicable_constructions(7, cycle_graph(5), 0)}
    relabeled = SimpleGraph(4, ((2, 3), (3, 0), (0, 1)))
    assert {r.formula_name for r in applicable_constructions(6, relabeled)} == {
        "path-blocker",
        "path-clique",
        "path-join",
        "turan",
    }
    assert [r.formula_name for r in applicable_constructions(6, pattern_from_catalog("bull"))] == ["turan"]
    assert applicable_constructions(6, pattern_from_catalog("bull"), 5) == []
    seeds = applicable_constructions(6, SimpleGraph.complete(4))
    assert [r.formula_name for r in seeds] == ["turan"]
    assert seeds[0].claimed_colors == ex_exact(6, reduced_family(SimpleGraph.complete(4), minimal_only=True)).value + 1
