"""Command-line front end.

Every command returns a :class:`CommandOutcome`; :func:`main` prints its report
followed by the machine-readable lines and exits with its code:

    0  success, or every requested check passed
    1  a check failed (a forbidden copy exists, bounds disagree)
    2  invalid input: bad token, malformed file, violated precondition
    3  a search budget or size cap was exhausted
"""

from __future__ import annotations

import argparse
import csv
import io
import logging
from collections.abc import Callable, Sequence
from dataclasses import dataclass
from pathlib import Path

from .coloring import read_coloring_file, write_coloring_file
from .constructions import CONSTRUCTIONS, build_construction
from .detect import PatternSpec, find_pc_embedding, find_rainbow_embedding
from .enums import Mode
from .errors import PrlabError, ResourceLimitError
from .graphs.catalog import format_pattern, is_catalog_token, write_pattern_file
from .graphs.family import GraphFamily, reduced_family
from .log import LOG_FORMAT, parse_level
from .solver.bounds import bounds_report
from .solver.cnf import encode_decision_cnf, run_sat_solver
from .solver.profile import DEFAULT_NODE_LIMIT, DEFAULT_ORDERLY_MAX_VERTICES, DEFAULT_TIME_LIMIT, SearchBudget
from .solver.search import ar_exact, pr_exact
from .turan import ex_exact

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_INVALID_INPUT = 2
EXIT_BUDGET = 3

ATLAS_COLUMNS = ("n", "pattern", "lower", "upper", "exact", "provenance")


@dataclass(frozen=True)
class CommandOutcome:
    exit_code: int
    report: str
    machine_output: str | None = None


def _key_values(pairs: Sequence[tuple[str, object]]) -> str:
    return "".join(f"{key}={value}\n" for key, value in pairs)


def _optional_float(text: str) -> float | None:
    return None if text.lower() == "none" else float(text)


def _optional_int(text: str) -> int | None:
    return None if text.lower() == "none" else int(text)


def _budget(args: argparse.Namespace) -> SearchBudget:
    return SearchBudget(
        time_limit=args.time_limit,
        node_limit=args.node_limit,
        threads=args.threads,
        orderly_max_vertices=args.orderly_max_vertices,
    )


def cmd_compute(args: argparse.Namespace) -> CommandOutcome:
    spec = PatternSpec.parse(args.pattern)
    mode = Mode(args.mode)
    solve = pr_exact if mode is Mode.PROPERLY_COLORED else ar_exact
    result = solve(args.n, spec, _budget(args))

    label = f"{mode.value}(K{args.n}, {spec.name})"
    if result.exact:
        report = f"{label} = {result.value}"
    else:
        report = f"{label} in [{result.value}, {result.upper}] ({result.termination.value})"
    pairs: list[tuple[str, object]] = [
        ("n", args.n),
        ("pattern", spec.name),
        ("mode", mode.value),
        ("value", result.value),
        ("upper", result.upper),
        ("exact", str(result.exact).lower()),
        ("termination", result.termination.value),
        ("provenance", result.provenance.value),
        ("nodes", result.stats.nodes),
        ("wall_time", f"{result.stats.wall_time:.3f}"),
    ]
    if args.witness is not None and result.witness is not None:
        write_coloring_file(result.witness, args.witness)
        pairs.append(("witness", args.witness))
    logger.info("%s", report)
    return CommandOutcome(EXIT_OK if result.exact else EXIT_BUDGET, report, _key_values(pairs))


def cmd_construct(args: argparse.Namespace) -> CommandOutcome:
    params = {name: getattr(args, name) for name in ("n", "l", "k", "r") if getattr(args, name) is not None}
    pattern = None if args.pattern is None else PatternSpec.parse(args.pattern).graph
    built = build_construction(args.name, params, pattern)
    write_coloring_file(built.coloring, args.output)
    side_car = Path(f"{args.output}.report")
    side_car.write_text("\n".join(built.report_lines()) + "\n")
    report = f"{built.formula_name}: {built.claimed_colors} colors on K{built.coloring.n} ({built.provenance.value})"
    pairs: list[tuple[str, object]] = [
        ("formula", built.formula_name),
        ("claimed_colors", built.claimed_colors),
        ("provenance", built.provenance.value),
        ("output", args.output),
        ("report", side_car),
    ]
    return CommandOutcome(EXIT_OK, report, _key_values(pairs))


def cmd_verify(args: argparse.Namespace) -> CommandOutcome:
    col = read_coloring_file(args.coloring)
    spec = PatternSpec.parse(args.pattern)
    mode = Mode(args.mode)
    tag = "PC" if mode is Mode.PROPERLY_COLORED else "RAINBOW"
    emb = find_pc_embedding(col, spec) if mode is Mode.PROPERLY_COLORED else find_rainbow_embedding(col, spec)
    if emb is None:
        return CommandOutcome(EXIT_OK, f"NO-{tag}-COPY k={col.color_count}")
    colors = [col.colors[e] for e in emb.host_edge_indices(col.n)]
    report = f"{tag}-COPY k={col.color_count} embedding={emb}"
    return CommandOutcome(EXIT_CHECK_FAILED, report, _key_values([("embedding", emb), ("colors", colors)]))


def _parse_patterns(text: str) -> list[str]:
    """Split on ";" when present, otherwise on the commas that do not sit inside a K<s>,<t> token."""
    if ";" in text:
        return [token.strip() for token in text.split(";") if token.strip()]
    tokens: list[str] = []
    for piece in (p.strip() for p in text.split(",")):
        if tokens and tokens[-1].startswith("K") and piece.isdigit() and is_catalog_token(f"{tokens[-1]},{piece}"):
            tokens[-1] = f"{tokens[-1]},{piece}"
        elif piece:
            tokens.append(piece)
    return tokens


def cmd_atlas(args: argparse.Namespace) -> CommandOutcome:
    budget = _budget(args)
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(ATLAS_COLUMNS)
    inconsistent = 0
    specs = [PatternSpec.parse(token) for token in _parse_patterns(args.patterns)]
    for spec in specs:
        for n in range(args.n_min, args.n_max + 1):
            row = bounds_report(n, spec, budget, search=not args.no_search, turan=not args.no_turan)
            lower, upper = row.best_lower, row.best_upper
            provenance = upper.provenance if row.exact else lower.provenance
            writer.writerow((n, spec.name, lower.value, upper.value, str(row.exact).lower(), provenance.value))
            inconsistent += not row.consistent
    table = buffer.getvalue()
    if args.output is not None:
        Path(args.output).write_text(table)
    cells = len(specs) * max(0, args.n_max - args.n_min + 1)
    report = f"atlas: {cells} cells, {inconsistent} inconsistent"
    return CommandOutcome(EXIT_CHECK_FAILED if inconsistent else EXIT_OK, report, table)


def cmd_cnf(args: argparse.Namespace) -> CommandOutcome:
    spec = PatternSpec.parse(args.pattern)
    formula = encode_decision_cnf(args.n, spec, args.k, Mode(args.mode))
    formula.write(args.output)
    pairs: list[tuple[str, object]] = [
        ("variables", formula.variable_count),
        ("clauses", formula.clause_count),
        ("output", args.output),
    ]
    report = f"wrote {args.output}: {formula.variable_count} variables, {formula.clause_count} clauses"
    if args.solve:
        model = run_sat_solver(formula)
        pairs.append(("status", "UNSAT" if model is None else "SAT"))
        if model is not None and args.witness is not None:
            write_coloring_file(formula.decode(model), args.witness)
            pairs.append(("witness", args.witness))
    return CommandOutcome(EXIT_OK, report, _key_values(pairs))


def cmd_turan(args: argparse.Namespace) -> CommandOutcome:
    spec = PatternSpec.parse(args.pattern)
    family = reduced_family(spec.graph) if args.family == "reduced" else GraphFamily.from_graphs([spec.graph])
    result = ex_exact(args.n, family, args.orderly_max_vertices)
    if args.witness is not None:
        write_pattern_file(result.witness, args.witness)
    pairs: list[tuple[str, object]] = [
        ("n", args.n),
        ("family", ",".join(family.names())),
        ("ex", result.value),
        ("nodes", result.nodes),
    ]
    return CommandOutcome(EXIT_OK, f"{result}\n{format_pattern(result.witness)}".rstrip(), _key_values(pairs))


def cmd_bounds(args: argparse.Namespace) -> CommandOutcome:
    spec = PatternSpec.parse(args.pattern)
    report = bounds_report(args.n, spec, _budget(args), search=not args.no_search, turan=not args.no_turan)
    lower, upper = report.bracket
    summary = f"pr(K{args.n}, {spec.name}) in [{lower}, {upper}]"
    if report.exact:
        summary = f"pr(K{args.n}, {spec.name}) = {lower}"
    code = EXIT_OK if report.consistent else EXIT_CHECK_FAILED
    return CommandOutcome(code, summary, "\n".join(report.lines()) + "\n")


def _add_budget_flags(parser: argparse.ArgumentParser) -> None:
    group = parser.add_argument_group("search budget")
    group.add_argument(
        "--time-limit",
        type=_optional_float,
        default=DEFAULT_TIME_LIMIT,
        help="seconds before the search stops with a bracket, or 'none' (default: %(default)s)",
    )
    group.add_argument(
        "--node-limit",
        type=_optional_int,
        default=DEFAULT_NODE_LIMIT,
        help="search nodes before the search stops with a bracket, or 'none' (default: %(default)s)",
    )
    group.add_argument("--threads", type=int, default=1, help="worker processes (default: %(default)s)")
    group.add_argument(
        "--orderly-max-vertices",
        type=int,
        default=DEFAULT_ORDERLY_MAX_VERTICES,
        help="largest vertex block checked for isomorphic prefixes (default: %(default)s)",
    )


def _add_mode_flag(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--mode",
        choices=[m.value for m in Mode],
        default=Mode.PROPERLY_COLORED.value,
        help="pr forbids properly colored copies, ar rainbow ones (default: %(default)s)",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="prlab", description="Compute, bound and verify pr(K_n, G) and ar(K_n, G) for small n."
    )
    parser.add_argument(
        "--log-level",
        type=parse_level,
        default=logging.WARNING,
        help="level name (TRACE, DEBUG, INFO, ...) or number (default: WARNING)",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    compute = commands.add_parser("compute", help="exact value by branch and bound")
    compute.add_argument("--n", type=int, required=True)
    compute.add_argument("--pattern", required=True, help="catalog token or pattern file")
    _add_mode_flag(compute)
    compute.add_argument("--witness", help="write an optimal coloring to this file")
    _add_budget_flags(compute)
    compute.set_defaults(handler=cmd_compute)

    construct = commands.add_parser("construct", help="write a lower-bound coloring")
    construct.add_argument("name", choices=sorted(CONSTRUCTIONS))
    construct.add_argument("--n", type=int, required=True)
    construct.add_argument("--l", type=int, help="path order (path-clique, path-join)")
    construct.add_argument("--k", type=int, help="cycle length (cycle-*)")
    construct.add_argument("--r", type=int, help="blocker offset 0..2 (path-blocker)")
    construct.add_argument("--pattern", help="catalog token or pattern file (turan)")
    construct.add_argument("-o", "--output", required=True)
    construct.set_defaults(handler=cmd_construct)

    verify = commands.add_parser("verify", help="look for a forbidden copy in a coloring file")
    verify.add_argument("coloring")
    verify.add_argument("--pattern", required=True)
    _add_mode_flag(verify)
    verify.set_defaults(handler=cmd_verify)

    atlas = commands.add_parser("atlas", help="CSV of bounds over a range of n")
    atlas.add_argument("--n-min", type=int, required=True)
    atlas.add_argument("--n-max", type=int, required=True)
    atlas.add_argument("--patterns", required=True, help="tokens separated by commas or ';', e.g. P4,K2,3,C5")
    atlas.add_argument("--no-search", action="store_true", help="skip the exact search")
    atlas.add_argument("--no-turan", action="store_true", help="skip the Turán bound")
    atlas.add_argument("-o", "--output", help="write the CSV here as well")
    _add_budget_flags(atlas)
    atlas.set_defaults(handler=cmd_atlas)

    cnf = commands.add_parser("cnf", help="DIMACS instance of the decision problem")
    cnf.add_argument("--n", type=int, required=True)
    cnf.add_argument("--pattern", required=True)
    cnf.add_argument("--k", type=int, required=True)
    _add_mode_flag(cnf)
    cnf.add_argument("-o", "--output", required=True)
    cnf.add_argument("--solve", action="store_true", help="run the solver named by PRLAB_SAT_SOLVER")
    cnf.add_argument("--witness", help="with --solve, write the decoded coloring here")
    cnf.set_defaults(handler=cmd_cnf)

    turan = commands.add_parser("turan", help="exact Turán number and an extremal graph")
    turan.add_argument("--n", type=int, required=True)
    turan.add_argument("--pattern", required=True)
    turan.add_argument(
        "--family",
        choices=["reduced", "single"],
        default="reduced",
        help="all G - M over matchings M, or G alone (default: %(default)s)",
    )
    turan.add_argument("--orderly-max-vertices", type=int, default=DEFAULT_ORDERLY_MAX_VERTICES)
    turan.add_argument("--witness", help="write the extremal graph in pattern format")
    turan.set_defaults(handler=cmd_turan)

    bounds = commands.add_parser("bounds", help="every known bound for one (n, G)")
    bounds.add_argument("--n", type=int, required=True)
    bounds.add_argument("--pattern", required=True)
    bounds.add_argument("--no-search", action="store_true")
    bounds.add_argument("--no-turan", action="store_true")
    _add_budget_flags(bounds)
    bounds.set_defaults(handler=cmd_bounds)

    return parser


def execute(args: argparse.Namespace) -> CommandOutcome:
    handler: Callable[[argparse.Namespace], CommandOutcome] = args.handler
    try:
        return handler(args)
    except ResourceLimitError as exc:
        return CommandOutcome(EXIT_BUDGET, f"error: {exc}")
    except (PrlabError, OSError) as exc:
        return CommandOutcome(EXIT_INVALID_INPUT, f"error: {exc}")


def run(argv: Sequence[str] | None = None) -> CommandOutcome:
    """Parse ``argv`` and run the command; argparse usage errors exit with 2."""
    return execute(build_parser().parse_args(argv))


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=args.log_level, format=LOG_FORMAT)
    outcome = execute(args)
    print(outcome.report)
    if outcome.machine_output:
        print(outcome.machine_output, end="")
    return outcome.exit_code


__all__ = [
    "EXIT_BUDGET",
    "EXIT_CHECK_FAILED",
    "EXIT_INVALID_INPUT",
    "EXIT_OK",
    "CommandOutcome",
    "build_parser",
    "cmd_atlas",
    "cmd_bounds",
    "cmd_cnf",
    "cmd_compute",
    "cmd_construct",
    "cmd_turan",
    "cmd_verify",
    "main",
    "run",
]
