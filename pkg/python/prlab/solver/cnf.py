"""DIMACS CNF for "K_n has a surjective k-coloring without a forbidden copy",
and a subprocess adapter for an external SAT solver.

Variables: x(e, c) = e * k + c + 1 says host edge e has color c.  Each host
edge pair that two adjacent pattern edges can land on gets an auxiliary
variable eq(e, f) equivalent to "e and f share a color".  Every copy of the
pattern (one embedding per automorphism orbit) gets one clause demanding that
some pair of its edges shares a color: adjacent pairs for properly colored
copies, all pairs for rainbow ones.  Colors must all be used, and color c may
first appear only after color c - 1 has, so models are the normalized
colorings.
"""

from __future__ import annotations

import logging
import os
import shlex
import subprocess
import tempfile
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from itertools import combinations, permutations
from pathlib import Path

from ..coloring import EdgeColoring
from ..detect import PatternSpec
from ..enums import Mode
from ..errors import ConfigError, InvalidArgumentError, SatSolverError
from ..graphs import SimpleGraph, edge_index, pair_count

logger = logging.getLogger(__name__)

SAT_SOLVER_ENV = "PRLAB_SAT_SOLVER"

Clause = tuple[int, ...]


@dataclass(frozen=True)
class CnfFormula:
    n: int
    k: int
    mode: Mode
    variable_count: int
    clauses: tuple[Clause, ...]
    comments: tuple[str, ...] = field(default=())

    @property
    def clause_count(self) -> int:
        return len(self.clauses)

    def color_variable(self, e: int, c: int) -> int:
        return e * self.k + c + 1

    def to_dimacs(self) -> str:
        lines = [f"c {comment}" for comment in self.comments]
        lines.append(f"p cnf {self.variable_count} {self.clause_count}")
        lines.extend(" ".join(map(str, clause)) + " 0" for clause in self.clauses)
        return "\n".join(lines) + "\n"

    def write(self, path: str | Path) -> None:
        Path(path).write_text(self.to_dimacs())

    def decode(self, model: Iterable[int]) -> EdgeColoring:
        """The coloring encoded by a satisfying assignment (extra literals are ignored)."""
        true = {lit for lit in model if lit > 0}
        colors: list[int] = []
        for e in range(pair_count(self.n)):
            chosen = [c for c in range(self.k) if self.color_variable(e, c) in true]
            if len(chosen) != 1:
                raise InvalidArgumentError(f"model gives edge {e} {len(chosen)} colors")
            colors.append(chosen[0])
        return EdgeColoring(self.n, tuple(colors))


class _Builder:
    def __init__(self, n: int, k: int) -> None:
        self.n = n
        self.k = k
        self.next_var = pair_count(n) * k + 1
        self.clauses: list[Clause] = []
        self.eq: dict[tuple[int, int], int] = {}

    def x(self, e: int, c: int) -> int:
        return e * self.k + c + 1

    def add(self, *literals: int) -> None:
        self.clauses.append(literals)

    def eq_var(self, e: int, f: int) -> int:
        key = (e, f) if e < f else (f, e)
        var = self.eq.get(key)
        if var is None:
            var = self.next_var
            self.next_var += 1
            self.eq[key] = var
            for c in range(self.k):
                self.add(-var, -self.x(e, c), self.x(f, c))
                self.add(var, -self.x(e, c), -self.x(f, c))
        return var


def canonical_embeddings(spec: PatternSpec, n: int) -> list[tuple[int, ...]]:
    """One injective vertex map into K_n per copy: the lexicographically least of its automorphism orbit."""
    v = spec.graph.vertex_count
    auts = spec.automorphisms[1:]
    found: list[tuple[int, ...]] = []
    for phi in permutations(range(n), v):
        if all(phi <= tuple(phi[sigma[u]] for u in range(v)) for sigma in auts):
            found.append(phi)
    return found


def encode_decision_cnf(
    n: int, pattern: SimpleGraph | PatternSpec, k: int, mode: Mode = Mode.PROPERLY_COLORED
) -> CnfFormula:
    m = pair_count(n)
    if not 1 <= k <= m:
        raise InvalidArgumentError(f"k must be between 1 and C({n}, 2) = {m}, got {k}")
    spec = pattern if isinstance(pattern, PatternSpec) else PatternSpec.from_graph(pattern)
    g = spec.graph
    b = _Builder(n, k)

    for e in range(m):
        b.add(*(b.x(e, c) for c in range(k)))
        for c, d in combinations(range(k), 2):
            b.add(-b.x(e, c), -b.x(e, d))

    if mode is Mode.RAINBOW:
        pairs: Sequence[tuple[int, int]] = list(combinations(range(g.edge_count), 2))
    else:
        pairs = g.adjacent_edge_pairs()
    copies = 0
    if n >= g.vertex_count:
        for phi in canonical_embeddings(spec, n):
            images = [edge_index(min(phi[u], phi[w]), max(phi[u], phi[w]), n) for u, w in g.edges]
            b.add(*(b.eq_var(images[p], images[q]) for p, q in pairs))
            copies += 1

    for c in range(k):
        b.add(*(b.x(e, c) for e in range(m)))
    for c in range(1, k):
        for e in range(m):
            b.add(-b.x(e, c), *(b.x(f, c - 1) for f in range(e)))

    comments = (
        f"{mode.value} decision: K{n}, pattern {spec.name}, {k} colors",
        f"{copies} copies, {len(b.eq)} equality variables",
    )
    logger.debug("encoded %s with %d variables and %d clauses", comments[0], b.next_var - 1, len(b.clauses))
    return CnfFormula(n, k, mode, b.next_var - 1, tuple(b.clauses), comments)


def sat_solver_from_env() -> str | None:
    """Command line of the external SAT solver, if configured."""
    value = os.environ.get(SAT_SOLVER_ENV, "").strip()
    return value or None


def parse_solver_output(text: str) -> list[int] | None:
    """Model literals for "s SATISFIABLE", None for "s UNSATISFIABLE"."""
    status: str | None = None
    model: list[int] = []
    for line in text.splitlines():
        if line.startswith("s "):
            status = line[2:].strip()
        elif line.startswith("v "):
            try:
                model.extend(int(tok) for tok in line[2:].split())
            except ValueError:
                raise SatSolverError(f"unreadable model line {line!r}") from None
    if status == "UNSATISFIABLE":
        return None
    if status == "SATISFIABLE":
        return [lit for lit in model if lit != 0]
    raise SatSolverError(f"solver reported no usable status line (got {status!r})")


def run_sat_solver(formula: CnfFormula, solver: str | None = None, timeout: float | None = None) -> list[int] | None:
    """Run the external solver on ``formula``; a model, or None when unsatisfiable."""
    command = solver or sat_solver_from_env()
    if command is None:
        raise ConfigError(f"{SAT_SOLVER_ENV} is not set")
    with tempfile.TemporaryDirectory() as tmp:
        path = Path(tmp) / "instance.cnf"
        formula.write(path)
        try:
            process = subprocess.run(
                [*shlex.split(command), str(path)],
                capture_output=True,
                text=True,
                timeout=timeout,
                check=False,
            )
        except (OSError, subprocess.TimeoutExpired) as exc:
            raise SatSolverError(f"failed to run {command!r}: {exc}") from exc
    # 10 and 20 are the conventional SAT / UNSAT exit codes
    if process.returncode not in (0, 10, 20):
        raise SatSolverError(f"{command!r} exited with {process.returncode}: {process.stderr.strip()}")
    return parse_solver_output(process.stdout)


__all__ = [
    "SAT_SOLVER_ENV",
    "CnfFormula",
    "canonical_embeddings",
    "encode_decision_cnf",
    "parse_solver_output",
    "run_sat_solver",
    "sat_solver_from_env",
]
