from .bounds import Bound, BoundsReport, KnownValues, bounds_report, known_values
from .cnf import CnfFormula, encode_decision_cnf, run_sat_solver, sat_solver_from_env
from .profile import SearchBudget
from .search import SearchResult, SearchStats, ar_exact, decide, pr_decision, pr_exact

__all__ = [
    "Bound",
    "BoundsReport",
    "CnfFormula",
    "KnownValues",
    "SearchBudget",
    "SearchResult",
    "SearchStats",
    "ar_exact",
    "bounds_report",
    "decide",
    "encode_decision_cnf",
    "known_values",
    "pr_decision",
    "pr_exact",
    "run_sat_solver",
    "sat_solver_from_env",
]
