"""Exact Edge Clique Cover: clique enumeration, oracle, kernel and search."""

from .cliques import MAX_ENUM_VERTICES, enumerate_maximal_cliques
from .kernel import KernelResult, RuleApplication, kernelize
from .oracle import ORACLE_MAX_CLIQUES, ORACLE_MAX_VERTICES, min_cover_oracle
from .search import MAX_SOLVE_VERTICES, lower_bound, minimum_cover, solve_exact

__all__ = [
    "MAX_ENUM_VERTICES",
    "MAX_SOLVE_VERTICES",
    "ORACLE_MAX_CLIQUES",
    "ORACLE_MAX_VERTICES",
    "KernelResult",
    "RuleApplication",
    "enumerate_maximal_cliques",
    "kernelize",
    "lower_bound",
    "min_cover_oracle",
    "minimum_cover",
    "solve_exact",
]
