"""Reduction from 3-CNF-SAT to Edge Clique Cover, with certificate transfer.

Typical use::

    from eccforge import parse_dimacs, normalize, regularize, reduce
    inst = reduce(regularize(normalize(parse_dimacs(text))))
"""

from .cnf import Formula, RegularFormula, brute_force_sat, evaluate, normalize, parse_dimacs, regularize
from .cocktail import CocktailGraph, TwinPair, build_cocktail, extend_twin_cover, gregory_pullman_opt
from .graph import EdgeClass, Graph, GraphBuilder, VertexName, is_clique, verify_cover
from .reduction import ReductionInstance, budget, build_free_cover, reduce
from .transfer import assignment_from_cover, cover_from_assignment

__version__ = "0.1.0"

__all__ = [
    "CocktailGraph",
    "EdgeClass",
    "Formula",
    "Graph",
    "GraphBuilder",
    "ReductionInstance",
    "RegularFormula",
    "TwinPair",
    "VertexName",
    "assignment_from_cover",
    "brute_force_sat",
    "budget",
    "build_cocktail",
    "build_free_cover",
    "cover_from_assignment",
    "evaluate",
    "extend_twin_cover",
    "gregory_pullman_opt",
    "is_clique",
    "normalize",
    "parse_dimacs",
    "reduce",
    "regularize",
    "verify_cover",
]
