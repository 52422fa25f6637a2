"""Exhaustive minimum edge clique cover for tiny graphs.

Deliberately naive and independent of the branch-and-bound path: cliques
come from scanning every vertex subset, and covers from scanning every
combination of maximal cliques in increasing size.
"""

from __future__ import annotations

import itertools

from ..graph import Graph

ORACLE_MAX_VERTICES = 10
ORACLE_MAX_CLIQUES = 40


def _maximal_cliques_by_subsets(g: Graph) -> list[frozenset]:
    n = g.vertex_count
    adjacent = {(u, v) for u, v in g.edges()}
    cliques = []
    for mask in range(1, 1 << n):
        vs = [v for v in range(n) if mask >> v & 1]
        if all((a, b) in adjacent for a, b in itertools.combinations(vs, 2)):
            cliques.append(frozenset(vs))
    clique_set = set(cliques)
    return [
        c for c in cliques
        if not any(c | {v} in clique_set for v in range(n) if v not in c)
    ]


def min_cover_oracle(
    g: Graph,
    max_vertices: int = ORACLE_MAX_VERTICES,
    max_cliques: int = ORACLE_MAX_CLIQUES,
) -> tuple[int, list[frozenset]]:
    if g.vertex_count > max_vertices:
        raise ValueError(f"{g.vertex_count} vertices exceeds the oracle guard {max_vertices}")
    edges = list(g.edges())
    if not edges:
        return 0, []
    maximal = [c for c in _maximal_cliques_by_subsets(g) if len(c) > 1]
    if len(maximal) > max_cliques:
        raise ValueError(f"{len(maximal)} maximal cliques exceeds the oracle guard {max_cliques}")
    full = (1 << len(edges)) - 1
    covers = []
    for c in maximal:
        covers.append(sum(1 << t for t, (u, v) in enumerate(edges) if u in c and v in c))
    for size in range(1, len(maximal) + 1):
        for combo in itertools.combinations(range(len(maximal)), size):
            acc = 0
            for t in combo:
                acc |= covers[t]
            if acc == full:
                return size, [maximal[t] for t in combo]
    raise AssertionError("maximal cliques always cover every edge")
