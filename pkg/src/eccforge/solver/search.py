"""Branch-and-bound exact Edge Clique Cover.

Branch on the uncovered edge with the fewest distinct ways to extend the
cover, trying each maximal clique through it.  Prune with a lower bound
from pairwise incompatible edges (no clique holds two of them) and a memo
of uncovered sets already refuted at a given budget.
"""

from __future__ import annotations

from ..graph import Graph, bits
from .cliques import enumerate_maximal_cliques

MAX_SOLVE_VERTICES = 24


class _Search:
    def __init__(self, g: Graph, required, max_vertices: int):
        if g.vertex_count > max_vertices:
            raise ValueError(f"{g.vertex_count} vertices exceeds the solver guard {max_vertices}")
        self.edges = list(g.edges(required))
        eid = {e: t for t, e in enumerate(self.edges)}
        self.cliques = [c for c in enumerate_maximal_cliques(g, max(max_vertices, g.vertex_count)) if len(c) > 1]
        self.cover_mask = []
        self.through: list[list[int]] = [[] for _ in self.edges]
        for ci, c in enumerate(self.cliques):
            vs = sorted(c)
            m = 0
            for a in range(len(vs)):
                for b in range(a + 1, len(vs)):
                    t = eid.get((vs[a], vs[b]))
                    if t is not None:
                        m |= 1 << t
                        self.through[t].append(ci)
            self.cover_mask.append(m)
        # compat[t]: edges that can share a clique with edge t
        closed = [g.adj(v) | 1 << v for v in range(g.vertex_count)]
        self.compat = []
        for u, v in self.edges:
            both = closed[u] & closed[v]
            m = 0
            for t, (x, y) in enumerate(self.edges):
                if both >> x & 1 and both >> y & 1 and closed[x] >> y & 1:
                    m |= 1 << t
            self.compat.append(m)
        self.refuted: dict[int, int] = {}
        self.nodes = 0

    def lower_bound(self, unc: int) -> int:
        blocked = 0
        count = 0
        for t in bits(unc):
            if not blocked >> t & 1:
                count += 1
                blocked |= self.compat[t]
        return count

    def run(self, unc: int, budget: int) -> list[int] | None:
        self.nodes += 1
        if not unc:
            return []
        if budget <= 0 or self.refuted.get(unc, -1) >= budget:
            return None
        if self.lower_bound(unc) > budget:
            self.refuted[unc] = max(self.refuted.get(unc, -1), budget)
            return None
        best = None
        for t in bits(unc):
            opts: dict[int, int] = {}
            for ci in self.through[t]:
                gain = self.cover_mask[ci] & unc
                opts.setdefault(gain, ci)
            if best is None or len(opts) < len(best):
                best = opts
                if len(opts) == 1:
                    break
        gains = sorted(best, key=lambda m: (-m.bit_count(), m))
        # drop options whose new coverage is a subset of another's
        kept = [m for i, m in enumerate(gains) if not any(o & m == m for o in gains[:i])]
        for m in kept:
            rest = self.run(unc & ~m, budget - 1)
            if rest is not None:
                return [best[m]] + rest
        self.refuted[unc] = max(self.refuted.get(unc, -1), budget)
        return None


def solve_exact(
    g: Graph,
    k_limit: int,
    required=None,
    max_vertices: int = MAX_SOLVE_VERTICES,
) -> list[frozenset] | None:
    """A cover of the ``required`` edges using at most ``k_limit`` cliques, or ``None``.

    The search is single-threaded with a fixed candidate order, so equal
    inputs give identical covers.
    """
    s = _Search(g, required, max_vertices)
    picked = s.run((1 << len(s.edges)) - 1, k_limit)
    if picked is None:
        return None
    return [s.cliques[ci] for ci in picked]


def minimum_cover(
    g: Graph,
    required=None,
    max_vertices: int = MAX_SOLVE_VERTICES,
) -> tuple[int, list[frozenset]]:
    """Smallest cover, found by raising the budget from the lower bound."""
    s = _Search(g, required, max_vertices)
    full = (1 << len(s.edges)) - 1
    k = s.lower_bound(full)
    while True:
        picked = s.run(full, k)
        if picked is not None:
            return len(picked), [s.cliques[ci] for ci in picked]
        k += 1


def lower_bound(g: Graph, required=None, max_vertices: int = MAX_SOLVE_VERTICES) -> int:
    s = _Search(g, required, max_vertices)
    return s.lower_bound((1 << len(s.edges)) - 1)
