"""Maximal clique enumeration (Bron-Kerbosch with Tomita pivoting on bit sets)."""

from __future__ import annotations

from ..graph import Graph, bits

MAX_ENUM_VERTICES = 64


def enumerate_maximal_cliques(g: Graph, max_vertices: int = MAX_ENUM_VERTICES) -> list[frozenset]:
    """All maximal cliques of ``g`` (isolated vertices included), sorted."""
    if g.vertex_count > max_vertices:
        raise ValueError(f"{g.vertex_count} vertices exceeds the enumeration guard {max_vertices}")
    adj = [g.adj(v) for v in range(g.vertex_count)]
    found: list[int] = []

    def expand(r: int, p: int, x: int) -> None:
        if not p:
            if not x:
                found.append(r)
            return
        pivot = max(bits(p | x), key=lambda u: (p & adj[u]).bit_count())
        for v in bits(p & ~adj[pivot]):
            bit = 1 << v
            expand(r | bit, p & adj[v], x & adj[v])
            p &= ~bit
            x |= bit

    expand(0, (1 << g.vertex_count) - 1, 0)
    return sorted((frozenset(bits(r)) for r in found), key=sorted)
