"""Data reduction rules for Edge Clique Cover (Gramm, Guo, Hueffner, Niedermeier).

Edges already inside a committed clique are *covered*: they may still be
used by later cliques but need no covering.  In the reduced graph uncovered
edges are classed imp and covered ones free.

R1  delete a vertex with no uncovered incident edge (isolated vertices included)
R2  if the common closed neighbourhood of an uncovered edge ``uv`` is a clique,
    commit it and decrement ``k``
R3  if ``N[u] = N[v]`` and ``u``, ``v`` see the same uncovered edges, delete
    ``u``; a solution lifts back by adding ``u`` wherever ``v`` appears
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..graph import EdgeClass, Graph, bits


@dataclass(frozen=True)
class RuleApplication:
    rule: str
    vertices: tuple[int, ...]


@dataclass
class KernelResult:
    reduced: Graph
    k_reduced: int
    forced_cliques: list[frozenset]
    trace: list[RuleApplication]
    # reduced id -> original id
    vertex_map: list[int] = field(default_factory=list)
    # (deleted, kept) pairs from R3, in application order
    merges: list[tuple[int, int]] = field(default_factory=list)
    # forced_cliques[t] was committed after merges[:forced_after[t]]
    forced_after: list[int] = field(default_factory=list)

    @property
    def is_no(self) -> bool:
        return self.k_reduced < 0

    def lift(self, cover) -> list[frozenset]:
        """Map a cover of the reduced graph's imp edges to a cover of the original."""
        # twins are only twins in the graph left at merge time, so a merge
        # extends only cliques committed after it
        stamped = [(len(self.merges), {self.vertex_map[v] for v in c}) for c in cover]
        stamped += [(t, set(c)) for t, c in zip(self.forced_after, self.forced_cliques)]
        for idx in range(len(self.merges) - 1, -1, -1):
            gone, kept = self.merges[idx]
            for stamp, c in stamped:
                if stamp > idx and kept in c:
                    c.add(gone)
        return [frozenset(c) for _, c in stamped]


def kernelize(g: Graph, k: int) -> KernelResult:
    """Apply R1-R3 to a fixed point; every edge of ``g`` counts as uncovered."""
    n = g.vertex_count
    adj = [g.adj(v) for v in range(n)]
    unc = list(adj)
    alive = (1 << n) - 1
    forced: list[frozenset] = []
    trace: list[RuleApplication] = []
    merges: list[tuple[int, int]] = []
    forced_after: list[int] = []

    def delete(v: int) -> None:
        nonlocal alive
        bit = 1 << v
        alive &= ~bit
        for u in bits(adj[v]):
            adj[u] &= ~bit
            unc[u] &= ~bit
        adj[v] = unc[v] = 0

    changed = True
    while changed and k >= 0:
        changed = False
        for v in list(bits(alive)):
            if not unc[v]:
                delete(v)
                trace.append(RuleApplication("R1", (v,)))
                changed = True

        for u in list(bits(alive)):
            for v in bits(unc[u] >> (u + 1) << (u + 1)):
                if not unc[u] >> v & 1:
                    continue
                common = (adj[u] | 1 << u) & (adj[v] | 1 << v)
                if all((adj[x] | 1 << x) & common == common for x in bits(common)):
                    for x in bits(common):
                        unc[x] &= ~common
                    forced.append(frozenset(bits(common)))
                    forced_after.append(len(merges))
                    trace.append(RuleApplication("R2", tuple(bits(common))))
                    k -= 1
                    changed = True
                    if k < 0:
                        break
            if k < 0:
                break
        if k < 0:
            break

        for u in list(bits(alive)):
            if not alive >> u & 1:
                continue
            cu = adj[u] | 1 << u
            for v in bits(adj[u]):
                cv = adj[v] | 1 << v
                if cu != cv:
                    continue
                bu, bv = 1 << u, 1 << v
                if unc[u] & ~bv != unc[v] & ~bu:
                    continue
                if unc[u] & bv and not unc[v] & ~bu:
                    continue
                delete(u)
                merges.append((u, v))
                trace.append(RuleApplication("R3", (u, v)))
                changed = True
                break

    keep = list(bits(alive))
    pos = {v: t for t, v in enumerate(keep)}

    def remap(mask: int) -> int:
        out = 0
        for v in bits(mask):
            out |= 1 << pos[v]
        return out

    rows = {
        EdgeClass.IMP: [remap(unc[v]) for v in keep],
        EdgeClass.FREE: [remap(adj[v] & ~unc[v]) for v in keep],
    }
    names = None if g.names is None else [g.names[v] for v in keep]
    reduced = Graph(len(keep), rows, names)
    return KernelResult(reduced, k, forced, trace, keep, merges, forced_after)
