"""Undirected graphs with classed edges, backed by per-vertex bit rows.

Vertex ``v``'s neighbourhood within an edge class is a Python ``int`` whose
bit ``u`` is set iff ``uv`` is an edge of that class.  Clique tests and
coverage checks are then a handful of big-integer operations per vertex.
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass
from enum import Enum


class EdgeClass(str, Enum):
    IMP = "imp"
    FREE = "free"


ALL_CLASSES = (EdgeClass.IMP, EdgeClass.FREE)

# kind -> number of indices carried by the name
NAME_ARITY = {"w": 3, "u": 2, "p": 3, "q": 2, "s": 1}


@dataclass(frozen=True, order=True)
class VertexName:
    """Structured gadget name, e.g. ``VertexName("w", (eta, i, c))``."""

    kind: str
    indices: tuple[int, ...]

    def __post_init__(self):
        arity = NAME_ARITY.get(self.kind)
        if arity is None:
            raise ValueError(f"unknown vertex kind {self.kind!r}")
        if len(self.indices) != arity:
            raise ValueError(f"kind {self.kind!r} takes {arity} indices, got {self.indices}")

    @classmethod
    def w(cls, eta: int, i: int, c: int) -> VertexName:
        return cls("w", (eta, i, c))

    @classmethod
    def u(cls, eta: int, gamma: int) -> VertexName:
        return cls("u", (eta, gamma))

    @classmethod
    def p(cls, j: int, alpha: int, beta: int) -> VertexName:
        return cls("p", (j, alpha, beta))

    @classmethod
    def q(cls, a: int, b: int) -> VertexName:
        return cls("q", (a, b))

    @classmethod
    def s(cls, t: int) -> VertexName:
        return cls("s", (t,))

    def __str__(self) -> str:
        return f"{self.kind} " + " ".join(map(str, self.indices))


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def bits(mask: int) -> Iterator[int]:
    """Yield the set bit positions of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _classes(required) -> tuple[EdgeClass, ...]:
    if required is None:
        return ALL_CLASSES
    if isinstance(required, (EdgeClass, str)):
        return (EdgeClass(required),)
    return tuple(EdgeClass(c) for c in required)


class Graph:
    """Immutable undirected simple graph whose edges are classed imp or free.

    Build one with :class:`GraphBuilder` or :meth:`Graph.from_edges`.
    """

    __slots__ = ("vertex_count", "_rows", "_adj", "names", "_index")

    def __init__(
        self,
        vertex_count: int,
        rows: dict[EdgeClass, Sequence[int]],
        names: Sequence[VertexName | None] | None = None,
    ):
        self.vertex_count = vertex_count
        self._rows = {cls: tuple(rows.get(cls, (0,) * vertex_count)) for cls in ALL_CLASSES}
        for cls, r in self._rows.items():
            if len(r) != vertex_count:
                raise ValueError(f"{cls.value} rows have length {len(r)}, expected {vertex_count}")
        self._adj = tuple(a | b for a, b in zip(self._rows[EdgeClass.IMP], self._rows[EdgeClass.FREE]))
        self.names = tuple(names) if names is not None else None
        self._index = None
        if self.names is not None:
            if len(self.names) != vertex_count:
                raise ValueError("names must have one entry per vertex")
            self._index = {nm: v for v, nm in enumerate(self.names) if nm is not None}
            if len(self._index) != sum(nm is not None for nm in self.names):
                raise ValueError("vertex names must be unique")

    @classmethod
    def from_edges(
        cls,
        vertex_count: int,
        edges: Iterable[tuple],
        names: Sequence[VertexName | None] | None = None,
    ) -> Graph:
        """Edges are ``(u, v)`` (classed imp) or ``(u, v, edge_class)``."""
        b = GraphBuilder(vertex_count)
        for e in edges:
            b.add_edge(e[0], e[1], e[2] if len(e) > 2 else EdgeClass.IMP)
        g = b.build()
        if names is not None:
            g = Graph(vertex_count, g._rows, names)
        return g

    def __repr__(self) -> str:
        return f"Graph(vertex_count={self.vertex_count}, edges={self.num_edges()})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return (
            self.vertex_count == other.vertex_count
            and self._rows == other._rows
            and self.names == other.names
        )

    def __hash__(self):
        return hash((self.vertex_count, self._adj))

    def _check(self, v: int) -> None:
        if not (0 <= v < self.vertex_count):
            raise IndexError(f"vertex id {v} out of range [0, {self.vertex_count})")

    @property
    def vertices(self) -> range:
        return range(self.vertex_count)

    def adj(self, v: int) -> int:
        """Neighbour mask of ``v`` over all edge classes."""
        return self._adj[v]

    def row(self, v: int, cls: EdgeClass) -> int:
        return self._rows[EdgeClass(cls)][v]

    def rows(self, cls: EdgeClass) -> tuple[int, ...]:
        return self._rows[EdgeClass(cls)]

    def neighbors(self, v: int) -> list[int]:
        self._check(v)
        return list(bits(self._adj[v]))

    def degree(self, v: int) -> int:
        return self._adj[v].bit_count()

    def has_edge(self, u: int, v: int) -> bool:
        self._check(u)
        self._check(v)
        return bool(self._adj[u] >> v & 1)

    def edge_class(self, u: int, v: int) -> EdgeClass | None:
        self._check(u)
        self._check(v)
        for cls in ALL_CLASSES:
            if self._rows[cls][u] >> v & 1:
                return cls
        return None

    def edges(self, required=None) -> Iterator[tuple[int, int]]:
        """Canonical ``(min, max)`` pairs, in lexicographic order."""
        classes = _classes(required)
        for u in range(self.vertex_count):
            row = 0
            for cls in classes:
                row |= self._rows[cls][u]
            yield from ((u, v) for v in bits(row >> (u + 1) << (u + 1)))

    def classed_edges(self) -> Iterator[tuple[int, int, EdgeClass]]:
        for u, v in self.edges():
            yield u, v, self.edge_class(u, v)

    def num_edges(self, required=None) -> int:
        classes = _classes(required)
        total = 0
        for cls in classes:
            total += sum(r.bit_count() for r in self._rows[cls])
        return total // 2

    def id_of(self, name: VertexName) -> int:
        if self._index is None:
            raise KeyError("graph carries no vertex names")
        return self._index[name]

    def name_of(self, v: int) -> VertexName | None:
        return None if self.names is None else self.names[v]

    def induced(self, vertices: Sequence[int]) -> tuple[Graph, list[int]]:
        """Subgraph induced by ``vertices``; returns it with the new->old id map."""
        old = list(vertices)
        pos = {v: t for t, v in enumerate(old)}
        rows = {}
        for cls in ALL_CLASSES:
            r = []
            for v in old:
                m = 0
                for u in bits(self._rows[cls][v]):
                    t = pos.get(u)
                    if t is not None:
                        m |= 1 << t
                r.append(m)
            rows[cls] = r
        names = None if self.names is None else [self.names[v] for v in old]
        return Graph(len(old), rows, names), old


class GraphBuilder:
    """Mutable accumulator for a :class:`Graph`.

    Re-adding an edge with the same class is a no-op; adding it with the
    other class raises ``ValueError``.
    """

    def __init__(self, vertex_count: int = 0):
        self._rows = {cls: [0] * vertex_count for cls in ALL_CLASSES}
        self._names: list[VertexName | None] = [None] * vertex_count

    @property
    def vertex_count(self) -> int:
        return len(self._names)

    def add_vertex(self, name: VertexName | None = None) -> int:
        for r in self._rows.values():
            r.append(0)
        self._names.append(name)
        return len(self._names) - 1

    def _add_rows(self, v: int, mask: int, cls: EdgeClass) -> None:
        other = EdgeClass.FREE if cls is EdgeClass.IMP else EdgeClass.IMP
        clash = self._rows[other][v] & mask
        if clash:
            u = next(bits(clash))
            raise ValueError(f"edge {min(u, v)}-{max(u, v)} already classed {other.value}")
        self._rows[cls][v] |= mask

    def add_edge(self, u: int, v: int, cls: EdgeClass = EdgeClass.IMP) -> None:
        n = self.vertex_count
        if not (0 <= u < n and 0 <= v < n):
            raise IndexError(f"edge {u}-{v} out of range [0, {n})")
        if u == v:
            raise ValueError(f"self-loop on vertex {u}")
        cls = EdgeClass(cls)
        self._add_rows(u, 1 << v, cls)
        self._add_rows(v, 1 << u, cls)

    def add_row(self, v: int, targets: int, cls: EdgeClass) -> None:
        """One-sided bulk insert into ``v``'s row; the caller adds the mirror bits."""
        self._add_rows(v, targets, EdgeClass(cls))

    def connect(self, v: int, targets: int, cls: EdgeClass) -> None:
        """Join ``v`` to every vertex in the bit mask ``targets``."""
        cls = EdgeClass(cls)
        if targets >> v & 1:
            raise ValueError(f"self-loop on vertex {v}")
        self._add_rows(v, targets, cls)
        for u in bits(targets):
            self._add_rows(u, 1 << v, cls)

    def add_clique(self, vertices: Iterable[int], cls: EdgeClass) -> None:
        vs = list(vertices)
        full = mask_of(vs)
        for v in vs:
            self._add_rows(v, full & ~(1 << v), EdgeClass(cls))

    def add_biclique(self, left: Iterable[int], right: Iterable[int], cls: EdgeClass) -> None:
        left, right = list(left), list(right)
        lm, rm = mask_of(left), mask_of(right)
        if lm & rm:
            raise ValueError("biclique sides must be disjoint")
        for v in left:
            self._add_rows(v, rm, EdgeClass(cls))
        for v in right:
            self._add_rows(v, lm, EdgeClass(cls))

    def has_edge(self, u: int, v: int) -> bool:
        return bool((self._rows[EdgeClass.IMP][u] | self._rows[EdgeClass.FREE][u]) >> v & 1)

    def build(self, with_names: bool | None = None) -> Graph:
        if with_names is None:
            with_names = any(nm is not None for nm in self._names)
        return Graph(
            self.vertex_count,
            {cls: list(r) for cls, r in self._rows.items()},
            list(self._names) if with_names else None,
        )


Cover = list  # list[frozenset[int]]; each member a nonempty vertex set


def is_clique(g: Graph, vertices: Iterable[int]) -> bool:
    vs = list(vertices)
    for v in vs:
        g._check(v)
    m = mask_of(vs)
    return all((g.adj(v) | (1 << v)) & m == m for v in vs)


@dataclass(frozen=True)
class Violation:
    kind: str  # "empty" | "out_of_range" | "not_clique" | "uncovered"
    clique_index: int | None = None
    edge: tuple[int, int] | None = None

    def __str__(self) -> str:
        if self.kind == "uncovered":
            u, v = self.edge
            return f"edge {u}-{v} is not covered by any clique"
        if self.kind == "not_clique":
            u, v = self.edge
            return f"set #{self.clique_index} is not a clique (non-adjacent pair {u}-{v})"
        if self.kind == "out_of_range":
            return f"set #{self.clique_index} mentions an out-of-range vertex"
        return f"set #{self.clique_index} is empty"


@dataclass(frozen=True)
class CoverReport:
    valid: bool
    first_violation: Violation | None = None

    def __bool__(self) -> bool:
        return self.valid

    def __str__(self) -> str:
        return "valid" if self.valid else f"invalid: {self.first_violation}"


def verify_cover(g: Graph, cover: Iterable[Iterable[int]], required=None) -> CoverReport:
    """Check that every set is a clique and covers every edge of the required classes.

    ``required`` is ``None`` (all edges), one :class:`EdgeClass`, or several.
    Violations are reported rather than raised.
    """
    n = g.vertex_count
    covered = [0] * n
    for idx, clique in enumerate(cover):
        vs = list(clique)
        if not vs:
            return CoverReport(False, Violation("empty", idx))
        if any(not (0 <= v < n) for v in vs):
            return CoverReport(False, Violation("out_of_range", idx))
        m = mask_of(vs)
        for v in vs:
            missing = m & ~(g.adj(v) | (1 << v))
            if missing:
                u = next(bits(missing))
                return CoverReport(False, Violation("not_clique", idx, (min(u, v), max(u, v))))
            covered[v] |= m
    classes = _classes(required)
    for u in range(n):
        need = 0
        for cls in classes:
            need |= g.row(u, cls)
        left = need & ~covered[u] & ~((1 << (u + 1)) - 1)
        if left:
            v = next(bits(left))
            return CoverReport(False, Violation("uncovered", edge=(u, v)))
    return CoverReport(True)


def random_graph(vertex_count: int, p: float, rng) -> Graph:
    """Erdos-Renyi ``G(n, p)`` drawn from ``rng`` (a ``random.Random``)."""
    b = GraphBuilder(vertex_count)
    for u in range(vertex_count):
        for v in range(u + 1, vertex_count):
            if rng.random() < p:
                b.add_edge(u, v)
    return b.build()
