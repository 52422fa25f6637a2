"""Plain-text graph and cover formats.

Graph file::

    c free-form comment
    p ecc <num_vertices> <num_edges> <k or -1>
    v <id> <kind> <indices...>        # optional, one per named vertex
    e <id1> <id2> <imp|free>

Cover file: one clique per line as space-separated vertex ids; ``c`` lines
are comments.
"""

from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass, field
from typing import TextIO

from .graph import NAME_ARITY, EdgeClass, Graph, GraphBuilder, VertexName


class FormatError(ValueError):
    """Malformed graph, cover or assignment text."""

    def __init__(self, msg: str, lineno: int | None = None):
        self.lineno = lineno
        super().__init__(f"line {lineno}: {msg}" if lineno is not None else msg)


@dataclass
class GraphFile:
    graph: Graph
    k: int | None = None
    comments: list[str] = field(default_factory=list)


def format_graph(g: Graph, k: int | None = None, comments: Iterable[str] = ()) -> str:
    out = [f"c {line}" if line else "c" for line in comments]
    out.append(f"p ecc {g.vertex_count} {g.num_edges()} {-1 if k is None else k}")
    if g.names is not None:
        for v, nm in enumerate(g.names):
            if nm is not None:
                out.append(f"v {v} {nm}")
    for u, v, cls in g.classed_edges():
        out.append(f"e {u} {v} {cls.value}")
    return "\n".join(out) + "\n"


def write_graph(g: Graph, sink: TextIO, k: int | None = None, comments: Iterable[str] = ()) -> None:
    sink.write(format_graph(g, k, comments))


def parse_graph(text: str) -> GraphFile:
    header = None
    comments: list[str] = []
    builder: GraphBuilder | None = None
    names: list[VertexName | None] = []
    edges_seen = 0
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line:
            continue
        tok = line.split()
        tag = tok[0]
        if tag == "c":
            comments.append(line[1:].strip())
            continue
        if tag == "p":
            if header is not None:
                raise FormatError("duplicate header", lineno)
            if len(tok) != 5 or tok[1] != "ecc":
                raise FormatError("header must read 'p ecc <vertices> <edges> <k>'", lineno)
            try:
                nv, ne, k = (int(t) for t in tok[2:])
            except ValueError:
                raise FormatError("non-integer header field", lineno) from None
            if nv < 0 or ne < 0 or k < -1:
                raise FormatError("negative header field", lineno)
            header = (nv, ne, k)
            builder = GraphBuilder(nv)
            names = [None] * nv
            continue
        if header is None:
            raise FormatError(f"{tag!r} line before header", lineno)
        if tag == "v":
            if len(tok) < 3:
                raise FormatError("vertex line needs an id and a kind", lineno)
            kind = tok[2]
            if kind not in NAME_ARITY:
                raise FormatError(f"unknown vertex kind {kind!r}", lineno)
            try:
                v = int(tok[1])
                idx = tuple(int(t) for t in tok[3:])
            except ValueError:
                raise FormatError("non-integer vertex field", lineno) from None
            if not 0 <= v < header[0]:
                raise FormatError(f"vertex id {v} out of range", lineno)
            if len(idx) != NAME_ARITY[kind]:
                raise FormatError(f"kind {kind!r} takes {NAME_ARITY[kind]} indices", lineno)
            if names[v] is not None:
                raise FormatError(f"vertex {v} named twice", lineno)
            names[v] = VertexName(kind, idx)
        elif tag == "e":
            if len(tok) not in (3, 4):
                raise FormatError("edge line must read 'e <u> <v> [imp|free]'", lineno)
            try:
                u, v = int(tok[1]), int(tok[2])
            except ValueError:
                raise FormatError("non-integer edge endpoint", lineno) from None
            try:
                cls = EdgeClass(tok[3]) if len(tok) == 4 else EdgeClass.IMP
            except ValueError:
                raise FormatError(f"unknown edge class {tok[3]!r}", lineno) from None
            if not (0 <= u < header[0] and 0 <= v < header[0]):
                raise FormatError(f"edge {u}-{v} out of range", lineno)
            if u == v:
                raise FormatError(f"self-loop on vertex {u}", lineno)
            if builder.has_edge(u, v):
                raise FormatError(f"duplicate edge {u}-{v}", lineno)
            builder.add_edge(u, v, cls)
            edges_seen += 1
        else:
            raise FormatError(f"unknown line type {tag!r}", lineno)
    if header is None:
        raise FormatError("missing 'p ecc' header")
    if edges_seen != header[1]:
        raise FormatError(f"header announces {header[1]} edges, found {edges_seen}")
    g = builder.build(with_names=False)
    if any(nm is not None for nm in names):
        try:
            g = Graph(g.vertex_count, {c: g.rows(c) for c in EdgeClass}, names)
        except ValueError as exc:
            raise FormatError(str(exc)) from None
    return GraphFile(g, None if header[2] == -1 else header[2], comments)


def read_graph(source: TextIO) -> GraphFile:
    return parse_graph(source.read())


def format_cover(cover: Iterable[Iterable[int]], comments: Iterable[str] = ()) -> str:
    out = [f"c {line}" for line in comments]
    out.extend(" ".join(map(str, sorted(c))) for c in cover)
    return "\n".join(out) + "\n" if out else ""


def parse_cover(text: str) -> list[frozenset[int]]:
    cover = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.split()[0] == "c":
            continue
        try:
            ids = [int(t) for t in line.split()]
        except ValueError:
            raise FormatError("cover lines hold integer vertex ids", lineno) from None
        if any(v < 0 for v in ids):
            raise FormatError("negative vertex id", lineno)
        cover.append(frozenset(ids))
    return cover
