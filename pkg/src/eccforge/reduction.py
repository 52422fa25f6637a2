"""Build the Edge Clique Cover instance encoding a regularized 3-CNF formula.

Gadgets (``eta`` in {1, 2} indexes the two assignment copies):

* ``w[eta, i, c]``: a cocktail party graph on ``2n`` vertices missing
  ``w[eta,i,0] w[eta,i,1]``.  Edges inside ``W_c`` are free, edges across
  ``W_0``/``W_1`` important.
* ``u[eta, gamma]``, ``1 <= gamma < ell``: joined to all of ``W^eta`` by
  important edges.
* ``p[j, alpha, beta]``: per clause, three important matching edges.
* ``q[a, b]``: the guard, two important matching edges.
* ``s[t]``: one simplicial vertex per clique of the free-edge cover.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import TextIO

from .cnf import Formula, RegularFormula
from .graph import EdgeClass, Graph, GraphBuilder, VertexName, bits, mask_of
from .graphio import FormatError, format_graph, parse_graph


def ceil_log2(m: int) -> int:
    if m < 1:
        raise ValueError("m must be positive")
    return (m - 1).bit_length()


def free_cover_size(ell: int, m: int) -> int:
    return 46 + 36 * ceil_log2(m) + 24 * ell


def budget(ell: int, m: int) -> tuple[int, int]:
    """``(k0, k)``: cliques for the important edges, and the total budget."""
    if ell < 1 or m < 1:
        raise ValueError("ell and m must be positive")
    k0 = 2 * 2 * (ell - 1) + 2 + 2
    return k0, k0 + free_cover_size(ell, m)


def _bit(x: int, gamma: int) -> int:
    # gamma counts from 1
    return (x >> (gamma - 1)) & 1


@dataclass(frozen=True)
class GadgetLayout:
    """Dense vertex ids: W1, W2, U1, U2, P, Q, S blocks in that order."""

    n: int
    m: int
    ell: int

    @property
    def free_count(self) -> int:
        return free_cover_size(self.ell, self.m)

    @property
    def u_base(self) -> int:
        return 4 * self.n

    @property
    def p_base(self) -> int:
        return self.u_base + 2 * (self.ell - 1)

    @property
    def q_base(self) -> int:
        return self.p_base + 6 * self.m

    @property
    def s_base(self) -> int:
        return self.q_base + 4

    @property
    def vertex_count(self) -> int:
        return self.s_base + self.free_count

    def w(self, eta: int, i: int, c: int) -> int:
        return (eta - 1) * 2 * self.n + 2 * i + c

    def u(self, eta: int, gamma: int) -> int:
        return self.u_base + (eta - 1) * (self.ell - 1) + gamma - 1

    def p(self, j: int, alpha: int, beta: int) -> int:
        return self.p_base + 6 * j + 2 * (alpha - 1) + beta - 1

    def q(self, a: int, b: int) -> int:
        return self.q_base + 2 * (a - 1) + b - 1

    def s(self, t: int) -> int:
        return self.s_base + t

    def names(self) -> list[VertexName]:
        out = []
        for eta in (1, 2):
            out += [VertexName.w(eta, i, c) for i in range(self.n) for c in (0, 1)]
        for eta in (1, 2):
            out += [VertexName.u(eta, g) for g in range(1, self.ell)]
        out += [VertexName.p(j, a, b) for j in range(self.m) for a in (1, 2, 3) for b in (1, 2)]
        out += [VertexName.q(a, b) for a in (1, 2) for b in (1, 2)]
        out += [VertexName.s(t) for t in range(self.free_count)]
        return out

    def w_side(self, eta: int, c: int) -> list[int]:
        return [self.w(eta, i, c) for i in range(self.n)]

    def w_block(self, eta: int) -> list[int]:
        return list(range(self.w(eta, 0, 0), self.w(eta, 0, 0) + 2 * self.n))

    def p_all(self) -> list[int]:
        return list(range(self.p_base, self.q_base))


@dataclass
class ReductionInstance:
    graph: Graph
    k: int
    k0: int
    formula: RegularFormula
    layout: GadgetLayout
    free_cover: list = field(repr=False)
    # free-cover index -> simplicial vertex id
    simplicial_of_clique: list = field(repr=False)


def build_free_cover(f: RegularFormula, layout: GadgetLayout) -> list[frozenset]:
    """Cliques covering every free edge between gadget vertices, in fixed order.

    Families: W-sides (4), guard with one P vertex per clause (24), P-to-P by
    bits of the clause index (36 per bit), ``w[.,0,0]`` with P (6), literal
    vertices ``w[., i(j,a), c(j,a)]`` with P (12), other W-to-P by bits of
    the variable index (24 per bit).
    """
    L = layout
    n, m, ell = L.n, L.m, L.ell
    out: list[frozenset] = []
    ab6 = [(a, b) for a in (1, 2, 3) for b in (1, 2)]

    for c in (0, 1):
        for c2 in (0, 1):
            out.append(frozenset(L.w_side(1, c) + L.w_side(2, c2)))

    for a in (1, 2):
        for b in (1, 2):
            for a2, b2 in ab6:
                out.append(frozenset([L.q(a, b)] + [L.p(j, a2, b2) for j in range(m)]))

    for gamma in range(1, ceil_log2(m) + 1):
        for a, b in ab6:
            for a2, b2 in ab6:
                out.append(frozenset(
                    L.p(j, a, b) if _bit(j, gamma) == 0 else L.p(j, a2, b2) for j in range(m)
                ))

    for a, b in ab6:
        out.append(frozenset([L.w(1, 0, 0), L.w(2, 0, 0)] + [L.p(j, a, b) for j in range(m)]))

    for a, b in ab6:
        for c in (0, 1):
            ws = [L.w(eta, i, c) for eta in (1, 2) for i in range(1, n)]
            ps = [L.p(j, a, b) for j in range(m) if f.sign(j, a) == c]
            out.append(frozenset(ws + ps))

    for gamma in range(1, ell + 1):
        for a, b in ab6:
            for c in (0, 1):
                for c2 in (0, 1):
                    ws = [L.w(eta, i, c) for eta in (1, 2) for i in range(1, n) if _bit(i, gamma) == c2]
                    ps = [L.p(j, a, b) for j in range(m) if _bit(f.var(j, a), gamma) == 1 - c2]
                    out.append(frozenset(ws + ps))
    return out


def _check_regular(f: RegularFormula) -> None:
    n = f.n
    if n < 4 or n & (n - 1):
        raise ValueError(f"variable count {n} is not a power of two >= 4")
    if f.ell != n.bit_length() - 1 or f.dup_offset != n // 2:
        raise ValueError("ell / dup_offset inconsistent with the variable count")
    if f.m < 1:
        raise ValueError("formula has no clauses (trivially satisfiable); nothing to encode")
    if not f.base.is_strict3():
        raise ValueError("clauses must hold three distinct variables")
    if any(v == 0 for c in f.base.clauses for v, _ in c):
        raise ValueError("variable 0 must be a dummy")
    half, mh = n // 2, f.m // 2
    first = f.base.clauses[:mh]
    if f.m % 2 or any(v >= half for c in first for v, _ in c) or f.base.clauses[mh:] != tuple(
        tuple((v + half, not pol) for v, pol in c) for c in first
    ):
        raise ValueError("second half of the clauses must mirror the first on negated duplicates")


def reduce(f: RegularFormula) -> ReductionInstance:
    _check_regular(f)
    n, m, ell = f.n, f.m, f.ell
    L = GadgetLayout(n, m, ell)
    b = GraphBuilder(0)
    for nm in L.names():
        b.add_vertex(nm)

    W = {eta: mask_of(L.w_block(eta)) for eta in (1, 2)}
    for eta in (1, 2):
        for c in (0, 1):
            b.add_clique(L.w_side(eta, c), EdgeClass.FREE)
        side1 = mask_of(L.w_side(eta, 1))
        for i in range(n):
            b.connect(L.w(eta, i, 0), side1 & ~(1 << L.w(eta, i, 1)), EdgeClass.IMP)
        for gamma in range(1, ell):
            b.connect(L.u(eta, gamma), W[eta], EdgeClass.IMP)
    b.add_biclique(L.w_block(1), L.w_block(2), EdgeClass.FREE)

    for j in range(m):
        for a in (1, 2, 3):
            b.add_edge(L.p(j, a, 1), L.p(j, a, 2), EdgeClass.IMP)
    b.add_edge(L.q(1, 1), L.q(1, 2), EdgeClass.IMP)
    b.add_edge(L.q(2, 1), L.q(2, 2), EdgeClass.IMP)

    FREE = EdgeClass.FREE
    p_all = mask_of(L.p_all())
    q_all = mask_of([L.q(a, c) for a in (1, 2) for c in (1, 2)])
    for v in L.p_all():
        b.add_row(v, q_all, FREE)
    for qv in bits(q_all):
        b.add_row(qv, p_all, FREE)

    # P-to-P and P-to-W rows, with the W-side mirror accumulated per (i, c)
    w_all = W[1] | W[2]
    w_blocked = {(0, 1): p_all}
    for j in range(m):
        pj = mask_of(L.p(j, a, c) for a in (1, 2, 3) for c in (1, 2))
        for a in (1, 2, 3):
            i, sgn = f.var(j, a), f.sign(j, a)
            pair = mask_of([L.p(j, a, 1), L.p(j, a, 2)])
            w_blocked[(i, 1 - sgn)] = w_blocked.get((i, 1 - sgn), 0) | pair
            forbidden = mask_of(
                [L.w(eta, 0, 1) for eta in (1, 2)] + [L.w(eta, i, 1 - sgn) for eta in (1, 2)]
            )
            for beta in (1, 2):
                b.add_row(L.p(j, a, beta), (p_all & ~pj) | (w_all & ~forbidden), FREE)
    for eta in (1, 2):
        for i in range(n):
            for c in (0, 1):
                b.add_row(L.w(eta, i, c), p_all & ~w_blocked.get((i, c), 0), FREE)

    free_cover = build_free_cover(f, L)
    simplicial = []
    attach: dict[int, int] = {}
    for t, clique in enumerate(free_cover):
        s = L.s(t)
        b.add_row(s, mask_of(clique), FREE)
        for v in clique:
            attach[v] = attach.get(v, 0) | 1 << s
        simplicial.append(s)
    for v, mask in attach.items():
        b.add_row(v, mask, FREE)

    k0, k = budget(ell, m)
    return ReductionInstance(b.build(), k, k0, f, L, free_cover, simplicial)


def imp_edge_count(n: int, m: int, ell: int) -> int:
    return 2 * (n * n - n) + 4 * n * (ell - 1) + 3 * m + 2


def layout_vertex_count(n: int, m: int, ell: int) -> int:
    return 2 * (2 * n + ell - 1) + 6 * m + 4 + free_cover_size(ell, m)


def simplicial_clique(inst: ReductionInstance, t: int) -> frozenset:
    """Closed neighbourhood of the ``t``-th simplicial vertex."""
    return inst.free_cover[t] | {inst.simplicial_of_clique[t]}


def check_free_cover(inst: ReductionInstance) -> list[str]:
    """Problems with the free-edge cover; empty when it is a valid one."""
    g, L = inst.graph, inst.layout
    problems = []
    if len(inst.free_cover) != L.free_count:
        problems.append(f"{len(inst.free_cover)} free cliques, expected {L.free_count}")
    core = L.s_base  # ids below this are gadget vertices
    covered = [0] * core
    for t, c in enumerate(inst.free_cover):
        m = mask_of(c)
        if not c or max(c) >= core:
            problems.append(f"free clique {t} is empty or leaves the gadget vertices")
            continue
        for v in c:
            if (g.row(v, EdgeClass.FREE) | (1 << v)) & m != m:
                problems.append(f"free clique {t} is not a clique of the free subgraph")
                break
            if g.row(v, EdgeClass.IMP) & m:
                problems.append(f"free clique {t} spans an important edge")
                break
            covered[v] |= m
    mask_core = (1 << core) - 1
    for v in range(core):
        left = g.row(v, EdgeClass.FREE) & mask_core & ~covered[v]
        if left:
            u = left.bit_length() - 1
            problems.append(f"free edge {min(u, v)}-{max(u, v)} not covered")
            break
    return problems


# --- text round-trip -------------------------------------------------------

def write_instance(inst: ReductionInstance, sink: TextIO) -> None:
    f = inst.formula
    meta = (
        f"meta normalized_vars={f.normalized_vars} input_vars={f.input_vars} "
        f"trivially_unsat={int(f.base.trivially_unsat)}"
    )
    comments = [
        f"edge clique cover instance: n={f.n} m={f.m} ell={f.ell} k0={inst.k0}",
        meta,
    ]
    sink.write(format_graph(inst.graph, inst.k, comments))


def _parse_meta(comments: list[str]) -> dict[str, int]:
    for line in comments:
        tok = line.split()
        if tok and tok[0] == "meta":
            out = {}
            for kv in tok[1:]:
                key, _, val = kv.partition("=")
                try:
                    out[key] = int(val)
                except ValueError:
                    raise FormatError(f"bad meta field {kv!r}") from None
            return out
    return {}


def regular_from_clauses(
    n: int,
    clauses,
    normalized_vars: int | None = None,
    input_vars: int | None = None,
    trivially_unsat: bool = False,
) -> RegularFormula:
    """Rebuild a :class:`RegularFormula` from its full clause list."""
    half = n // 2
    nv = half - 1 if normalized_vars is None else normalized_vars
    if not 0 <= nv < half:
        raise ValueError(f"normalized variable count {nv} does not fit {half} slots")
    pads = {0} | set(range(nv + 1, half))
    return RegularFormula(
        base=Formula(n, tuple(clauses), trivially_unsat, nv if input_vars is None else input_vars),
        ell=n.bit_length() - 1,
        dummy_indices=frozenset(pads | {i + half for i in pads}),
        dup_offset=half,
        orig_map={v: v + 1 for v in range(nv)},
        normalized_vars=nv,
    )


def parse_instance(text: str) -> ReductionInstance:
    """Read an instance back, recovering the formula from the missing P-W edges.

    The result is rebuilt from scratch and compared with the file, so any
    edit to the graph (or a wrong budget) is reported as a format error.
    """
    gf = parse_graph(text)
    g = gf.graph
    if g.names is None:
        raise FormatError("instance file carries no vertex names")
    counts: dict[str, int] = {}
    for nm in g.names:
        if nm is None:
            raise FormatError("every instance vertex must be named")
        counts[nm.kind] = counts.get(nm.kind, 0) + 1
    n = counts.get("w", 0) // 4
    m = counts.get("p", 0) // 6
    if n < 4 or n & (n - 1) or m < 1:
        raise FormatError("vertex names do not describe a reduction layout")
    L = GadgetLayout(n, m, n.bit_length() - 1)
    if L.vertex_count != g.vertex_count or list(g.names) != L.names():
        raise FormatError("vertex ids do not follow the reduction layout")

    w1_all = mask_of(L.w_block(1))
    clauses = []
    for j in range(m):
        lits = []
        for a in (1, 2, 3):
            missing = w1_all & ~g.adj(L.p(j, a, 1)) & ~(1 << L.w(1, 0, 1))
            if missing.bit_count() != 1:
                raise FormatError(f"clause gadget p {j} {a} has no unique missing literal edge")
            wid = missing.bit_length() - 1
            i, c = divmod(wid - L.w(1, 0, 0), 2)
            lits.append((i, c == 0))
        clauses.append(tuple(lits))

    meta = _parse_meta(gf.comments)
    try:
        f = regular_from_clauses(
            n, clauses, meta.get("normalized_vars"), meta.get("input_vars"),
            bool(meta.get("trivially_unsat", 0)),
        )
        inst = reduce(f)
    except ValueError as exc:
        raise FormatError(f"recovered formula is not regular: {exc}") from None
    if inst.graph != g:
        raise FormatError("graph differs from the construction for its own formula")
    if gf.k != inst.k:
        raise FormatError(f"header budget {gf.k} differs from the construction's k={inst.k}")
    return inst


def read_instance(source: TextIO) -> ReductionInstance:
    return parse_instance(source.read())
