import io
import random

import pytest

from eccforge import reduction as red
from eccforge.cnf import Formula, normalize, random_3cnf, regularize
from eccforge.graph import EdgeClass, VertexName, is_clique, mask_of
from eccforge.graphio import FormatError

from conftest import make_instance


@pytest.mark.parametrize("ell,m,expected", [(2, 2, (8, 138)), (3, 4, (12, 202)), (3, 8, (12, 238))])
def test_budget(ell, m, expected):
    assert red.budget(ell, m) == expected


def test_budget_rejects_empty():
    with pytest.raises(ValueError):
        red.budget(3, 0)


def test_free_cover_size_small():
    assert red.free_cover_size(2, 2) == 130


def test_three_var_example(small_instance):
    inst = small_instance
    L = inst.layout
    assert (L.n, L.m, L.ell) == (8, 4, 3)
    assert len(inst.free_cover) == 190
    assert (inst.k0, inst.k) == (12, 202)
    assert inst.graph.vertex_count == 254
    assert inst.k - inst.k0 == len(inst.free_cover)


def test_smallest_pipeline():
    inst = make_instance([(1,)], 1)
    L = inst.layout
    assert (L.n, L.m, L.ell) == (8, 8, 3)
    assert len(inst.free_cover) == 226
    assert inst.graph.vertex_count == 2 * (2 * 8 + 3 - 1) + 6 * 8 + 4 + 226 == 314


def test_imp_edge_count(small_instance):
    L = small_instance.layout
    assert small_instance.graph.num_edges(EdgeClass.IMP) == red.imp_edge_count(L.n, L.m, L.ell) == 190


def test_free_cover_checks_clean(small_instance):
    assert red.check_free_cover(small_instance) == []


def test_free_cover_family_sizes(small_instance):
    inst, L = small_instance, small_instance.layout
    fc = inst.free_cover
    assert fc[:4] == red.build_free_cover(inst.formula, L)[:4]
    # first family: W sides across copies
    assert fc[0] == frozenset(L.w_side(1, 0) + L.w_side(2, 0))
    # second family: one q and one p per clause
    assert all(len(c) == 1 + L.m for c in fc[4:28])


def test_gadget_non_adjacency(small_instance):
    g, L = small_instance.graph, small_instance.layout
    p_all = mask_of(L.p_all())
    q_all = mask_of(L.q(a, b) for a in (1, 2) for b in (1, 2))
    w_all = mask_of(L.w_block(1) + L.w_block(2))
    u_all = mask_of(L.u(eta, gm) for eta in (1, 2) for gm in range(1, L.ell))
    for eta in (1, 2):
        for gm in range(1, L.ell):
            assert g.adj(L.u(eta, gm)) & (p_all | q_all) == 0
    for a in (1, 2):
        for b in (1, 2):
            assert g.adj(L.q(a, b)) & (w_all | u_all) == 0


def test_missing_edge_law(small_instance):
    g, L, f = small_instance.graph, small_instance.layout, small_instance.formula
    w_all = mask_of(L.w_block(1) + L.w_block(2))
    for j in range(L.m):
        for a in (1, 2, 3):
            i, c = f.var(j, a), f.sign(j, a)
            expect = {L.w(eta, 0, 1) for eta in (1, 2)} | {L.w(eta, i, 1 - c) for eta in (1, 2)}
            for beta in (1, 2):
                missing = w_all & ~g.adj(L.p(j, a, beta))
                assert missing == mask_of(expect)


def test_gadget_classes(small_instance):
    g, L = small_instance.graph, small_instance.layout
    assert g.edge_class(L.w(1, 0, 0), L.w(1, 1, 0)) is EdgeClass.FREE
    assert g.edge_class(L.w(1, 0, 0), L.w(1, 1, 1)) is EdgeClass.IMP
    assert not g.has_edge(L.w(1, 2, 0), L.w(1, 2, 1))
    assert g.edge_class(L.w(1, 3, 0), L.w(2, 3, 1)) is EdgeClass.FREE
    assert g.edge_class(L.u(2, 1), L.w(2, 5, 1)) is EdgeClass.IMP
    assert g.edge_class(L.p(1, 2, 1), L.p(1, 2, 2)) is EdgeClass.IMP
    assert not g.has_edge(L.p(1, 2, 1), L.p(1, 3, 1))
    assert g.edge_class(L.q(1, 1), L.q(1, 2)) is EdgeClass.IMP
    assert not g.has_edge(L.q(1, 1), L.q(2, 1))


def test_simplicial_vertices(small_instance):
    inst = small_instance
    g = inst.graph
    for t, s in enumerate(inst.simplicial_of_clique):
        assert set(g.neighbors(s)) == set(inst.free_cover[t])
        assert is_clique(g, inst.free_cover[t])
        assert g.row(s, EdgeClass.IMP) == 0
        assert g.name_of(s) == VertexName.s(t)


def test_reduce_rejects_irregular():
    rf = regularize(normalize(Formula(3, (((0, True), (1, True), (2, True)),))))
    bad = red.regular_from_clauses(rf.n, rf.base.clauses[:1] * 2)
    with pytest.raises(ValueError, match="mirror"):
        red.reduce(bad)
    with pytest.raises(ValueError):
        red.reduce(regularize(normalize(Formula(3, ()))))


def test_instance_round_trip(small_instance):
    buf = io.StringIO()
    red.write_instance(small_instance, buf)
    text = buf.getvalue()
    header = next(line for line in text.splitlines() if line.startswith("p "))
    assert header.split()[-1] == str(red.budget(3, 4)[1])
    back = red.read_instance(io.StringIO(text))
    assert back.graph == small_instance.graph
    assert back.k == small_instance.k
    assert back.formula.base.clauses == small_instance.formula.base.clauses
    assert back.formula.input_vars == 3


def test_instance_tamper_detected(small_instance):
    buf = io.StringIO()
    red.write_instance(small_instance, buf)
    lines = buf.getvalue().splitlines()
    head = next(t for t, line in enumerate(lines) if line.startswith("p "))
    wrong_k = lines[:head] + [lines[head].rsplit(" ", 1)[0] + " 201"] + lines[head + 1:]
    with pytest.raises(FormatError, match="budget"):
        red.parse_instance("\n".join(wrong_k))
    dup = lines + [next(line for line in lines if line.startswith("e "))]
    fields = lines[head].split()
    fields[3] = str(int(fields[3]) + 1)
    dup[head] = " ".join(fields)
    with pytest.raises(FormatError, match="duplicate"):
        red.parse_instance("\n".join(dup))


def test_size_linearity_random():
    rng = random.Random(99)
    for _ in range(10):
        rf = regularize(normalize(random_3cnf(rng.randint(3, 9), rng.randint(1, 25), rng)))
        inst = red.reduce(rf)
        n, m, ell = rf.n, rf.m, rf.ell
        assert inst.graph.vertex_count == red.layout_vertex_count(n, m, ell)
        assert inst.graph.vertex_count <= 42 * (n + m) + 48
        assert inst.k == 28 * ell + 46 + 36 * red.ceil_log2(m)
        assert red.check_free_cover(inst) == []
