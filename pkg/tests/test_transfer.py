import random

import pytest

from eccforge.acceptance import formula_corpus
from eccforge.cnf import brute_force_sat, evaluate, normalize, regularize
from eccforge.graph import is_clique, verify_cover
from eccforge.reduction import reduce
from eccforge.transfer import (
    InvalidCover,
    TransferError,
    assignment_from_cover,
    cover_from_assignment,
    imp_edges_covered,
    make_witness,
)

# x1=1, x2=0, x3=1 satisfies both clauses of the session instance
PHI = [1, 0, 1]


@pytest.fixture(scope="module")
def cover(small_instance):
    return cover_from_assignment(small_instance, small_instance.formula.lift(PHI))


def test_cover_size_and_validity(small_instance, cover):
    assert len(cover) == small_instance.k == 202
    assert verify_cover(small_instance.graph, cover).valid
    assert imp_edges_covered(small_instance, cover)
    assert all(is_clique(small_instance.graph, c) for c in cover)


def test_guard_cliques_hold_one_edge_per_clause(small_instance, cover):
    L = small_instance.layout
    for clique, a in zip(cover[-2:], (1, 2)):
        assert {L.q(a, 1), L.q(a, 2)} <= clique
        for j in range(L.m):
            held = [al for al in (1, 2, 3) if {L.p(j, al, 1), L.p(j, al, 2)} <= clique]
            assert len(held) == 1


def test_assignment_clique(small_instance, cover):
    inst = small_instance
    L = inst.layout
    wit = make_witness(inst, inst.formula.lift(PHI))
    c0 = cover[len(inst.free_cover)]
    assert wit.phi[0] == 0
    assert {L.w(eta, i, wit.phi[i]) for eta in (1, 2) for i in range(L.n)} <= c0
    assert is_clique(inst.graph, c0)
    for j, a in enumerate(wit.alpha):
        assert {L.p(j, a, 1), L.p(j, a, 2)} <= c0
        f = inst.formula
        assert wit.phi[f.var(j, a)] == f.sign(j, a)


def test_half_assignment_accepted(small_instance):
    f = small_instance.formula
    full = f.lift(PHI)
    assert make_witness(small_instance, full[: f.dup_offset]).phi == tuple(full)


def test_witness_errors(small_instance):
    f = small_instance.formula
    full = f.lift(PHI)
    with pytest.raises(TransferError, match="dummy"):
        make_witness(small_instance, [1 - x for x in full])
    unbalanced = list(full)
    unbalanced[1] = 1 - unbalanced[1]
    with pytest.raises(TransferError, match="unbalanced"):
        make_witness(small_instance, unbalanced)
    with pytest.raises(TransferError, match="does not satisfy"):
        make_witness(small_instance, f.lift([0, 0, 0]))
    with pytest.raises(TransferError):
        make_witness(small_instance, full[:3])


def test_round_trip(small_instance, cover):
    phi = assignment_from_cover(small_instance, cover)
    assert evaluate(small_instance.formula, phi)
    assert small_instance.formula.project(phi) == PHI


def test_round_trip_ignores_simplicial_order(small_instance, cover):
    # extraction only reads the assignment clique; shuffling the rest is harmless
    rest = cover[: len(small_instance.free_cover)]
    random.Random(5).shuffle(rest)
    phi = assignment_from_cover(small_instance, rest + cover[len(small_instance.free_cover):])
    assert evaluate(small_instance.formula, phi)


def test_both_guard_edges_in_one_clique(small_instance, cover):
    merged = cover[:-2] + [cover[-2] | cover[-1]]
    with pytest.raises(InvalidCover):
        assignment_from_cover(small_instance, merged)


def test_invalid_cover_rejected(small_instance, cover):
    with pytest.raises(InvalidCover) as err:
        assignment_from_cover(small_instance, cover[:-1])
    assert err.value.report.first_violation.kind == "uncovered"


def test_perturbed_cover_hits_error_path(small_instance, cover):
    # strip the clause vertices from the assignment clique and cover those
    # edges with 2-cliques: valid, larger than k, and no usable candidate
    inst = small_instance
    L = inst.layout
    start = len(inst.free_cover)
    c0 = cover[start]
    p_part = {v for v in c0 if L.p_base <= v < L.q_base}
    pairs = [frozenset({L.p(j, a, 1), L.p(j, a, 2)}) for j in range(L.m) for a in (1, 2, 3)
             if L.p(j, a, 1) in p_part]
    perturbed = cover[:start] + [c0 - p_part] + cover[start + 1:] + pairs
    assert len(perturbed) > inst.k
    assert verify_cover(inst.graph, perturbed).valid
    with pytest.raises(TransferError, match="either copy"):
        assignment_from_cover(inst, perturbed)


def test_round_trip_corpus():
    rng = random.Random(4321)
    done = 0
    for f in formula_corpus(25, 10, 12, rng):
        norm = normalize(f)
        if not norm.clauses:
            continue
        w = brute_force_sat(norm)
        if w is None:
            continue
        inst = reduce(regularize(norm))
        cover = cover_from_assignment(inst, inst.formula.lift(w))
        assert len(cover) == inst.k
        phi = assignment_from_cover(inst, cover)
        assert evaluate(norm, inst.formula.project(phi))
        done += 1
    assert done > 0
