import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from eccforge.cnf import (
    DimacsError,
    Formula,
    brute_force_sat,
    evaluate,
    format_assignment,
    format_dimacs,
    normalize,
    parse_assignment,
    parse_dimacs,
    random_3cnf,
    regularize,
)


def F(num_vars, *clauses):
    return Formula(num_vars, tuple(tuple((abs(x) - 1, x > 0) for x in c) for c in clauses))


@st.composite
def formulas(draw, max_vars=6, max_clauses=8, max_width=3):
    nv = draw(st.integers(1, max_vars))
    lit = st.integers(1, nv).flatmap(lambda v: st.sampled_from([v, -v]))
    clauses = draw(st.lists(st.lists(lit, min_size=1, max_size=max_width), max_size=max_clauses))
    return F(nv, *clauses)


def all_sat(f):
    return any(evaluate(f, list(a)) for a in itertools.product((0, 1), repeat=f.num_vars))


# --- parsing ---------------------------------------------------------------

def test_parse_unit():
    f = parse_dimacs("p cnf 1 1\n1 0\n")
    assert f.num_vars == 1 and f.clauses == (((0, True),),)


def test_parse_mixed_signs():
    assert parse_dimacs("p cnf 3 1\n1 -2 3 0\n").clauses == (((0, True), (1, False), (2, True)),)


def test_parse_keeps_repeats():
    f = parse_dimacs("p cnf 2 1\n1 1 -1 0")
    assert f.clauses == (((0, True), (0, True), (0, False)),)


def test_parse_multiline_and_comments():
    f = parse_dimacs("c hi\np cnf 3 2\n1 2\n3 0 -1\n-2 0\n%\n0\n")
    assert f.clauses == (((0, True), (1, True), (2, True)), ((0, False), (1, False)))


@pytest.mark.parametrize(
    "text",
    [
        "p cnf x 1\n1 0\n",
        "p cnf 2 1\n3 0\n",
        "p cnf 2 1\n1 2\n",
        "p cnf 2 2\n1 0\n",
        "1 0\n",
    ],
)
def test_parse_errors(text):
    with pytest.raises(DimacsError):
        parse_dimacs(text)


def test_parse_lenient_count():
    assert parse_dimacs("p cnf 2 2\n1 0\n", strict=False).num_clauses == 1


def test_dimacs_round_trip():
    f = F(4, (1, -2, 3), (-4, 2, 1))
    assert parse_dimacs(format_dimacs(f)) == f


# --- normalize -------------------------------------------------------------

def test_unit_clause_splits_into_four():
    g = normalize(F(1, (1,)))
    assert g.num_vars == 3 and g.num_clauses == 4
    assert g.is_strict3()
    assert all(c[0] == (0, True) for c in g.clauses)
    # equisatisfiable over all 8 assignments: x1 decides
    for a in itertools.product((0, 1), repeat=3):
        assert evaluate(g, list(a)) == bool(a[0])


def test_tautology_removed():
    g = normalize(F(2, (1, -1, 2)))
    assert g.clauses == ()


def test_strict_input_unchanged():
    f = F(3, (1, -2, 3), (-1, 2, 3))
    g = normalize(f)
    assert g.clauses == f.clauses and g.num_vars == 3


def test_duplicate_clauses_dropped():
    g = normalize(F(3, (1, 2, 3), (3, 2, 1), (1, 1, 2, 3)))
    assert g.num_clauses == 1


def test_wide_clause_rejected():
    with pytest.raises(ValueError, match="more than three"):
        normalize(F(4, (1, 2, 3, 4)))
    # repeats collapse before the width check
    assert normalize(F(3, (1, 2, 3, 1))).num_clauses == 1


def test_empty_clause_marks_unsat():
    g = normalize(Formula(2, ((),)))
    assert g.trivially_unsat and g.is_strict3()
    assert brute_force_sat(g) is None


@settings(max_examples=150, deadline=None)
@given(formulas())
def test_normalize_properties(f):
    g = normalize(f)
    assert g.is_strict3()
    assert len({frozenset(c) for c in g.clauses}) == g.num_clauses
    assert (brute_force_sat(f) is not None) == (brute_force_sat(g) is not None)
    assert normalize(g).clauses == g.clauses
    assert g.input_vars == f.num_vars


def test_normalize_preserves_sat_on_corpus():
    rng = random.Random(7)
    for _ in range(200):
        nv = rng.randint(1, 12)
        clauses = []
        for _ in range(rng.randint(0, 30)):
            w = rng.randint(1, 3)
            clauses.append([rng.choice([1, -1]) * rng.randint(1, nv) for _ in range(w)])
        f = F(nv, *clauses)
        g = normalize(f)
        assert (brute_force_sat(f) is not None) == (brute_force_sat(g) is not None)


# --- regularize ------------------------------------------------------------

def test_regularize_three_vars():
    rf = regularize(normalize(F(3, (1, 2, 3), (-1, -2, 3))))
    assert (rf.n, rf.m, rf.ell, rf.dup_offset) == (8, 4, 3, 4)
    assert rf.dummy_indices == {0, 4}
    assert rf.orig_map == {0: 1, 1: 2, 2: 3}


def test_regularize_four_vars_jumps_to_sixteen():
    rf = regularize(F(4, (1, 2, 3), (2, 3, -4)))
    assert (rf.n, rf.ell, rf.dup_offset) == (16, 4, 8)
    assert {0, 5, 6, 7} <= rf.dummy_indices


def test_regularize_requires_strict():
    with pytest.raises(ValueError):
        regularize(F(2, (1, 2)))


@settings(max_examples=100, deadline=None)
@given(formulas(max_vars=5))
def test_regular_structure(f):
    g = normalize(f)
    if not g.clauses:
        return
    rf = regularize(g)
    n, m = rf.n, rf.m
    assert n & (n - 1) == 0 and m == 2 * g.num_clauses
    assert all(v != 0 for c in rf.base.clauses for v, _ in c)
    half = n // 2
    for j in range(m // 2):
        for a in (1, 2, 3):
            assert rf.var(j + m // 2, a) == rf.var(j, a) + half
            assert rf.sign(j + m // 2, a) == 1 - rf.sign(j, a)
    # sat equivalence and balanced lifting
    assert (brute_force_sat(g) is not None) == (brute_force_sat(rf) is not None)
    for a in itertools.islice(itertools.product((0, 1), repeat=g.num_vars), 16):
        full = rf.lift(a)
        assert sum(full) == half
        assert evaluate(rf, full) == evaluate(g, list(a))
        assert rf.project(full) == list(a)


# --- evaluate / brute force / assignments ----------------------------------

def test_evaluate_unit():
    f = F(1, (1,))
    assert evaluate(f, [1]) and not evaluate(f, [0])
    with pytest.raises(ValueError):
        evaluate(f, [1, 0])


def test_brute_force_examples():
    assert brute_force_sat(F(1, (1,), (-1,))) is None
    w = brute_force_sat(F(3, (1, 2, 3)))
    assert w is not None and evaluate(F(3, (1, 2, 3)), w)


def test_brute_force_random_agrees():
    rng = random.Random(11)
    for _ in range(50):
        f = random_3cnf(8, rng.randint(1, 40), rng)
        w = brute_force_sat(f)
        if w is None:
            assert not all_sat(f)
        else:
            assert evaluate(f, w)


def test_brute_force_guard():
    with pytest.raises(ValueError):
        brute_force_sat(Formula(25, ()))


def test_assignment_text():
    assert format_assignment([1, 0, 1]) == "1 -2 3"
    assert parse_assignment("1 -2 3", 3) == [1, 0, 1]
    assert parse_assignment("v -1 2 0\n", 3) == [0, 1, 0]
    assert parse_assignment("UNSAT\n", 3) is None
    assert parse_assignment("s UNSATISFIABLE\n", 3) is None
    for bad in ("4", "1 -1", "x"):
        with pytest.raises(DimacsError):
            parse_assignment(bad, 3)


def test_random_3cnf_shape():
    f = random_3cnf(5, 10, random.Random(0))
    assert f.num_clauses == 10 and f.is_strict3()
