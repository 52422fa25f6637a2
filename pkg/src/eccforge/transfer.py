"""Translate certificates between a formula and its reduction instance.

``cover_from_assignment`` turns a satisfying, balanced assignment into a
clique cover of exactly ``k`` cliques; ``assignment_from_cover`` reads a
satisfying assignment back out of a valid cover.
"""

from __future__ import annotations

from dataclasses import dataclass

from .cnf import evaluate
from .cocktail import TwinPair, build_cocktail, extend_twin_cover
from .graph import EdgeClass, verify_cover
from .reduction import ReductionInstance, simplicial_clique


class TransferError(ValueError):
    pass


class InvalidCover(TransferError):
    def __init__(self, report):
        self.report = report
        super().__init__(f"cover is not valid: {report.first_violation}")


@dataclass(frozen=True)
class AssignmentWitness:
    phi: tuple[int, ...]
    # alpha[j] in {1, 2, 3}: the satisfied literal chosen for clause j
    alpha: tuple[int, ...]


def make_witness(inst: ReductionInstance, phi) -> AssignmentWitness:
    """Validate ``phi`` (full, or first half only) and pick a literal per clause.

    A half-length ``phi`` is extended with negated duplicates.  The smallest
    satisfied literal index is chosen for each clause.
    """
    f = inst.formula
    phi = [int(bool(x)) for x in phi]
    if len(phi) == f.dup_offset:
        phi = phi + [1 - x for x in phi]
    if len(phi) != f.n:
        raise TransferError(f"assignment has {len(phi)} values, expected {f.n} or {f.dup_offset}")
    if phi[0] != 0:
        raise TransferError("the dummy variable 0 must be false")
    if sum(phi) != f.n // 2:
        raise TransferError(f"assignment is unbalanced: {sum(phi)} of {f.n} variables true")
    alpha = []
    for j, clause in enumerate(f.base.clauses):
        for a, (v, pol) in enumerate(clause, 1):
            if phi[v] == int(pol):
                alpha.append(a)
                break
        else:
            raise TransferError(f"assignment does not satisfy clause {j}")
    return AssignmentWitness(tuple(phi), tuple(alpha))


def cover_from_assignment(inst: ReductionInstance, phi) -> list[frozenset]:
    """The ``k``-clique cover built from a satisfying assignment.

    Order: the simplicial closed neighbourhoods, the assignment twins,
    ``2(ell-1)`` cliques per copy carrying the ``u`` vertices, then the two
    guard cliques.
    """
    wit = make_witness(inst, phi)
    L, f = inst.layout, inst.formula
    n, m, ell = L.n, L.m, L.ell
    phi, alpha = wit.phi, wit.alpha

    cover = [simplicial_clique(inst, t) for t in range(len(inst.free_cover))]

    c0 = [L.w(eta, i, phi[i]) for eta in (1, 2) for i in range(n)]
    c0 += [L.p(j, alpha[j], b) for j in range(m) for b in (1, 2)]
    c1 = [L.w(eta, i, 1 - phi[i]) for eta in (1, 2) for i in range(n)]
    cover += [frozenset(c0), frozenset(c1)]

    # copy eta of W is H_{ell+1} via w[eta,i,c] <-> 2i + c
    h = build_cocktail(ell + 1)
    everything = frozenset(range(2 * n))
    sides = frozenset(2 * i for i in range(n))
    assign = frozenset(2 * i + phi[i] for i in range(n))
    seed = [TwinPair(sides, everything - sides), TwinPair(assign, everything - assign)]
    pairs = extend_twin_cover(h, seed)[2:]
    for eta in (1, 2):
        for gamma, pair in enumerate(pairs, 1):
            u = L.u(eta, gamma)
            for side in pair:
                cover.append(frozenset([L.w(eta, x >> 1, x & 1) for x in side] + [u]))

    # leftover clause edges: lower alpha joins the first guard edge
    q_first = [L.q(1, 1), L.q(1, 2)]
    q_second = [L.q(2, 1), L.q(2, 2)]
    for j in range(m):
        lo, hi = (a for a in (1, 2, 3) if a != alpha[j])
        q_first += [L.p(j, lo, 1), L.p(j, lo, 2)]
        q_second += [L.p(j, hi, 1), L.p(j, hi, 2)]
    cover += [frozenset(q_first), frozenset(q_second)]
    return cover


def assignment_from_cover(inst: ReductionInstance, cover) -> list[int]:
    """Extract a satisfying assignment of the regular formula from a valid cover.

    Candidates for the assignment clique are cliques holding both ends of
    some clause-gadget edge and no guard vertex, taken in cover order.  Each
    candidate is read through copy 1, then copy 2: ``phi(i) = c`` for the
    unique ``w[eta,i,c]`` it contains.  The first reading that satisfies the
    formula wins.
    """
    cover = [frozenset(c) for c in cover]
    report = verify_cover(inst.graph, cover)
    if not report.valid:
        raise InvalidCover(report)
    L, f = inst.layout, inst.formula
    n, m = L.n, L.m
    q_vertices = {L.q(a, b) for a in (1, 2) for b in (1, 2)}
    p_edges = [(L.p(j, a, 1), L.p(j, a, 2)) for j in range(m) for a in (1, 2, 3)]

    candidates = [
        c for c in cover
        if not (c & q_vertices) and any(x in c and y in c for x, y in p_edges)
    ]
    if not candidates:
        raise TransferError("no clique outside the guard cliques covers a clause-gadget edge")
    for c in candidates:
        for eta in (1, 2):
            phi = []
            for i in range(n):
                has0, has1 = L.w(eta, i, 0) in c, L.w(eta, i, 1) in c
                if has0 == has1:
                    break
                phi.append(int(has1))
            else:
                if evaluate(f, phi):
                    return phi
    raise TransferError(
        f"none of {len(candidates)} candidate assignment cliques yields a satisfying "
        "assignment in either copy (cover is larger than k or not of the expected shape)"
    )


def imp_edges_covered(inst: ReductionInstance, cover) -> bool:
    return verify_cover(inst.graph, cover, EdgeClass.IMP).valid
