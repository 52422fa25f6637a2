"""Cocktail party graphs, twin clique covers and their extension."""

from __future__ import annotations

import itertools
from collections.abc import Iterator, Sequence
from dataclasses import dataclass
from math import comb

from .graph import EdgeClass, Graph, GraphBuilder, is_clique, mask_of, verify_cover

MAX_CLIQUE_ITER_ELL = 20


@dataclass(frozen=True)
class CocktailGraph:
    """Complete graph on ``2**ell`` vertices minus the matching ``{2t, 2t+1}``."""

    ell: int
    graph: Graph

    @property
    def order(self) -> int:
        return 1 << self.ell

    @staticmethod
    def partner(v: int) -> int:
        return v ^ 1


@dataclass(frozen=True)
class TwinPair:
    side0: frozenset
    side1: frozenset

    def __iter__(self):
        yield self.side0
        yield self.side1


def build_cocktail(ell: int) -> CocktailGraph:
    if ell < 1:
        raise ValueError("ell must be at least 1")
    n = 1 << ell
    b = GraphBuilder(n)
    full = (1 << n) - 1
    for v in range(n):
        b.add_row(v, full & ~(1 << v) & ~(1 << (v ^ 1)), EdgeClass.IMP)
    return CocktailGraph(ell, b.build())


def twin_of(g: CocktailGraph, clique) -> TwinPair:
    side0 = frozenset(clique)
    return TwinPair(side0, frozenset(range(g.order)) - side0)


def is_maximum_clique(g: CocktailGraph, vertices) -> bool:
    s = frozenset(vertices)
    return len(s) == g.order // 2 and all((v ^ 1) not in s for v in s)


def is_twin_pair(g: CocktailGraph, pair: TwinPair) -> bool:
    return (
        is_maximum_clique(g, pair.side0)
        and pair.side1 == frozenset(range(g.order)) - pair.side0
    )


def extend_twin_cover(g: CocktailGraph, seed: Sequence[TwinPair]) -> list[TwinPair]:
    """Complete ``seed`` to a twin clique cover of ``ell`` pairs.

    Every choice of one side per seed pair must intersect in exactly
    ``2**(ell - delta)`` vertices.  Vertex ``v`` gets an ``ell``-bit label:
    the first ``delta`` bits record which side of each seed pair holds it
    (0 for ``side0``), and the rest number ``v`` within its class of equal
    seed bits.  Classes are numbered by vertex id and the complementary
    class receives the complemented numbers via the partner map, so
    non-adjacent vertices carry complementary labels.  Pair ``gamma``
    splits the vertices by label bit ``gamma``; the first ``delta`` pairs
    reproduce the seed.
    """
    ell, n = g.ell, g.order
    delta = len(seed)
    if not 1 <= delta <= ell:
        raise ValueError(f"seed must hold between 1 and {ell} twin pairs, got {delta}")
    for t, pair in enumerate(seed):
        if not is_twin_pair(g, pair):
            raise ValueError(f"seed pair {t} is not a pair of clique twins")

    prefix = [0] * n
    for t, pair in enumerate(seed):
        for v in pair.side1:
            prefix[v] |= 1 << t

    classes: dict[int, list[int]] = {}
    for v in range(n):
        classes.setdefault(prefix[v], []).append(v)
    want = 1 << (ell - delta)
    for choice in range(1 << delta):
        size = len(classes.get(choice, ()))
        if size != want:
            raise ValueError(
                f"side choice {choice:0{delta}b} intersects in {size} vertices, expected {want}"
            )

    suffix = [None] * n
    rest = ell - delta
    low = (1 << rest) - 1
    for c in sorted(classes):
        if suffix[classes[c][0]] is not None:
            continue  # numbered as the complement of an earlier class
        for t, v in enumerate(classes[c]):
            suffix[v] = t
            suffix[v ^ 1] = low ^ t

    pairs = list(seed)
    for r in range(rest):
        side0 = frozenset(v for v in range(n) if not (suffix[v] >> r) & 1)
        pairs.append(TwinPair(side0, frozenset(range(n)) - side0))
    return pairs


def flatten(pairs: Sequence[TwinPair]) -> list[frozenset]:
    return [side for pair in pairs for side in pair]


def gregory_pullman_opt(num_pairs: int) -> int:
    """Least ``k`` with ``num_pairs <= C(k - 1, ceil(k / 2))``.

    This is the clique cover number of the cocktail party graph on
    ``2 * num_pairs`` vertices (Gregory and Pullman).
    """
    if num_pairs < 2:
        raise ValueError("defined for at least 2 pairs")
    k = 1
    while comb(k - 1, (k + 1) // 2) < num_pairs:
        k += 1
    return k


def enumerate_max_cliques_cocktail(g: CocktailGraph, max_ell: int = MAX_CLIQUE_ITER_ELL) -> Iterator[frozenset]:
    """Lazily yield the ``2**(2**(ell-1))`` one-endpoint-per-pair cliques."""
    if g.ell > max_ell:
        raise ValueError(f"ell={g.ell} exceeds the enumeration guard {max_ell}")
    pairs = [(2 * t, 2 * t + 1) for t in range(g.order // 2)]
    return (frozenset(choice) for choice in itertools.product(*pairs))


def all_cliques(g: CocktailGraph) -> list[frozenset]:
    """Every nonempty clique: at most one endpoint per removed matching edge."""
    options = [(None, 2 * t, 2 * t + 1) for t in range(g.order // 2)]
    out = []
    for choice in itertools.product(*options):
        s = frozenset(v for v in choice if v is not None)
        if s:
            out.append(s)
    return out


@dataclass
class LastTwinReport:
    ell: int
    seeds_checked: int = 0
    completions_checked: int = 0
    small_cover: tuple | None = None  # counterexample: cover with < 2*ell cliques
    non_twin_cover: tuple | None = None  # counterexample: 2*ell cover that is not twin

    @property
    def holds(self) -> bool:
        return self.small_cover is None and self.non_twin_cover is None


def check_last_twin(ell: int) -> LastTwinReport:
    """Exhaustively test that ``ell - 1`` twin pairs need two more cliques, and only twins.

    For each set of ``ell - 1`` distinct twin pairs, no single extra clique
    completes a cover, and every two extra cliques that complete it are
    complements of each other (hence twins).  Intended for ``ell <= 3``.
    """
    g = build_cocktail(ell)
    everything = frozenset(range(g.order))
    twins = {}
    for c in enumerate_max_cliques_cocktail(g):
        key = min(c, everything - c, key=sorted)
        twins[key] = twin_of(g, key)
    twin_list = sorted(twins.values(), key=lambda p: sorted(p.side0))
    candidates = all_cliques(g)
    report = LastTwinReport(ell)
    for base_pairs in itertools.combinations(twin_list, ell - 1):
        base = flatten(base_pairs)
        base_set = set(base)
        report.seeds_checked += 1
        extras = [c for c in candidates if c not in base_set]
        if verify_cover(g.graph, base).valid:
            report.small_cover = tuple(base)
        for c in extras:
            if verify_cover(g.graph, base + [c]).valid:
                report.small_cover = tuple(base + [c])
        for c1, c2 in itertools.combinations(extras, 2):
            report.completions_checked += 1
            if c2 != everything - c1 and verify_cover(g.graph, base + [c1, c2]).valid:
                report.non_twin_cover = tuple(base + [c1, c2])
    return report
