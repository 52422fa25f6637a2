"""DIMACS CNF parsing, strict 3-CNF normalization and regularization.

Variables are 0-based internally; DIMACS variable ``v`` is index ``v - 1``.
A literal is ``(var, positive)``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Optional

Literal = tuple[int, bool]
Clause = tuple[Literal, ...]

BRUTE_FORCE_MAX_VARS = 24


class DimacsError(ValueError):
    pass


@dataclass(frozen=True)
class Formula:
    num_vars: int
    clauses: tuple[Clause, ...]
    # set by normalize(): the instance contained an empty clause
    trivially_unsat: bool = False
    # set by normalize(): variable count before fresh splitting variables were added
    input_vars: Optional[int] = None

    def __post_init__(self):
        object.__setattr__(self, "clauses", tuple(tuple(c) for c in self.clauses))
        for c in self.clauses:
            for var, _ in c:
                if not 0 <= var < self.num_vars:
                    raise ValueError(f"literal variable {var} out of range [0, {self.num_vars})")

    @property
    def num_clauses(self) -> int:
        return len(self.clauses)

    def is_strict3(self) -> bool:
        return all(len(c) == 3 and len({v for v, _ in c}) == 3 for c in self.clauses)


def _lit_from_int(x: int) -> Literal:
    return (abs(x) - 1, x > 0)


def _lit_to_int(lit: Literal) -> int:
    return (lit[0] + 1) if lit[1] else -(lit[0] + 1)


def _fmt_clause(lits) -> str:
    return "(" + " ".join(str(_lit_to_int(l)) for l in lits) + ")"


def parse_dimacs(text: str, strict: bool = True) -> Formula:
    """Parse DIMACS CNF.

    With ``strict`` the clause count must match the header.  Literals are
    kept exactly as written; :func:`normalize` deals with repeats and
    tautologies.
    """
    header = None
    clauses: list[Clause] = []
    current: list[Literal] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line[0] in "c%":
            if line.startswith("%"):
                break  # SATLIB trailer
            continue
        tok = line.split()
        if tok[0] == "p":
            if header is not None:
                raise DimacsError(f"line {lineno}: duplicate header")
            if len(tok) != 4 or tok[1] != "cnf":
                raise DimacsError(f"line {lineno}: malformed header {line!r}")
            try:
                header = (int(tok[2]), int(tok[3]))
            except ValueError:
                raise DimacsError(f"line {lineno}: malformed header {line!r}") from None
            if header[0] < 0 or header[1] < 0:
                raise DimacsError(f"line {lineno}: negative header field")
            continue
        if header is None:
            raise DimacsError(f"line {lineno}: clause before 'p cnf' header")
        for t in tok:
            try:
                x = int(t)
            except ValueError:
                raise DimacsError(f"line {lineno}: bad literal {t!r}") from None
            if x == 0:
                clauses.append(tuple(current))
                current = []
            elif abs(x) > header[0]:
                raise DimacsError(f"line {lineno}: literal {x} exceeds {header[0]} variables")
            else:
                current.append(_lit_from_int(x))
    if header is None:
        raise DimacsError("missing 'p cnf' header")
    if current:
        raise DimacsError("last clause is not terminated by 0")
    if strict and len(clauses) != header[1]:
        raise DimacsError(f"header announces {header[1]} clauses, found {len(clauses)}")
    return Formula(header[0], tuple(clauses))


def format_dimacs(f: Formula, comments=()) -> str:
    out = [f"c {c}" for c in comments]
    out.append(f"p cnf {f.num_vars} {len(f.clauses)}")
    out.extend(" ".join(str(_lit_to_int(l)) for l in c) + " 0" for c in f.clauses)
    return "\n".join(out) + "\n"


def normalize(f: Formula) -> Formula:
    """Rewrite into strict 3-CNF: three distinct variables per clause, no repeats.

    Repeated literals collapse, tautologies are dropped, and a clause of
    width ``w < 3`` is split on ``3 - w`` fresh variables ``y``
    (``C`` becomes ``C or y`` and ``C or not y``), which is logically
    equivalent to ``C`` for every value of ``y``.  The fresh variables are
    shared by all short clauses and appended after the input variables.
    An empty clause expands to all eight sign patterns over the three fresh
    variables and sets ``trivially_unsat``.  Clauses already in strict form
    keep their literal order.  Wider clauses are rejected.
    """
    cleaned: list[Clause] = []
    need_fresh = 0
    empty = False
    for clause in f.clauses:
        lits: list[Literal] = []
        for lit in clause:
            if lit not in lits:
                lits.append(lit)
        vars_ = [v for v, _ in lits]
        if len(set(vars_)) != len(vars_):
            continue  # x or not x
        if len(lits) > 3:
            raise ValueError(f"clause {_fmt_clause(lits)} has more than three literals; input must be 3-CNF")
        if not lits:
            empty = True
        need_fresh = max(need_fresh, 3 - len(lits))
        cleaned.append(tuple(lits))

    fresh = list(range(f.num_vars, f.num_vars + need_fresh))
    out: list[Clause] = []
    seen: set[frozenset] = set()
    for lits in cleaned:
        expanded = [lits]
        for y in fresh[: 3 - len(lits)]:
            expanded = [c + ((y, pol),) for c in expanded for pol in (True, False)]
        for c in expanded:
            key = frozenset(c)
            if key not in seen:
                seen.add(key)
                out.append(c)
    return Formula(
        f.num_vars + need_fresh,
        tuple(out),
        trivially_unsat=empty or f.trivially_unsat,
        input_vars=f.input_vars if f.input_vars is not None else f.num_vars,
    )


@dataclass(frozen=True)
class RegularFormula:
    """A strict 3-CNF over ``n = 2**ell`` variables with a dummy at index 0.

    Variables ``[0, n/2)`` hold the padded formula (dummy at 0, the
    normalized variables shifted up by one, further dummies on top);
    ``i + n/2`` is the negated duplicate of ``i``.  Clause ``j + m/2`` is
    the mirror of clause ``j``.
    """

    base: Formula
    ell: int
    dummy_indices: frozenset
    dup_offset: int
    orig_map: dict = field(hash=False)
    # variable count of the normalized formula this was built from
    normalized_vars: int = 0

    @property
    def n(self) -> int:
        return self.base.num_vars

    @property
    def m(self) -> int:
        return len(self.base.clauses)

    def var(self, j: int, alpha: int) -> int:
        """Variable index of literal ``alpha`` (1-based) in clause ``j``."""
        return self.base.clauses[j][alpha - 1][0]

    def sign(self, j: int, alpha: int) -> int:
        """1 if literal ``alpha`` of clause ``j`` is positive, else 0."""
        return int(self.base.clauses[j][alpha - 1][1])

    @property
    def input_vars(self) -> int:
        return self.base.input_vars if self.base.input_vars is not None else self.normalized_vars

    def lift(self, values) -> list[int]:
        """Extend an assignment of the normalized variables to all ``n``.

        The dummy and padding variables get 0, duplicates the negation.
        Missing trailing values (e.g. fresh splitting variables) default to 0.
        """
        half = [0] * self.dup_offset
        for v, r in self.orig_map.items():
            if v < len(values):
                half[r] = int(values[v])
        return half + [1 - b for b in half]

    def project(self, assignment) -> list[int]:
        """Restrict a full assignment back to the normalized variables."""
        return [int(assignment[self.orig_map[v]]) for v in range(self.normalized_vars)]


def regularize(f: Formula) -> RegularFormula:
    if not f.is_strict3():
        raise ValueError("regularize expects a normalized (strict 3-CNF) formula")
    padded = 1
    while padded < f.num_vars + 1:
        padded *= 2
    padded = max(padded, 2)
    orig_map = {v: v + 1 for v in range(f.num_vars)}
    first = [tuple((v + 1, pol) for v, pol in c) for c in f.clauses]
    mirror = [tuple((v + padded, not pol) for v, pol in c) for c in first]
    n = 2 * padded
    pads = {0} | set(range(f.num_vars + 1, padded))
    dummies = frozenset(pads | {i + padded for i in pads})
    base = Formula(n, tuple(first + mirror), f.trivially_unsat, f.input_vars)
    return RegularFormula(
        base=base,
        ell=n.bit_length() - 1,
        dummy_indices=dummies,
        dup_offset=padded,
        orig_map=orig_map,
        normalized_vars=f.num_vars,
    )


def evaluate(f: Formula | RegularFormula, assignment) -> bool:
    if isinstance(f, RegularFormula):
        f = f.base
    if len(assignment) != f.num_vars:
        raise ValueError(f"assignment has {len(assignment)} values, formula has {f.num_vars} variables")
    return all(any(bool(assignment[v]) == pol for v, pol in c) for c in f.clauses)


def _var_mask(i: int, n: int) -> int:
    # bit t set iff bit i of t is set, for t in [0, 2**n)
    width = 1 << i
    block = ((1 << width) - 1) << width
    period = width << 1
    reps = ((1 << (1 << n)) - 1) // ((1 << period) - 1)
    return block * reps


def brute_force_sat(f: Formula | RegularFormula, max_vars: int = BRUTE_FORCE_MAX_VARS) -> list[int] | None:
    """Exhaustive satisfiability check over all ``2**n`` assignments at once.

    Each variable is a truth table packed into one big integer (bit ``t``
    is the value under assignment ``t``), so a clause is an OR of literal
    tables and the formula is their AND.
    """
    if isinstance(f, RegularFormula):
        f = f.base
    n = f.num_vars
    if n > max_vars:
        raise ValueError(f"{n} variables exceeds the brute-force guard of {max_vars}")
    full = (1 << (1 << n)) - 1
    tables = [_var_mask(i, n) for i in range(n)]
    sat = full
    for c in f.clauses:
        t = 0
        for v, pol in c:
            t |= tables[v] if pol else full ^ tables[v]
        sat &= t
        if not sat:
            return None
    if not sat:
        return None
    t = (sat & -sat).bit_length() - 1
    return [(t >> i) & 1 for i in range(n)]


def format_assignment(values) -> str:
    """DIMACS literal line, e.g. ``1 -2 3``; variable ``v`` is ``values[v-1]``."""
    return " ".join(str(i + 1) if b else str(-(i + 1)) for i, b in enumerate(values))


def parse_assignment(text: str, num_vars: int) -> list[int] | None:
    """Inverse of :func:`format_assignment`; ``None`` for ``UNSAT``.

    Unlisted variables default to false; a trailing ``0`` and ``v``/``s``
    solver-output prefixes are tolerated.
    """
    values = [0] * num_vars
    seen = set()
    for raw in text.splitlines():
        tok = raw.split()
        if not tok or tok[0] == "c":
            continue
        if tok[0] == "s":
            if "UNSAT" in raw.upper():
                return None
            continue
        if tok[0].upper() in ("UNSAT", "UNSATISFIABLE"):
            return None
        if tok[0] == "v":
            tok = tok[1:]
        for t in tok:
            try:
                x = int(t)
            except ValueError:
                raise DimacsError(f"bad assignment literal {t!r}") from None
            if x == 0:
                continue
            if abs(x) > num_vars:
                raise DimacsError(f"assignment literal {x} exceeds {num_vars} variables")
            if abs(x) in seen:
                raise DimacsError(f"variable {abs(x)} assigned twice")
            seen.add(abs(x))
            values[abs(x) - 1] = int(x > 0)
    return values


def random_3cnf(num_vars: int, num_clauses: int, rng: random.Random) -> Formula:
    """Uniform random 3-CNF; each clause has three distinct variables."""
    if num_vars < 3:
        raise ValueError("need at least 3 variables")
    clauses = []
    for _ in range(num_clauses):
        vs = rng.sample(range(num_vars), 3)
        clauses.append(tuple((v, rng.random() < 0.5) for v in vs))
    return Formula(num_vars, tuple(clauses))
