"""``eccforge`` command line.

Exit codes: 0 success, 1 domain negative (unsatisfiable, invalid cover, no
cover within the budget), 2 usage or input/output error.
"""

from __future__ import annotations

import argparse
import io
import sys
from pathlib import Path

from . import reduction as red
from .acceptance import CRITERIA, DEFAULT_SEED, run_acceptance
from .cnf import format_assignment, normalize, parse_assignment, parse_dimacs, regularize
from .cocktail import TwinPair, build_cocktail, extend_twin_cover, flatten, gregory_pullman_opt
from .graph import EdgeClass, verify_cover
from .graphio import FormatError, format_cover, format_graph, parse_cover, parse_graph
from .solver import MAX_SOLVE_VERTICES, kernelize, lower_bound, minimum_cover, solve_exact
from .transfer import InvalidCover, TransferError, assignment_from_cover, cover_from_assignment

OK, NEGATIVE, USAGE = 0, 1, 2


class CliError(Exception):
    """Usage or I/O problem; reported on stderr with exit code 2."""


def _read(path: str) -> str:
    try:
        if path == "-":
            return sys.stdin.read()
        return Path(path).read_text()
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc.strerror or exc}") from None


def _emit(text: str, path: str | None) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    try:
        Path(path).write_text(text)
    except OSError as exc:
        raise CliError(f"cannot write {path}: {exc.strerror or exc}") from None


def _load_instance(path: str) -> red.ReductionInstance:
    return red.parse_instance(_read(path))


# --- commands --------------------------------------------------------------

def cmd_reduce(args) -> int:
    f = parse_dimacs(_read(args.cnf), strict=not args.lenient)
    norm = normalize(f)
    if not norm.clauses:
        raise CliError("formula has no clauses after normalization (trivially satisfiable)")
    inst = red.reduce(regularize(norm))
    buf = io.StringIO()
    red.write_instance(inst, buf)
    _emit(buf.getvalue(), args.output)
    f2 = inst.formula
    print(
        f"c n={f2.n} m={f2.m} ell={f2.ell} vertices={inst.graph.vertex_count} "
        f"edges={inst.graph.num_edges()} k={inst.k}",
        file=sys.stderr,
    )
    return OK


def _kernel_solve(g, k: int, max_vertices: int):
    kr = kernelize(g, k)
    if kr.is_no:
        return None
    sol = solve_exact(kr.reduced, kr.k_reduced, required=EdgeClass.IMP, max_vertices=max_vertices)
    return None if sol is None else kr.lift(sol)


def cmd_solve(args) -> int:
    gf = parse_graph(_read(args.graph))
    g = gf.graph
    k = args.k if args.k is not None else gf.k
    if g.vertex_count > args.max_vertices:
        raise CliError(
            f"{g.vertex_count} vertices exceeds the solver guard {args.max_vertices} "
            "(raise it with --max-vertices)"
        )
    if args.exact_min:
        if args.kernelize:
            size = lower_bound(g, max_vertices=args.max_vertices)
            while (cover := _kernel_solve(g, size, args.max_vertices)) is None:
                size += 1
        else:
            size, cover = minimum_cover(g, max_vertices=args.max_vertices)
        if k is not None and size > k:
            print(f"minimum cover has {size} cliques, more than k={k}", file=sys.stderr)
            return NEGATIVE
    else:
        if k is None:
            raise CliError("no budget: pass --k or use --exact-min")
        if args.kernelize:
            cover = _kernel_solve(g, k, args.max_vertices)
        else:
            cover = solve_exact(g, k, max_vertices=args.max_vertices)
        if cover is None:
            print(f"no edge clique cover with at most {k} cliques", file=sys.stderr)
            return NEGATIVE
    _emit(format_cover(cover, [f"size {len(cover)}"]), args.output)
    return OK


def cmd_verify(args) -> int:
    gf = parse_graph(_read(args.graph))
    cover = parse_cover(_read(args.cover))
    report = verify_cover(gf.graph, cover)
    if not report.valid:
        print(f"INVALID {report}", file=sys.stderr)
        return NEGATIVE
    if gf.k is not None and len(cover) > gf.k:
        print(f"INVALID cover has {len(cover)} cliques, budget k={gf.k}", file=sys.stderr)
        return NEGATIVE
    print(f"VALID {len(cover)} cliques" + ("" if gf.k is None else f" (k={gf.k})"))
    return OK


def cmd_complete(args) -> int:
    inst = _load_instance(args.instance)
    rf = inst.formula
    values = parse_assignment(_read(args.assignment), rf.input_vars)
    if values is None:
        print("assignment file says UNSAT; no cover to build", file=sys.stderr)
        return NEGATIVE
    try:
        cover = cover_from_assignment(inst, rf.lift(values))
    except TransferError as exc:
        print(f"cannot build a cover: {exc}", file=sys.stderr)
        return NEGATIVE
    _emit(format_cover(cover, [f"size {len(cover)} k {inst.k}"]), args.output)
    return OK


def cmd_extract(args) -> int:
    inst = _load_instance(args.instance)
    try:
        cover = parse_cover(_read(args.cover))
        phi = assignment_from_cover(inst, cover)
    except InvalidCover as exc:
        print(f"INVALID {exc.report}", file=sys.stderr)
        return NEGATIVE
    except (TransferError, FormatError) as exc:
        print(f"extraction failed: {exc}", file=sys.stderr)
        return NEGATIVE
    values = inst.formula.project(phi)[: inst.formula.input_vars]
    _emit(format_assignment(values) + "\n", args.output)
    return OK


def cmd_cocktail(args) -> int:
    if args.opt:
        print(gregory_pullman_opt(1 << (args.ell - 1)))
        return OK
    cg = build_cocktail(args.ell)
    if args.twin_cover:
        evens = frozenset(range(0, cg.order, 2))
        pairs = extend_twin_cover(cg, [TwinPair(evens, frozenset(range(cg.order)) - evens)])
        _emit(format_cover(flatten(pairs), [f"twin cover of H_{args.ell}, {len(pairs)} pairs"]), args.output)
    else:
        _emit(format_graph(cg.graph, None, [f"cocktail party graph H_{args.ell}"]), args.output)
    return OK


def cmd_selftest(args) -> int:
    results = run_acceptance(args.seed, set(args.only) if args.only else None)
    for r in results:
        print(r.line())
    if args.report_dir:
        from .plotting import write_report

        for path in write_report(results, args.report_dir):
            print(f"wrote {path}")
    failed = [r.number for r in results if not r.passed]
    print(f"{len(results) - len(failed)}/{len(results)} passed" + (f"; failed: {failed}" if failed else ""))
    return NEGATIVE if failed else OK


# --- parser ----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    # global flags are accepted before or after the subcommand
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS, help=f"corpus seed (default {DEFAULT_SEED})")
    common.add_argument(
        "--strict-deterministic", action="store_true", default=argparse.SUPPRESS,
        help="fixed candidate order; the solver is always single-threaded so this is the default",
    )

    p = argparse.ArgumentParser(prog="eccforge", description="3-CNF to Edge Clique Cover toolkit", parents=[common])
    sub = p.add_subparsers(dest="command", required=True, metavar="COMMAND")

    s = sub.add_parser("reduce", parents=[common], help="encode a DIMACS CNF as an ECC instance")
    s.add_argument("cnf")
    s.add_argument("-o", "--output")
    s.add_argument("--lenient", action="store_true", help="ignore a wrong clause count in the header")
    s.set_defaults(func=cmd_reduce)

    s = sub.add_parser("solve", parents=[common], help="exact edge clique cover of a small graph")
    s.add_argument("graph")
    s.add_argument("--k", type=int, help="budget (default: the file header)")
    s.add_argument("--exact-min", action="store_true", help="report a minimum cover")
    s.add_argument("--kernelize", action="store_true", help="apply reduction rules first")
    s.add_argument("--max-vertices", type=int, default=MAX_SOLVE_VERTICES)
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_solve)

    s = sub.add_parser("verify", parents=[common], help="check a cover against a graph and its budget")
    s.add_argument("graph")
    s.add_argument("cover")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("complete", parents=[common], help="assignment -> cover of exactly k cliques")
    s.add_argument("instance")
    s.add_argument("assignment")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_complete)

    s = sub.add_parser("extract", parents=[common], help="cover -> satisfying assignment")
    s.add_argument("instance")
    s.add_argument("cover")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_extract)

    s = sub.add_parser("cocktail", parents=[common], help="cocktail party graph utilities")
    s.add_argument("--ell", type=int, required=True)
    mode = s.add_mutually_exclusive_group()
    mode.add_argument("--twin-cover", action="store_true", help="emit a twin clique cover")
    mode.add_argument("--opt", action="store_true", help="print the minimum cover size")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_cocktail)

    s = sub.add_parser("selftest", parents=[common], help="run the acceptance checks")
    s.add_argument("--report-dir", help="also write a TSV table and PNG figures here")
    s.add_argument("--only", type=int, nargs="+", choices=sorted(CRITERIA), metavar="N")
    s.set_defaults(func=cmd_selftest)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return USAGE if exc.code else OK
    if not hasattr(args, "seed"):
        args.seed = DEFAULT_SEED
    args.strict_deterministic = getattr(args, "strict_deterministic", True)
    if args.command == "cocktail" and args.ell < 1:
        print("eccforge: --ell must be at least 1", file=sys.stderr)
        return USAGE
    try:
        return args.func(args)
    except (CliError, ValueError) as exc:
        # FormatError and DimacsError are ValueErrors too
        print(f"eccforge: {exc}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
