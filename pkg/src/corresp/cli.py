"""Command-line front end: ``corresp {table,partner,mincut,basis,cv-basis} A B ...``.

Exit codes: 0 success, 1 usage error, 2 data error, 3 infeasible under CM,
4 time limit reached.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from .basis import all_pairs_min_cut, bipartite_basis, cut_basis, total_dissimilarity
from .io import (
    align_partitions,
    basis_document,
    dump_json,
    emit_dot,
    mincut_document,
    parse_partition_file,
)
from .objective import is_mutual, mutual_partner, optimal_partner, phi_min, phi_star
from .partition import ContingencyTable, DataError, PartSet, build_contingency
from .solvers import SOLVERS, Constraint, SolverConfig, Status, min_st_cut

EXIT_OK, EXIT_USAGE, EXIT_DATA, EXIT_INFEASIBLE, EXIT_TIME_LIMIT = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("a", help="labels-TSV file for P")
    common.add_argument("b", help="labels-TSV file for P'")
    common.add_argument("--intersect", action="store_true",
                        help="restrict both partitions to their common elements")

    solve = _Parser(add_help=False)
    solve.add_argument("--constraint", choices=[c.value for c in Constraint], default="cp")
    solve.add_argument("--solver", choices=sorted(SOLVERS), default="bnb")
    solve.add_argument("--time-limit", type=float, default=300.0, metavar="SECS",
                       help="per-cut branch-and-bound limit (default 300)")
    solve.add_argument("--no-early-exit", action="store_true",
                       help="skip the rest-to-one-side completions at each node")
    solve.add_argument("--timings", action="store_true",
                       help="include wall-clock times in the JSON output")

    out = _Parser(add_help=False)
    out.add_argument("--out", metavar="FILE", help="write JSON here instead of stdout")
    out.add_argument("--dot", metavar="FILE", help="write the basis tree in DOT format")

    parser = _Parser(prog="corresp", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    sub.add_parser("table", parents=[common], help="print the contingency table")
    p = sub.add_parser("partner", parents=[common], help="optimal partner of a part set")
    p.add_argument("--set", required=True, metavar="I,J,...",
                   help="parts of P by label or index")
    p = sub.add_parser("mincut", parents=[common, solve], help="minimum P_s-P_t cut")
    p.add_argument("--s", required=True, help="source part (label or index)")
    p.add_argument("--t", required=True, help="target part (label or index)")
    p = sub.add_parser("basis", parents=[common, solve, out], help="minimum cut basis of P")
    p.add_argument("--all-pairs", action="store_true",
                   help="also report all pairwise minimum cut values (CORRESP_THREADS workers)")
    sub.add_parser("cv-basis", parents=[common, out],
                   help="cut basis of the bipartite part graph")
    return parser


def _load(args) -> ContingencyTable:
    pa = parse_partition_file(args.a)
    pb = parse_partition_file(args.b)
    pa, pb = align_partitions(pa, pb, args.intersect)
    return build_contingency(pa, pb)


def resolve_part(token: str, names) -> int:
    """A part given by label, or failing that by 0-based index."""
    token = token.strip()
    if token in names:
        return list(names).index(token)
    try:
        idx = int(token)
    except ValueError:
        raise UsageError(f"unknown part {token!r}") from None
    if not 0 <= idx < len(names):
        raise UsageError(f"part index {idx} out of range 0..{len(names) - 1}")
    return idx


def _config(args) -> SolverConfig:
    if args.time_limit is not None and args.time_limit <= 0:
        raise UsageError("--time-limit must be positive")
    return SolverConfig(time_limit=args.time_limit, early_exit=not args.no_early_exit)


def _metadata(args, **extra) -> dict:
    meta = {"inputs": [args.a, args.b], "intersect": args.intersect}
    meta.update(extra)
    return meta


def _emit(text: str, target: str | None) -> None:
    if target:
        Path(target).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _cmd_table(args, t: ContingencyTable) -> int:
    width = max(len(s) for s in (*t.row_names, *t.col_names, str(t.n.max()), "total"))
    fmt = lambda cells: "  ".join(str(c).rjust(width) for c in cells)  # noqa: E731
    print(fmt(["", *t.col_names, "total"]))
    for name, row, total in zip(t.row_names, t.n, t.row_sums):
        print(fmt([name, *row.tolist(), int(total)]))
    print(fmt(["total", *t.col_sums.tolist(), t.total]))
    return EXIT_OK


def _cmd_partner(args, t: ContingencyTable) -> int:
    tokens = [x for x in args.set.split(",") if x.strip()]
    if not tokens:
        raise UsageError("--set needs at least one part")
    idx = sorted({resolve_part(x, t.row_names) for x in tokens})
    s = PartSet.from_indices(idx, t.shape[0])
    opt = optimal_partner(s, t)
    mp = mutual_partner(s, t)
    doc = {
        "s": [t.row_names[i] for i in s],
        "partner": [t.col_names[j] for j in opt],
        "phi_min": phi_min(s, t),
        "phi_star": phi_star(s, t) if t.shape[1] >= 2 else None,
        "mutual_partner": None if mp is None else [t.col_names[j] for j in mp],
    }
    sys.stdout.write(dump_json(doc))
    return EXIT_OK


def _status_code(statuses) -> int:
    statuses = set(statuses)
    if Status.TIME_LIMIT in statuses:
        return EXIT_TIME_LIMIT
    if Status.INFEASIBLE in statuses:
        return EXIT_INFEASIBLE
    return EXIT_OK


def _cmd_mincut(args, t: ContingencyTable) -> int:
    s = resolve_part(args.s, t.row_names)
    target = resolve_part(args.t, t.row_names)
    if s == target:
        raise UsageError("--s and --t must name different parts")
    config = _config(args)
    res = min_st_cut(t, s, target, args.constraint, args.solver, config)
    mutual = is_mutual(res.s_side, res.partner, t) if res.feasible else None
    meta = _metadata(args, time_limit=args.time_limit, early_exit=config.early_exit)
    doc = mincut_document(res, t.row_names, t.col_names, args.solver, mutual, meta, args.timings)
    sys.stdout.write(dump_json(doc))
    return _status_code([res.status])


def _cmd_basis(args, t: ContingencyTable) -> int:
    config = _config(args)
    basis = cut_basis(t, args.constraint, args.solver, config)
    meta = _metadata(args, time_limit=args.time_limit, early_exit=config.early_exit)
    doc = basis_document(basis, t.row_names, t.col_names, total_dissimilarity(basis, t),
                         meta, args.timings)
    if args.all_pairs:
        matrix = all_pairs_min_cut(t, args.constraint, args.solver, config)
        doc["all_pairs"] = {"parts": list(t.row_names),
                            "values": [[None if v < 0 else int(v) for v in row] for row in matrix]}
    _emit(dump_json(doc), args.out)
    if args.dot:
        Path(args.dot).write_text(emit_dot(basis), encoding="utf-8")
    return _status_code(c.status for c in basis.cuts)


def _cmd_cv_basis(args, t: ContingencyTable) -> int:
    basis = bipartite_basis(t)
    doc = basis_document(basis, t.row_names, t.col_names, total_dissimilarity(basis, t),
                         _metadata(args))
    _emit(dump_json(doc), args.out)
    if args.dot:
        Path(args.dot).write_text(emit_dot(basis), encoding="utf-8")
    return EXIT_OK


COMMANDS = {"table": _cmd_table, "partner": _cmd_partner, "mincut": _cmd_mincut,
            "basis": _cmd_basis, "cv-basis": _cmd_cv_basis}


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                            format="%(levelname)s %(name)s: %(message)s")
        t = _load(args)
        return COMMANDS[args.command](args, t)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DataError as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except ValueError as exc:
        # e.g. a single part where two are required
        print(f"data error: {exc}", file=sys.stderr)
        return EXIT_DATA


run_cli = main


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
