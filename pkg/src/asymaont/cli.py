"""Command-line front end.

Exit codes: 0 affirmative verdict or success, 1 negative verdict, 2 usage or
input error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import List, Optional, Sequence

from . import aont_linear as al
from . import array_rep as ar
from . import bounds as bd
from . import report
from .catalog import CorruptCatalog, load_catalog
from .gf_core import FieldError, field_of_order
from .matrix_gf import MatrixError, format_matrix, read_matrix, write_matrix
from .search import STRATEGIES, SearchConfig, compute_S, prove_nonexistence, search_linear_aont

EXIT_OK, EXIT_NEGATIVE, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def _ints(text: str) -> List[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {text!r}")


def _int_range(text: str) -> List[int]:
    """``3``, ``2-8`` or ``2,3,5``."""
    out = []
    for part in text.split(","):
        if "-" in part:
            lo, hi = part.split("-", 1)
            out.extend(range(int(lo), int(hi) + 1))
        elif part.strip():
            out.append(int(part))
    return out


def _emit(args, payload: dict, human: str) -> None:
    if getattr(args, "json", False):
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(human.rstrip("\n"))


def _load_aont_matrix(path: str):
    m = read_matrix(path)
    if m.n_rows != m.n_cols:
        raise UsageError(f"{path}: matrix must be square, got {m.n_rows}x{m.n_cols}")
    return m


# -- subcommands -------------------------------------------------------------------------


def cmd_verify(args) -> int:
    m = _load_aont_matrix(args.matrix)
    fn = al.verify_linear_aont_bruteforce if args.bruteforce else al.verify_linear_aont
    rep = fn(m, args.ti, args.to)
    d = rep.to_dict()
    human = f"{rep.verdict}: ({args.ti},{args.to},{m.n_rows},{m.field.q}) invertible={rep.invertible} checked={rep.submatrices_checked}"
    if rep.witness:
        human += f"\nwitness rows={list(rep.witness.rows)} cols={list(rep.witness.cols)} rank={rep.witness.rank}"
    _emit(args, d, human)
    return EXIT_OK if rep.passed else EXIT_NEGATIVE


def _transform(args, inverse: bool) -> int:
    m = _load_aont_matrix(args.matrix)
    vec = _ints(args.input)
    if len(vec) != m.n_rows:
        raise UsageError(f"input has length {len(vec)} but the matrix is {m.n_rows}x{m.n_cols}")
    aont = al.LinearAont(al.AontParams(1, m.n_rows, m.n_rows, m.field.q), m, _require_inverse(m))
    out = al.inverse_transform(aont, vec) if inverse else al.transform(aont, vec)
    key = "x" if inverse else "y"
    _emit(args, {"input": vec, key: list(out)}, ",".join(map(str, out)))
    return EXIT_OK


def _require_inverse(m):
    from .matrix_gf import invert

    inv = invert(m)
    if inv is None:
        raise UsageError("matrix is singular")
    return inv


def cmd_transform(args) -> int:
    return _transform(args, inverse=False)


def cmd_invert(args) -> int:
    return _transform(args, inverse=True)


CONSTRUCTIONS = ("even-bastion", "odd-bastion", "bs", "even-2s1", "cauchy", "identity", "catalog")


def cmd_construct(args) -> int:
    kind = args.kind
    if kind == "even-bastion":
        a = al.construct_even_bastion(args.s)
    elif kind == "odd-bastion":
        a = al.construct_odd_bastion(args.s)
    elif kind == "bs":
        a = al.construct_bs(args.s)
    elif kind == "even-2s1":
        a = al.construct_even_2s1(args.s)
    elif kind == "cauchy":
        if args.q is None or args.t is None:
            raise UsageError("cauchy needs --q and --t")
        a = al.construct_cauchy(args.t, args.s, field_of_order(args.q))
    elif kind == "identity":
        if args.q is None or args.ti is None or args.to is None:
            raise UsageError("identity needs --ti, --to and --q")
        a = al.identity_aont(args.ti, args.to, field_of_order(args.q))
    else:
        if None in (args.ti, args.to, args.q):
            raise UsageError("catalog needs --ti, --to, --s and --q")
        from .catalog import catalog_lookup

        a = catalog_lookup(args.ti, args.to, args.s, args.q)
        if a is None:
            print(f"no catalog entry for ({args.ti},{args.to},{args.s},{args.q})", file=sys.stderr)
            return EXIT_NEGATIVE
    for _ in range(args.shrink):
        a = al.shrink_by_cofactor(a)
    rep = al.verify_linear_aont(a.M, a.params.t_i, a.params.t_o)
    if args.out:
        write_matrix(a.M, args.out)
    payload = {
        "kind": kind,
        "params": dict(zip(("t_i", "t_o", "s", "q"), a.params.astuple())),
        "matrix": [list(r) for r in a.M.rows],
        "verification": rep.to_dict(),
    }
    _emit(args, payload, format_matrix(a.M))
    return EXIT_OK if rep.passed else EXIT_NEGATIVE


def cmd_bounds(args) -> int:
    fmt = "json" if args.json else args.format
    if args.table == "ranges":
        ranges = bd.range_table()
        payload = {"table": "ranges", "rows": [r.to_dict() for r in ranges]}
        header, rows = report.RANGE_HEADER, report.range_rows(ranges)
        if args.figure:
            report.plot_ranges(ranges, args.figure)
    elif args.table == "bounds":
        rows_d = bd.bound_table()
        payload = {"table": "bounds", "rows": rows_d}
        header = ("t_i", "q", "t_o", "upper", "source")
        rows = [tuple(r[k] for k in header) for r in rows_d]
        if args.figure:
            report.plot_bounds([bd.bound_table_value(r["t_i"], r["q"], r["t_o"]) for r in rows_d], args.figure)
    else:
        if args.ti is None or args.to is None or args.q is None:
            raise UsageError("bounds needs --ti, --to and --q (or --table)")
        results = bd.bounds_grid(_int_range(args.ti), _int_range(args.to), _int_range(args.q))
        if not results:
            raise UsageError("no valid (t_i <= t_o, prime power q) combinations")
        header, rows = report.BOUND_HEADER, report.bound_rows(results)
        payload = {"rows": [dict(zip(header, r)) for r in rows]}
        if args.figure:
            report.plot_bounds(results, args.figure)
    if args.figure:
        payload["figure"] = str(args.figure)
    if fmt == "json":
        print(json.dumps(payload, indent=2, sort_keys=True))
    elif fmt == "csv":
        sys.stdout.write(report.rows_to_csv(header, rows))
    else:
        sys.stdout.write(report.rows_to_markdown(header, rows))
    return EXIT_OK


def cmd_search(args) -> int:
    if args.s_cap is not None:
        out = compute_S(args.ti, args.to, args.q, args.s_cap, budget_nodes=args.budget_nodes,
                        budget_secs=args.budget_secs, workers=args.workers,
                        bound_pruning=not args.no_bound_pruning)
        if args.figure:
            report.plot_frontier(out.frontier, args.figure, f"S({args.ti},{args.to},{args.q})")
        if args.out and out.matrix is not None:
            write_matrix(out.matrix, args.out)
        fr = out.frontier
        human = (f"largest found s={fr['largest_found']} smallest impossible s={fr['smallest_impossible']} "
                 f"exact={fr['exact']} nodes={out.nodes_explored}")
        _emit(args, out.to_dict(), human)
        return EXIT_OK if fr["exact"] else EXIT_NEGATIVE
    if args.s is None:
        raise UsageError("search needs --s (or --s-cap for an S(t_i,t_o,q) scan)")
    cfg = SearchConfig(
        al.AontParams(args.ti, args.to, args.s, args.q),
        strategy=args.strategy,
        budget_nodes=args.budget_nodes,
        budget_secs=args.budget_secs,
        workers=args.workers,
        seed=args.seed,
        checkpoint_path=args.checkpoint,
        checkpoint_secs=args.checkpoint_secs,
        bound_pruning=not args.no_bound_pruning,
    )
    out = prove_nonexistence(cfg) if args.prove else search_linear_aont(cfg)
    if args.out and out.matrix is not None:
        write_matrix(out.matrix, args.out)
    human = f"{out.status} nodes={out.nodes_explored} elapsed={out.elapsed:.3f}s"
    if out.matrix is not None:
        human += "\n" + format_matrix(out.matrix)
    if out.note:
        human += f"\n{out.note}"
    _emit(args, out.to_dict(), human)
    wanted = "exhausted" if args.prove else "found"
    return EXIT_OK if out.status == wanted else EXIT_NEGATIVE


def cmd_catalog(args) -> int:
    try:
        entries = load_catalog()
    except CorruptCatalog as exc:
        print(f"corrupt catalog: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.write_dir:
        d = Path(args.write_dir)
        d.mkdir(parents=True, exist_ok=True)
        for e in entries:
            write_matrix(e.aont.M, d / f"{e.name}.txt")
    rows = [
        {"name": e.name, "params": dict(zip(("t_i", "t_o", "s", "q"), e.params.astuple())),
         "verdict": e.report.verdict, "checked": e.report.submatrices_checked}
        for e in entries
    ]
    human = "\n".join(f"{r['name']:5s} {e.params} {r['verdict']}" for r, e in zip(rows, entries))
    human += f"\n{len(entries)} entries"
    _emit(args, {"count": len(entries), "entries": rows}, human)
    return EXIT_OK


def _parse_columns(text: str, s: int) -> ar.ColumnSet:
    ins, outs = [], []
    for tok in text.split(","):
        tok = tok.strip().lower()
        if not tok:
            continue
        if tok[0] not in "xy" or not tok[1:].isdigit():
            raise UsageError(f"column {tok!r} must look like x1 or y3")
        idx = int(tok[1:]) - 1
        if not 0 <= idx < s:
            raise UsageError(f"column {tok!r} out of range for s={s}")
        (ins if tok[0] == "x" else outs).append(idx)
    return ar.ColumnSet(tuple(sorted(ins)), tuple(sorted(outs)))


def cmd_array_check(args) -> int:
    if bool(args.array) == bool(args.matrix):
        raise UsageError("give exactly one of --array or --matrix")
    if args.array:
        a = ar.read_array(args.array)
    else:
        m = _load_aont_matrix(args.matrix)
        a = ar.build_array(m.field.q, m.n_rows, m)
    if args.swap:
        a = ar.swap_io(a)
    payload, ok, lines = {"v": a.v, "s": a.s, "rows": a.n_rows}, True, []
    if args.columns:
        rep = ar.is_unbiased(a, _parse_columns(args.columns, a.s), histogram=args.histogram)
        payload["columns"] = rep.to_dict()
        lines.append(f"{rep.column_set.label()}: {rep.verdict}")
        if rep.histogram:
            lines += [f"  {k}: {c}" for k, c in rep.histogram.items()]
        ok = ok and rep.covering
    if args.ti is not None or args.to is not None:
        if args.ti is None or args.to is None:
            raise UsageError("--ti and --to go together")
        check = ar.verify_weak_aont_array if args.weak else ar.verify_aont_array
        v = check(a, args.ti, args.to)
        payload["weak_aont" if args.weak else "aont"] = v.to_dict()
        kind = "weak AONT" if args.weak else "AONT"
        msg = f"({args.ti},{args.to},{a.s},{a.v})-{kind}: {'pass' if v.passed else 'fail'}"
        if v.failing is not None:
            msg += f" at {v.failing.label()}"
        lines.append(msg)
        ok = ok and v.passed
    if args.oa is not None:
        v = ar.is_orthogonal_array(a, args.oa)
        payload["oa"] = v.to_dict()
        lines.append(f"OA strength {args.oa}: {'pass' if v.passed else 'fail'}")
        ok = ok and v.passed
    if args.soa is not None:
        t1, t2, n1, n2 = _ints(args.soa)
        v = ar.is_split_orthogonal_array(a, t1, t2, n1, n2)
        payload["soa"] = v.to_dict()
        lines.append(f"SOA({t1},{t2};{n1},{n2}): {'pass' if v.passed else 'fail'}")
        ok = ok and v.passed
    if args.out:
        ar.write_array(a, args.out)
    if not lines:
        lines.append(f"array v={a.v} s={a.s} rows={a.n_rows}")
    payload["verdict"] = "pass" if ok else "fail"
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK if ok else EXIT_NEGATIVE


# -- parser ------------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="asymaont", description=__doc__.splitlines()[0])
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    def add(name, fn, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("--json", action="store_true", help="machine-readable output")
        sp.set_defaults(func=fn)
        return sp

    sp = add("verify", cmd_verify, "check the rank criterion for a matrix file")
    sp.add_argument("--matrix", required=True)
    sp.add_argument("--ti", type=int, required=True)
    sp.add_argument("--to", type=int, required=True)
    sp.add_argument("--bruteforce", action="store_true", help="enumerate submatrices instead of counting")

    for name, fn, what in (("transform", cmd_transform, "y = x M^-1"), ("invert", cmd_invert, "x = y M")):
        sp = add(name, fn, what)
        sp.add_argument("--matrix", required=True)
        sp.add_argument("--input", required=True, help="comma-separated element codes")

    sp = add("construct", cmd_construct, "build a known construction")
    sp.add_argument("--kind", choices=CONSTRUCTIONS, required=True)
    sp.add_argument("--s", type=int, required=True)
    sp.add_argument("--t", type=int)
    sp.add_argument("--ti", type=int)
    sp.add_argument("--to", type=int)
    sp.add_argument("--q", type=int)
    sp.add_argument("--shrink", type=int, default=0, help="apply cofactor shrinking this many times")
    sp.add_argument("--out")

    sp = add("bounds", cmd_bounds, "upper bounds on S(t_i,t_o,q)")
    sp.add_argument("--ti", help="value, range a-b, or list")
    sp.add_argument("--to")
    sp.add_argument("--q")
    sp.add_argument("--table", choices=("bounds", "ranges"),
                    help="closed-form bound grid, or known S(2,t_o,q) ranges")
    sp.add_argument("--format", choices=("markdown", "csv", "json"), default="markdown")
    sp.add_argument("--figure", help="write a PNG/PDF/SVG figure to this path")

    sp = add("search", cmd_search, "search for a linear AONT matrix")
    sp.add_argument("--ti", type=int, required=True)
    sp.add_argument("--to", type=int, required=True)
    sp.add_argument("--s", type=int)
    sp.add_argument("--q", type=int, required=True)
    sp.add_argument("--strategy", choices=STRATEGIES, default="exhaustive")
    sp.add_argument("--budget-nodes", type=int)
    sp.add_argument("--budget-secs", type=float)
    sp.add_argument("--workers", type=int, default=1)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--checkpoint")
    sp.add_argument("--checkpoint-secs", type=float, default=60.0)
    sp.add_argument("--out", help="write a found matrix here")
    sp.add_argument("--prove", action="store_true", help="succeed only when the tree is exhausted")
    sp.add_argument("--s-cap", type=int, help="scan s = t_o..cap to pin down S(t_i,t_o,q)")
    sp.add_argument("--no-bound-pruning", action="store_true")
    sp.add_argument("--figure", help="with --s-cap: plot nodes per s")

    sp = add("catalog", cmd_catalog, "list the embedded matrices")
    sp.add_argument("--write-dir", help="also write every matrix file into this directory")

    sp = add("array-check", cmd_array_check, "combinatorial checks on an array representation")
    sp.add_argument("--array")
    sp.add_argument("--matrix")
    sp.add_argument("--ti", type=int)
    sp.add_argument("--to", type=int)
    sp.add_argument("--weak", action="store_true", help="covering instead of unbiased")
    sp.add_argument("--oa", type=int, help="orthogonal array strength")
    sp.add_argument("--soa", help="t1,t2,n1,n2")
    sp.add_argument("--columns", help="e.g. x1,y1")
    sp.add_argument("--histogram", action="store_true")
    sp.add_argument("--swap", action="store_true", help="check the inverse map")
    sp.add_argument("--out", help="write the array file here")
    return p


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING)
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (MatrixError, FieldError, al.AontError, ar.ArrayError, bd.BadParams, bd.UnknownEntry,
            OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
