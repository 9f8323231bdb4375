"""Command-line entry point: ``frameret analyze|examples|witness|falsify``.

Exit codes: 0 on success, 2 on malformed input or an inapplicable request,
3 when an exact enumeration would exceed ``--max-exact-size``.
"""
from __future__ import annotations

import argparse
import sys

from . import catalog
from .errors import CapExceededError
from .frames import Frame
from .io import InputError, dumps, load_input
from .linalg import DEFAULT_TOL, format_vector
from .projections import fusion_norm_retrieval
from .report import Options, analyze, render_text, witness_record
from .search import SearchBudget, projection_pr_falsify, projection_wpr_falsify, wpr_falsify
from .vector_retrieval import PARTITION_CAP, does_norm_retrieval, does_phase_retrieval
from .weak_phase import classify_wpr_r2

EXIT_OK, EXIT_INPUT, EXIT_CAP = 0, 2, 3


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--tolerance", type=float, default=DEFAULT_TOL, help="float-mode tolerance (default 1e-9)")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--exact", dest="exact", action="store_const", const=True, default=None,
                      help="require rational arithmetic")
    mode.add_argument("--float", dest="exact", action="store_const", const=False, help="force float arithmetic")
    p.add_argument("--max-exact-size", type=int, default=PARTITION_CAP,
                   help="largest frame size for exhaustive partition sweeps (default 22)")
    p.add_argument("--trials", type=int, default=10_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, default=64, help="samples per partition")
    p.add_argument("--json", action="store_true", help="emit the JSON report instead of text")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="frameret", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="run every applicable decider on an input file")
    p.add_argument("path")
    _common(p)

    p = sub.add_parser("examples", help="recompute the registered reference examples")
    p.add_argument("--id", action="append", dest="ids", help="run only this example (repeatable)")
    p.add_argument("--list", action="store_true", help="list example ids and exit")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("witness", help="produce a counterexample for one property")
    p.add_argument("path")
    p.add_argument("property", choices=["wpr", "phase", "norm", "proj-phase"])
    _common(p)

    p = sub.add_parser("falsify", help="run the randomized counterexample searches")
    p.add_argument("path")
    _common(p)
    return parser


def _options(args) -> Options:
    return Options(args.tolerance, args.max_exact_size, SearchBudget(args.trials, args.seed, args.samples))


def _load(args):
    return load_input(args.path, exact=args.exact, tol=args.tolerance)


def _print_witness(rec: dict, out) -> None:
    for key in ("partition", "x", "y", "u", "v"):
        if key in rec:
            val = rec[key]
            print(f"{key} = {list(val) if key == 'partition' else format_vector(val)}", file=out)
    if "achieved_rank" in rec:
        print(f"rank of span{{P_i x}} = {rec['achieved_rank']}", file=out)
    print(f"construction: {rec['construction']}", file=out)


def _find_witness(obj, prop: str, opts: Options):
    """Return ``(witness, violated condition or None, stats)``."""
    if isinstance(obj, Frame):
        if prop == "proj-phase":
            raise InputError("proj-phase applies to subspace inputs only")
        if prop == "phase":
            r = does_phase_retrieval(obj, opts.cap)
            return r.witness, None if r.holds else r.certificate, {}
        if prop == "norm":
            r = does_norm_retrieval(obj, opts.cap)
            return r.witness, None if r.holds else r.certificate, {}
        if obj.dim == 2 and obj.m == 2:
            c = classify_wpr_r2(*obj.vectors)
            return c.witness, None if c.does_wpr else "measurement-equal pair with incomparable signs", {}
        res = wpr_falsify(obj, opts.budget, opts.cap)
        return res.witness, "measurement-equal pair with incomparable signs" if res.found else None, res.stats
    if prop == "norm":
        r = fusion_norm_retrieval(obj, cap=opts.cap)
        return r.witness, None if r.holds else "equal projected norms with ||x|| != ||y||", {}
    if prop in ("phase", "proj-phase"):
        res = projection_pr_falsify(obj, opts.budget)
        return res.witness, "span{P_i x} != R^n" if res.found else None, res.stats
    res = projection_wpr_falsify(obj, opts.budget)
    return res.witness, "equal projected norms with incomparable signs" if res.found else None, res.stats


def cmd_analyze(args, out=None) -> int:
    out = out or sys.stdout
    report = analyze(_load(args), _options(args), source=args.path)
    out.write(dumps(report) if args.json else render_text(report) + "\n")
    return EXIT_OK


def cmd_examples(args, out=None) -> int:
    out = out or sys.stdout
    if args.list:
        for key, ex in catalog.REGISTRY.items():
            print(f"{key}: {ex.summary}", file=out)
        return EXIT_OK
    try:
        results = catalog.run(args.ids)
    except KeyError as exc:
        print(exc.args[0], file=sys.stderr)
        return EXIT_INPUT
    if args.json:
        out.write(dumps({"results": [r.__dict__ for r in results]}))
    else:
        for r in results:
            print(f"{'PASS' if r.passed else 'FAIL'}  {r.id}: {r.detail}", file=out)
            if r.flag:
                print(f"      note: {r.flag}", file=out)
        print(f"{sum(r.passed for r in results)}/{len(results)} passed", file=out)
    return EXIT_OK if all(r.passed for r in results) else 1


def cmd_witness(args, out=None) -> int:
    out = out or sys.stdout
    obj = _load(args)
    opts = _options(args)
    w, violated, stats = _find_witness(obj, args.property, opts)
    if w is None:
        result = {"property": args.property, "witness": None, "stats": stats,
                  "message": "no witness: the property holds" if not stats else "no witness found within budget"}
    else:
        result = {"property": args.property, "witness": witness_record(w, args.property),
                  "violated": violated, "stats": stats}
    if args.json:
        out.write(dumps(result))
    elif w is None:
        print(result["message"], file=out)
    else:
        print(f"violated: {violated}", file=out)
        _print_witness(result["witness"], out)
    return EXIT_OK


def cmd_falsify(args, out=None) -> int:
    out = out or sys.stdout
    obj = _load(args)
    opts = _options(args)
    runs = {}
    if isinstance(obj, Frame):
        runs["weak_phase_retrieval"] = wpr_falsify(obj, opts.budget, opts.cap)
    else:
        runs["phase_retrieval"] = projection_pr_falsify(obj, opts.budget)
        runs["weak_phase_retrieval"] = projection_wpr_falsify(obj, opts.budget)
    result = {
        name: {"found": r.found, "stats": r.stats, "witness": witness_record(r.witness, name) if r.found else None}
        for name, r in runs.items()
    }
    if args.json:
        out.write(dumps(result))
        return EXIT_OK
    for name, r in result.items():
        print(f"{name}: {'counterexample found' if r['found'] else 'exhausted'}", file=out)
        if r["found"]:
            _print_witness(r["witness"], out)
        print(f"  stats: {r['stats']}", file=out)
    return EXIT_OK


COMMANDS = {"analyze": cmd_analyze, "examples": cmd_examples, "witness": cmd_witness, "falsify": cmd_falsify}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except CapExceededError as exc:
        print(f"cap exceeded: {exc}", file=sys.stderr)
        return EXIT_CAP


if __name__ == "__main__":
    sys.exit(main())
