"""
Command-line interface.

    arrlab analyze FILE|FAMILY [--m K ...|--all-divisors] [--aomoto] [--witness]
                   [--dot PATH] [--lower-bound-budget N] [--format text|json]
                   [--time-budget SECONDS] [--node-budget N]
    arrlab family NAME [PARAMS...] [--emit PATH] [--mode coordinates|incidence]
    arrlab oracle FILE|FAMILY --m K [--condition a|b] [--format text|json]

Exit codes: 0 success, 1 internal error, 2 invalid input, 3 budget exhausted.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path
from typing import Sequence

from . import fileformat
from .arrangement import Incidence
from .exceptions import ArrangementFileError, BudgetExceeded, ConstructionError, DegenerateInputError
from .families import FAMILIES, builtin_family, resolve_family_name
from .mgraph import build_mgraph, export_dot

EXIT_OK, EXIT_INTERNAL, EXIT_INVALID, EXIT_BUDGET = 0, 1, 2, 3


class UsageError(Exception):
    pass


def load_input(arg: str) -> Incidence:
    """An existing path is parsed as a file; otherwise a built-in family
    name such as ``hessian`` or ``gaa3_3``."""
    if Path(arg).exists():
        return fileformat.parse_arrangement(arg)
    try:
        return resolve_family_name(arg)
    except ValueError:
        raise UsageError(f"{arg!r} is neither a readable file nor a built-in family") from None


def _env_budget() -> int | None:
    raw = os.environ.get("ARRLAB_BUDGET")
    if raw is None:
        return None
    try:
        val = int(raw)
    except ValueError:
        raise UsageError(f"ARRLAB_BUDGET must be an integer, got {raw!r}") from None
    if val < 1:
        raise UsageError("ARRLAB_BUDGET must be positive")
    return val


def cmd_analyze(args) -> int:
    from .report import build_report

    inc = load_input(args.input)
    if args.all_divisors and args.m:
        raise UsageError("--m and --all-divisors are mutually exclusive")
    ms = None if args.all_divisors or not args.m else args.m
    if args.lower_bound_budget < 0:
        raise UsageError("--lower-bound-budget must be non-negative")
    node_budget = args.node_budget if args.node_budget is not None else _env_budget()
    report = build_report(inc, ms, aomoto=args.aomoto, lower_bound_budget=args.lower_bound_budget,
                          node_budget=node_budget, time_budget=args.time_budget)
    if args.dot:
        graphs = [export_dot(build_mgraph(inc, g.m)) for g in report.mgraphs]
        if not graphs:
            raise UsageError("--dot needs some m >= 3")
        Path(args.dot).write_text("".join(graphs), encoding="utf-8")
    if args.format == "json":
        sys.stdout.write(report.to_json())
    else:
        sys.stdout.write(report.to_text(show_witness=args.witness))
    if args.witness and any(v.witness is not None and not v.witness_valid for v in report.verdicts):
        return EXIT_INTERNAL
    return EXIT_BUDGET if report.budget_exhausted else EXIT_OK


def cmd_family(args) -> int:
    try:
        params = [int(p) for p in args.params]
    except ValueError:
        raise UsageError("family parameters must be integers") from None
    try:
        inc = builtin_family(args.name, *params)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    text = fileformat.dumps_arrangement(inc, args.mode)
    if args.emit:
        Path(args.emit).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_oracle(args) -> int:
    from .oracle import oracle_witness

    inc = load_input(args.input)
    if args.m < 2 or inc.degree % args.m:
        raise UsageError(f"--m {args.m} must be >= 2 and divide the degree {inc.degree}")
    res = oracle_witness(inc, args.m, args.condition)
    if args.format == "json":
        out = {"m": res.m, "condition": res.condition, "exists": res.witness is not None,
               "witness": None if res.witness is None else list(res.witness),
               "examined": res.examined, "total": res.total}
        sys.stdout.write(json.dumps(out, indent=2, sort_keys=True) + "\n")
    elif res.witness is None:
        sys.stdout.write(f"m={res.m} condition ({res.condition}): none over {res.total} subsets\n")
    else:
        sys.stdout.write(f"m={res.m} condition ({res.condition}): least witness {list(res.witness)} "
                         f"(subset {res.examined} of {res.total})\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="arrlab", description="Exact analysis of projective line arrangements.")
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", help="full report for an arrangement")
    a.add_argument("input", help="arrangement file or built-in family (e.g. hessian, gaa3_3)")
    a.add_argument("--m", type=int, action="append", default=[], help="divisor to analyze (repeatable)")
    a.add_argument("--all-divisors", action="store_true", help="every m > 1 dividing d (the default)")
    a.add_argument("--aomoto", action="store_true", help="report eigenspace dimensions")
    a.add_argument("--witness", action="store_true", help="print and re-validate witnesses")
    a.add_argument("--dot", metavar="PATH", help="write the m-graphs (m >= 3) as DOT")
    a.add_argument("--lower-bound-budget", type=int, default=0, metavar="N",
                   help="subsets swept for Aomoto lower bounds when not calculable (0 = off)")
    a.add_argument("--time-budget", "--budget", type=float, default=None, metavar="SECONDS",
                   help="wall-clock budget per divisor for the exact search")
    a.add_argument("--node-budget", type=int, default=None, metavar="N",
                   help="search node budget per condition (default: ARRLAB_BUDGET or unlimited)")
    a.add_argument("--format", choices=("text", "json"), default="text")
    a.set_defaults(func=cmd_analyze)

    f = sub.add_parser("family", help="emit a built-in arrangement file")
    f.add_argument("name", choices=sorted(FAMILIES))
    f.add_argument("params", nargs="*")
    f.add_argument("--emit", metavar="PATH", help="output path (default: stdout)")
    f.add_argument("--mode", choices=("coordinates", "incidence"), default=None)
    f.set_defaults(func=cmd_family)

    o = sub.add_parser("oracle", help="brute-force witness enumeration")
    o.add_argument("input")
    o.add_argument("--m", type=int, required=True)
    o.add_argument("--condition", choices=("a", "b"), default="b")
    o.add_argument("--format", choices=("text", "json"), default="text")
    o.set_defaults(func=cmd_oracle)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INVALID
    try:
        return args.func(args)
    except BudgetExceeded as exc:
        print(f"arrlab: budget exhausted: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (UsageError, ArrangementFileError) as exc:
        print(f"arrlab: error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (DegenerateInputError, ConstructionError, ValueError) as exc:
        print(f"arrlab: invalid input: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except Exception as exc:  # noqa: BLE001 - last-resort report
        print(f"arrlab: internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
