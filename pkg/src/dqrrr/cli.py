"""Command-line entry point: ``run``, ``compare``, ``generate``, ``reproduce``.

Exit codes: 0 success, 1 input/data error, 2 usage error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from dqrrr.core import WorkloadError, run_dispatch_loop
from dqrrr.metrics import CONVENTIONS, compare, evaluate, format_avg, format_comparison
from dqrrr.policies import DEFAULT_QUANTUM, KINDS, PolicyConfig
from dqrrr.report import TABLE_IDS, render_gantt_ascii, render_gantt_svg, reproduce_all, reproduction_json
from dqrrr.workload_io import (
    ORDERS,
    GeneratorParams,
    export_results,
    generate_workload,
    load_workload,
    serialize_workload,
)


class UsageError(Exception):
    pass


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {value}")
    return value


def _burst_range(text: str) -> tuple[int, int]:
    try:
        lo, hi = (int(x) for x in text.split(":"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected lo:hi, got {text!r}") from None
    if lo < 1 or hi < lo:
        raise argparse.ArgumentTypeError(f"need 1 <= lo <= hi, got {text!r}")
    return lo, hi


def _arrivals(text: str) -> int | None:
    if text == "zero":
        return None
    kind, _, gap = text.partition(":")
    if kind != "staggered":
        raise argparse.ArgumentTypeError(f"expected 'zero' or 'staggered:GAP', got {text!r}")
    return _positive_int(gap)


def _seed(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError("seed must fit in 64 unsigned bits")
    return value


def _policy_list(text: str) -> list[str]:
    names = [p.strip().lower() for p in text.split(",") if p.strip()]
    bad = [p for p in names if p not in KINDS]
    if bad:
        raise argparse.ArgumentTypeError(f"unknown policies: {', '.join(bad)}")
    return names


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dqrrr", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def workload_flags(p):
        p.add_argument("--workload", required=True, help="CSV path or embedded id (t4.1 ... t4.11)")
        p.add_argument("--quantum", type=_positive_int, default=DEFAULT_QUANTUM, help="RR quantum")
        p.add_argument("--convention", choices=CONVENTIONS, default="paper")

    run = sub.add_parser("run", help="simulate one policy")
    workload_flags(run)
    run.add_argument("--policy", choices=KINDS, required=True)
    run.add_argument("--gantt", choices=("none", "ascii", "svg"), default="none")
    run.add_argument("--out", help="write results (or SVG with --gantt svg) to this file")
    run.add_argument("--format", choices=("json", "csv"), default="json")

    cmp_ = sub.add_parser("compare", help="side-by-side comparison of policies")
    workload_flags(cmp_)
    cmp_.add_argument("--policies", type=_policy_list, required=True, help="comma-separated, e.g. rr,dqrrr")

    gen = sub.add_parser("generate", help="emit a seeded synthetic workload as CSV")
    gen.add_argument("--order", choices=ORDERS, required=True)
    gen.add_argument("--n", type=_positive_int, required=True)
    gen.add_argument("--burst", type=_burst_range, default=(1, 100), metavar="LO:HI")
    gen.add_argument("--arrivals", type=_arrivals, default=None, metavar="zero|staggered:GAP")
    gen.add_argument("--seed", type=_seed, default=0)
    gen.add_argument("--out")

    rep = sub.add_parser("reproduce", help="audit the published comparison tables")
    rep.add_argument("--table", default="all", help=f"all or one of {', '.join(TABLE_IDS)}")
    rep.add_argument("--out", help="also write the JSON report here")
    return parser


def _write(path: str, text: str) -> None:
    Path(path).write_text(text, encoding="utf-8")


def cmd_run(args) -> int:
    workload = load_workload(args.workload)
    trace = run_dispatch_loop(workload, PolicyConfig(args.policy, args.quantum))
    report = evaluate(trace, args.convention)
    print(f"policy      {trace.policy_label}")
    print(f"convention  {report.convention}")
    print(f"quanta      {','.join(map(str, trace.quantum_sequence)) or '-'}")
    print(f"CS          {report.context_switches}")
    print(f"awt         {format_avg(report.avg_waiting)}")
    print(f"atat        {format_avg(report.avg_turnaround)}")
    if args.gantt == "ascii":
        print(render_gantt_ascii(trace), end="")
    elif args.gantt == "svg":
        svg = render_gantt_svg(trace)
        if args.out:
            _write(args.out, svg)
        else:
            print(svg, end="")
        return 0
    if args.out:
        _write(args.out, export_results(trace, report, args.format))
    return 0


def cmd_compare(args) -> int:
    if len(args.policies) < 2:
        raise UsageError("compare needs at least two policies")
    workload = load_workload(args.workload)
    reports = [
        evaluate(run_dispatch_loop(workload, PolicyConfig(kind, args.quantum)), args.convention)
        for kind in args.policies
    ]
    print(format_comparison(compare(reports)), end="")
    return 0


def cmd_generate(args) -> int:
    params = GeneratorParams(args.order, args.n, args.burst, args.seed, args.arrivals)
    text = serialize_workload(generate_workload(params))
    if args.out:
        _write(args.out, text)
    else:
        print(text, end="")
    return 0


def cmd_reproduce(args) -> int:
    if args.table == "all":
        ids = TABLE_IDS
    elif args.table in TABLE_IDS:
        ids = (args.table,)
    else:
        raise UsageError(f"unknown table {args.table!r}; expected all or one of {', '.join(TABLE_IDS)}")
    results = reproduce_all(ids)
    for r in results:
        print(r.to_text())
    if args.out:
        _write(args.out, reproduction_json(results))
    failed = [r.table_id for r in results if not r.ok]
    if failed:
        print(f"regression: unexpected mismatch in table(s) {', '.join(failed)}", file=sys.stderr)
        return 1
    return 0


COMMANDS = {"run": cmd_run, "compare": cmd_compare, "generate": cmd_generate, "reproduce": cmd_reproduce}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"dqrrr: error: {exc}", file=sys.stderr)
        return 2
    except FileNotFoundError as exc:
        print(f"dqrrr: error: file not found: {exc.filename}", file=sys.stderr)
        return 1
    except (WorkloadError, OSError) as exc:
        print(f"dqrrr: error: {exc}", file=sys.stderr)
        return 1
