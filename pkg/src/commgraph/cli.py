"""Command-line front end: ``commgraph {diameter,path,verify,export}``.

Exit codes: 0 success, 1 usage error, 2 guard exceeded, 3 input is not a
vertex, 4 outside the constructive oracle's scope, 5 a verification suite
reported failures.
"""
from __future__ import annotations

import argparse
import math
import sys
import time

from .errors import (GuardExceeded, NotAVertex, OutOfScope, PreconditionError,
                     ShapeMismatch)
from .graph import (DEFAULT_EXPORT_GUARD, bfs_distance, build_graph, components,
                    default_guard, default_threads, diameter, export_graph)
from .suites import SUITES
from .witness import path3, verify_path
from .zmod import DomainSpec, parse_matrix

EXIT_OK, EXIT_USAGE, EXIT_GUARD, EXIT_NOT_VERTEX, EXIT_SCOPE, EXIT_FAILED = range(6)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(EXIT_USAGE)


def _fmt(value):
    if isinstance(value, float) and math.isinf(value):
        return "inf"
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, (list, tuple)):
        return ",".join(_fmt(v) for v in value)
    return str(value)


def _emit(args, record, timing=None):
    """Print one result: ``key=value`` pairs, or an aligned table for humans."""
    if args.output == "records":
        print(" ".join(f"{k}={_fmt(v)}" for k, v in record.items()))
        return
    rows = dict(record)
    if timing is not None:
        rows["wall_time_s"] = f"{timing:.3f}"
    width = max(len(k) for k in rows)
    for k, v in rows.items():
        shown = "∞" if isinstance(v, float) and math.isinf(v) else _fmt(v)
        print(f"{k:<{width}}  {shown}")


def _domain(args):
    return DomainSpec(args.domain, args.n, args.m)


def cmd_diameter(args):
    start = time.perf_counter()
    domain = _domain(args)
    g = build_graph(domain, args.guard if args.guard is not None else default_guard())
    report = components(g)
    record = {"command": "diameter", "domain": str(domain), "vertices": len(g),
              "components": report.component_count}
    if args.per_component:
        record["component_diameters"] = diameter(g, threads=args.threads, per_component=True)
    record["diameter"] = diameter(g, threads=args.threads)
    _emit(args, record, time.perf_counter() - start)
    return EXIT_OK


def cmd_path(args):
    if args.x is None or args.y is None:
        raise PreconditionError("path needs --x and --y")
    domain = _domain(args)
    x = parse_matrix(args.x, args.n, args.m)
    y = parse_matrix(args.y, args.n, args.m)
    w = path3(x, y, domain)
    check = verify_path(w)
    print(w.serialize())
    record = {"command": "path", "domain": str(domain), "len": w.length,
              "verified": w.verified, "check": check.reason}
    try:
        g = build_graph(domain, args.guard if args.guard is not None else default_guard())
        record["bfs_distance"] = bfs_distance(g, x, y)
    except GuardExceeded:
        record["bfs_distance"] = "skipped"
    _emit(args, record)
    return EXIT_OK if check else EXIT_FAILED


def _suite_kwargs(args):
    name = args.suite
    kwargs = {}
    if name in ("dets", "units", "middle"):
        if args.trials is not None:
            kwargs["trials"] = args.trials
        kwargs["seed"] = args.seed
    if name in ("dets", "pmatrix") and args.m is not None:
        kwargs["grid"] = [(args.n, args.m)]
    if name == "component" and args.m is not None:
        kwargs["primes"] = (args.m,)
    if name == "path-exhaustive" and args.m is not None:
        kwargs["grid"] = [(args.domain, args.n, args.m)]
    return kwargs


def cmd_verify(args):
    result = SUITES[args.suite](**_suite_kwargs(args))
    record = {"command": "verify", "suite": result.suite, "passed": result.passed,
              "failed": result.failed, "status": "pass" if result.ok else "fail"}
    _emit(args, record)
    for failure in result.failures:
        print(f"failure: {failure}", file=sys.stderr)
    return EXIT_OK if result.ok else EXIT_FAILED


def cmd_export(args):
    domain = _domain(args)
    guard = args.guard if args.guard is not None else DEFAULT_EXPORT_GUARD
    data = export_graph(build_graph(domain, guard), args.format, guard)
    if args.out in (None, "-"):
        sys.stdout.write(data.decode())
    else:
        with open(args.out, "wb") as fh:
            fh.write(data)
    return EXIT_OK


COMMANDS = {"diameter": cmd_diameter, "path": cmd_path, "verify": cmd_verify, "export": cmd_export}


def build_parser():
    parser = _Parser(prog="commgraph", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, need_m=True):
        p.add_argument("--n", type=int, default=2)
        p.add_argument("--m", type=int, required=need_m)
        p.add_argument("--domain", choices=["m", "gl", "sl"], default="m")
        p.add_argument("--guard", type=int, default=None)
        p.add_argument("--threads", type=int, default=default_threads())
        p.add_argument("--output", choices=["table", "records"], default="table")

    p = sub.add_parser("diameter", help="vertex count, components and exact diameter")
    common(p)
    p.add_argument("--per-component", action="store_true")

    p = sub.add_parser("path", help="certified path of length <= 3 between two vertices")
    common(p)
    p.add_argument("--x", help="canonical text n:m:[...] or encoded index")
    p.add_argument("--y", help="canonical text n:m:[...] or encoded index")

    p = sub.add_parser("verify", help="run a verification suite")
    common(p, need_m=False)
    p.add_argument("--suite", choices=sorted(SUITES), required=True)
    p.add_argument("--trials", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("export", help="write the graph as DOT or CSV")
    common(p)
    p.add_argument("--format", choices=["dot", "csv"], default="dot")
    p.add_argument("--out", default="-")
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except GuardExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except NotAVertex as exc:
        print(f"error: not a vertex: {exc}", file=sys.stderr)
        return EXIT_NOT_VERTEX
    except OutOfScope as exc:
        print(f"error: out of scope for constructive oracle: {exc}", file=sys.stderr)
        return EXIT_SCOPE
    except (PreconditionError, ShapeMismatch) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
