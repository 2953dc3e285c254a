"""Command-line entry point.

Exit codes: 0 when everything checked passes, 1 when a mathematical check
fails, 2 for bad input or usage.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Sequence

from . import calculus as C
from . import lattice as L
from .budgets import Budgets
from .builtins import resolve_builtin
from .errors import AlgebraError
from .ring import Ring, center, elements_from
from .ringfile import load_ring
from .verifier import identities as ids
from .verifier.report import Report, RunConfig, run_all, run_fuzz
from .verifier.scenarios import registered_scenarios, scenario_summary

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def load_ring_source(source: str) -> Ring:
    if source.startswith("builtin:"):
        return resolve_builtin(source)
    return load_ring(source)


def format_subgroup(s: L.Subgroup) -> str:
    lines = [f"subgroup of {s.ring.name}, rank {s.rank}"]
    size = s.size()
    if size is not None:
        lines[0] += f", {size} elements"
    lines += [f"  {s.ring.format(row)}" for row in s.basis]
    return "\n".join(lines)


def _split_elems(text: str | None) -> list[str]:
    if not text:
        return []
    return [t for t in (p.strip() for p in text.split(",")) if t]


def _cmd_validate(args, out) -> int:
    ring = load_ring_source(args.file)
    print(
        f"ok: {ring.name}: rank {ring.dim}, modulus {ring.modulus}, "
        f"{'unital' if ring.unity is not None else 'no unity'}",
        file=out,
    )
    return EXIT_OK


def _cmd_compute(args, out, budgets: Budgets) -> int:
    ring = load_ring_source(args.ring)
    elems = elements_from(ring, _split_elems(args.elems))
    op = args.op
    if op == "bracket":
        if elems:
            if args.n is not None and args.n != len(elems):
                raise UsageError(f"--n {args.n} but {len(elems)} elements given")
            print(C.bracket_n(ring, elems, args.beta), file=out)
            return EXIT_OK
        n = args.n if args.n is not None else 2
        print(format_subgroup(C.bracket_power(ring, n, args.beta, budgets.tuples)), file=out)
    elif op == "ideal":
        seed = L.canonical_form(ring, [e.coords for e in elems]) if elems else C.bracket_power(ring, 2, 1, budgets.tuples)
        print(format_subgroup(C.ideal_generated(ring, seed, budgets.rounds)), file=out)
    elif op == "center":
        print(format_subgroup(center(ring)), file=out)
    elif op == "closure":
        if not elems:
            raise UsageError("--op closure needs --elems for the seed")
        spec = C.BracketSpec(args.n if args.n is not None else 3, args.pos, args.beta)
        seed = L.canonical_form(ring, [e.coords for e in elems])
        print(format_subgroup(C.n_gen_lie_closure(ring, seed, spec, budgets.tuples, budgets.rounds)), file=out)
    elif op == "power":
        k = args.n if args.n is not None else 2
        if args.values:
            s = C.power_values_subgroup(ring, k, budgets.grid, method="auto")
        else:
            s = C.power_subgroup(ring, k)
        print(format_subgroup(s), file=out)
    return EXIT_OK


def _write_json(report: Report, path: str | None, out) -> None:
    if path is None:
        return
    text = report.to_json()
    if path == "-":
        out.write(text)
    else:
        Path(path).write_text(text)


def _cmd_check(args, out, budgets: Budgets) -> int:
    if args.list:
        for name in registered_scenarios():
            print(f"{name}: {scenario_summary(name)}", file=out)
        return EXIT_OK
    target = args.name
    if target == "all":
        cfg = RunConfig(None, args.seed, fuzz=not args.no_fuzz, timings=args.timings, budgets=budgets)
    else:
        scenario_summary(target)  # raises for unknown names
        cfg = RunConfig((target,), args.seed, fuzz=False, timings=args.timings, budgets=budgets)
    report = run_all(cfg)
    if args.json != "-":
        out.write(report.table())
    _write_json(report, args.json, out)
    return EXIT_OK if report.ok else EXIT_FAIL


def _cmd_fuzz(args, out) -> int:
    kw = {}
    if args.identity:
        for name in args.identity:
            ids.get_identity(name)
        kw["identities"] = tuple(args.identity)
    if args.rings:
        kw["rings"] = tuple(args.rings)
    result = run_fuzz(args.seed, args.iters, False, **kw)
    report = Report(args.seed, [result])
    if args.json != "-":
        for a in result.assertions:
            print(f"{'ok  ' if a['ok'] else 'FAIL'} {a['description']}", file=out)
        for w in result.witnesses:
            print(f"witness: {w}", file=out)
        print(f"{result.status}: {len(result.assertions)} checks, {len(result.failures())} failed", file=out)
    _write_json(report, args.json, out)
    return EXIT_OK if result.passed else EXIT_FAIL


def _cmd_report(args, out, budgets: Budgets) -> int:
    cfg = RunConfig(None, args.seed, fuzz=True, self_test=args.self_test, timings=args.timings, budgets=budgets)
    report = run_all(cfg)
    if args.json != "-":
        out.write(report.table())
    _write_json(report, args.json, out)
    return EXIT_OK if report.ok else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="gencomm", description="Exact generalized-commutator workbench.")
    sub = p.add_subparsers(dest="verb", required=True)

    v = sub.add_parser("validate", help="parse and validate a ring file (or builtin:NAME)")
    v.add_argument("file")

    c = sub.add_parser("compute", help="compute a subgroup or element in one ring")
    c.add_argument("--ring", required=True, help="ring file path or builtin:NAME / builtin:family(args)")
    c.add_argument("--op", required=True, choices=["bracket", "ideal", "center", "closure", "power"])
    c.add_argument("--n", type=int, help="bracket arity, or exponent for --op power")
    c.add_argument("--pos", type=int, default=0, help="slot offset r for --op closure")
    c.add_argument("--beta", type=int, default=1)
    c.add_argument("--elems", help="comma-separated elements such as 2e12,2e22")
    c.add_argument("--values", action="store_true", help="with --op power: span of x^n instead of R^n")

    k = sub.add_parser("check", help="run one scenario or all of them")
    k.add_argument("name", nargs="?", default="all")
    k.add_argument("--json", metavar="PATH", help="write the JSON report to PATH ('-' for stdout)")
    k.add_argument("--seed", type=int, default=0)
    k.add_argument("--timings", action="store_true", help="record elapsed milliseconds (breaks byte-identity)")
    k.add_argument("--no-fuzz", action="store_true", help="with 'all': skip the identity fuzzer")
    k.add_argument("--list", action="store_true", help="list scenario names and exit")

    f = sub.add_parser("fuzz", help="random-sample the registered identities")
    f.add_argument("--iters", type=int, default=ids.DEFAULT_ITERATIONS, help="samples per identity")
    f.add_argument("--seed", type=int, required=True)
    f.add_argument("--identity", action="append", help="restrict to this identity (repeatable)")
    f.add_argument("--ring", dest="rings", action="append", help="restrict to this builtin ring (repeatable)")
    f.add_argument("--json", metavar="PATH")

    r = sub.add_parser("report", help="run every scenario plus the fuzzer")
    r.add_argument("--json", metavar="PATH")
    r.add_argument("--seed", type=int, default=0)
    r.add_argument("--timings", action="store_true")
    r.add_argument("--self-test", action="store_true", help="include a deliberately broken identity")
    return p


def main(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    try:
        budgets = Budgets.from_env()
        if args.verb == "validate":
            return _cmd_validate(args, out)
        if args.verb == "compute":
            return _cmd_compute(args, out, budgets)
        if args.verb == "check":
            return _cmd_check(args, out, budgets)
        if args.verb == "fuzz":
            if args.iters < 1:
                raise UsageError("--iters must be positive")
            return _cmd_fuzz(args, out)
        return _cmd_report(args, out, budgets)
    except (AlgebraError, UsageError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=err)
        return EXIT_USAGE


def entry() -> None:
    sys.exit(main())
