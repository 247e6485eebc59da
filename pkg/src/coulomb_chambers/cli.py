"""Command line front-end.

    coulomb-chambers VERB --input FILE [--out DIR] [options]

Verbs: arrange, quiver, check, ehrhart, schober.  Exit codes: 0 success,
2 malformed input, 3 chamber budget exceeded, 4 a property check failed,
5 a quasi-polynomial fit failed.

Property suites draw from ``random.Random(seed)`` (Mersenne Twister), which
gives the same stream on every platform, so reports are reproducible.
Everything is computed before anything is written.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from fractions import Fraction

from . import suites
from .arrangement import DEFAULT_BUDGET, BudgetExceeded, count_points, enumerate_lambda_bar, is_nonempty
from .ehrhart import FitFailed, fit_chamber
from .inputspec import InputSpec, ParseError, parse_file
from .pthroot import PthRootContext
from .quiver import DEFAULT_DEG_BOUND, build_quiver, emit_relations, export_dot, export_json

EXIT_PARSE, EXIT_BUDGET, EXIT_CHECK, EXIT_FIT = 2, 3, 4, 5
SUITES = ("relations", "frobenius", "pthroot", "schober")
DEFAULT_PRIMES = (5, 7, 11, 13, 17)


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _prime(args, spec: InputSpec):
    if args.prime is not None:
        return None if args.prime in ("inf", "infinity") else int(args.prime)
    return spec.prime


def _pctx(args, spec: InputSpec):
    p = _prime(args, spec)
    return None if p is None else PthRootContext(p, spec.upsilon)


def cmd_arrange(args, spec: InputSpec) -> dict:
    ls = enumerate_lambda_bar(spec.theory, _pctx(args, spec), args.budget)
    return {"arrange.json": _dump(ls.to_json())}


def cmd_quiver(args, spec: InputSpec) -> dict:
    q = build_quiver(spec.theory, _pctx(args, spec), args.budget)
    emit_relations(q, args.deg_bound)
    return {"quiver.dot": export_dot(q), "quiver.json": export_json(q)}


def cmd_check(args, spec: InputSpec) -> tuple[dict, bool]:
    suite = args.suite or spec.suite or "relations"
    if suite not in SUITES:
        raise ParseError(f"unknown suite {suite!r}")
    th = spec.theory
    meta = {"suite": suite, "seed": args.seed, "trials": args.trials}
    if suite == "relations":
        res = suites.relation_suite(th, args.seed, args.trials, corrupt=spec.corrupt)
    elif suite == "frobenius":
        p = _prime(args, spec) or 3
        if any(m.flavor_offset.denominator % p == 0 for m in th.matter):
            raise ParseError(f"flavor offsets must be {p}-integral for the frobenius suite")
        meta["p"] = p
        res = suites.frobenius_suite(th, p, args.seed, args.trials)
    elif suite == "pthroot":
        p = _prime(args, spec)
        if p is None:
            raise ParseError("the pthroot suite needs a finite prime")
        meta["p"] = p
        res = suites.pthroot_suite(th, PthRootContext(p, spec.upsilon), args.seed, args.trials)
    else:
        if th.flavor_rank == 0:
            raise ParseError("the schober suite needs flavor_rank > 0")
        res = suites.schober_suite(th, args.seed, args.trials)
    ok = all(r.passed for r in res)
    report = dict(meta, passed=ok, checks=[r.to_json() for r in res])
    return {f"check_{suite}.json": _dump(report)}, ok


def cmd_ehrhart(args, spec: InputSpec) -> dict:
    th = spec.theory
    if spec.chamber is None:
        raise ParseError("ehrhart needs a chamber")
    primes = spec.primes or DEFAULT_PRIMES
    buf = io.StringIO()
    w = csv.writer(buf)
    w.writerow(["p", "count"])
    counts = {p: count_points(th, spec.chamber, p) for p in primes}
    for p in primes:
        w.writerow([p, counts[p]])
    if is_nonempty(th, spec.chamber):
        q = fit_chamber(th, spec.chamber, primes)
    else:
        q = None
    w.writerow([])
    if q is None:
        w.writerow(["period", 1])
        w.writerow(["residue"] + [f"c{k}" for k in range(th.rank + 1)])
        w.writerow([0] + [0] * (th.rank + 1))
        return {"ehrhart.csv": buf.getvalue()}
    w.writerow(["period", q.period])
    w.writerow(["residue"] + [f"c{k}" for k in range(th.rank + 1)])
    for row in q.to_rows():
        w.writerow(row)
    w.writerow([])
    w.writerow(["dilation", "residual"])
    for p in sorted(q.residuals):
        w.writerow([p, str(q.residuals[p])])
    return {"ehrhart.csv": buf.getvalue()}


def cmd_schober(args, spec: InputSpec) -> dict:
    from .schober import FaceLattice
    th = spec.theory
    if th.flavor_rank == 0:
        raise ParseError("schober needs flavor_rank > 0")
    box = spec.box or tuple((Fraction(-2), Fraction(2)) for _ in range(th.flavor_rank))
    if len(box) != th.flavor_rank:
        raise ParseError("box needs one lo hi pair per flavor coordinate")
    return {"schober.json": FaceLattice(th).export_box(box)}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="coulomb-chambers", description=__doc__.splitlines()[0])
    ap.add_argument("verb", choices=["arrange", "quiver", "check", "ehrhart", "schober"])
    ap.add_argument("suite", nargs="?", choices=SUITES, help="property suite for check")
    ap.add_argument("--input", required=True)
    ap.add_argument("--out", default=".")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--trials", type=int, default=100)
    ap.add_argument("--deg-bound", type=int, default=DEFAULT_DEG_BOUND)
    ap.add_argument("--prime", default=None, help="a prime or inf")
    ap.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    return ap


def run(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.prime not in (None, "inf", "infinity"):
            try:
                if int(args.prime) < 2:
                    raise ValueError
            except ValueError:
                raise ParseError(f"--prime must be a prime or inf, got {args.prime!r}") from None
        spec = parse_file(args.input)
        ok = True
        if args.verb == "check":
            files, ok = cmd_check(args, spec)
        else:
            files = {"arrange": cmd_arrange, "quiver": cmd_quiver, "ehrhart": cmd_ehrhart,
                     "schober": cmd_schober}[args.verb](args, spec)
    except ParseError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_PARSE
    except BudgetExceeded as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_BUDGET
    except FitFailed as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_FIT
    os.makedirs(args.out, exist_ok=True)
    for name in sorted(files):
        with open(os.path.join(args.out, name), "w", encoding="utf-8", newline="") as fh:
            fh.write(files[name])
        print(os.path.join(args.out, name))
    return 0 if ok else EXIT_CHECK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
