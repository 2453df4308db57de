"""Command-line front end.

Subcommands: ``check``, ``betti``, ``cup``, ``spectral``, ``verify``.  Reports
are JSON lines (one object per line) or CSV with ``--format csv``.

Exit codes: 0 ok, 1 mathematical mismatch, 2 input error, 3 resource cap
exceeded, 4 unsupported structure.

Display grammar for cochains in reports::

    cochain  := "0" | term (" + " term)*
    term     := [coef] module "|" monomial
    coef     := "-" | rational " "        (omitted when the coefficient is 1)
    rational := integer | integer "/" integer
    monomial := "1" | factor ("^" factor)*
    factor   := name | name "~" exponent  (exponent >= 2, odd generators only)

``module`` and ``name`` are basis names of the coefficient module and of the
algebra; factors appear in basis order, e.g. ``-1/2 z|x1^y1~2``.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from contextlib import contextmanager

from .cohomology import Cohomology
from .complex import CochainComplex, ResourceCapExceeded, adjoint_module, trivial_module
from .cup import (FactorialCapExceeded, adjoint_star, cup_closed_form, cup_on_cohomology,
                  cup_permutation_sum)
from .spectral import FilteredComplex, SpectralSequence, e2_dimensions_general
from .superalgebra import (InputError, Unsupported, abelian, center, heisenberg_even,
                           heisenberg_odd, load_algebra, validate)
from .verify import VerifyConfig, run

EXIT_OK, EXIT_MISMATCH, EXIT_INPUT, EXIT_CAP, EXIT_UNSUPPORTED = 0, 1, 2, 3, 4

FAMILIES = {"h": (2, heisenberg_even), "ba": (1, heisenberg_odd), "abelian": (2, abelian)}


def parse_window(text: str) -> range:
    a, sep, b = text.partition("..")
    try:
        lo = int(a)
        hi = int(b) if sep else lo
    except ValueError:
        raise InputError(f"degree window must look like A..B, got {text!r}") from None
    if lo < 0 or hi < lo:
        raise InputError(f"empty or negative degree window {text!r}")
    return range(lo, hi + 1)


def load(args):
    if args.input and args.family:
        raise InputError("give either --family or --input, not both")
    if args.input:
        try:
            return load_algebra(args.input)
        except OSError as exc:
            raise InputError(str(exc)) from None
    if not args.family:
        raise InputError("an algebra is required: --family or --input")
    name, *rest = args.family
    if name not in FAMILIES:
        raise InputError(f"unknown family {name!r}; expected h, ba or abelian")
    arity, build = FAMILIES[name]
    if len(rest) != arity:
        raise InputError(f"family {name} takes {arity} parameter(s)")
    try:
        params = [int(x) for x in rest]
    except ValueError:
        raise InputError("family parameters must be integers") from None
    try:
        return build(*params)
    except ValueError as exc:
        raise InputError(str(exc)) from None


def module_for(alg, name):
    return adjoint_module(alg) if name == "adjoint" else trivial_module()


@contextmanager
def output(args):
    if args.out:
        with open(args.out, "w", newline="") as fh:
            yield fh
    else:
        yield sys.stdout


def emit_json(fh, records):
    for rec in records:
        fh.write(json.dumps(rec, separators=(",", ":")) + "\n")


def emit_csv(fh, header, rows):
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)


# -- subcommands ------------------------------------------------------------------------

def cmd_check(args) -> int:
    alg = load(args)
    rep = validate(alg)
    record = {"name": alg.name, "ok": rep.ok, "violations": [v.describe(alg) for v in rep.violations]}
    with output(args) as fh:
        if args.format == "csv":
            emit_csv(fh, ["kind", "at", "residual"],
                     [[v["kind"], " ".join(v["at"]), json.dumps(v["residual"])] for v in record["violations"]])
        else:
            emit_json(fh, [record])
    return EXIT_OK if rep.ok else EXIT_MISMATCH


def cmd_betti(args) -> int:
    alg = load(args)
    co = Cohomology(alg, module_for(alg, args.module), args.cap)
    records, code = [], EXIT_OK
    for k in parse_window(args.k):
        try:
            records.append(co.report_json(k, with_representatives=not args.no_representatives))
        except ResourceCapExceeded as exc:
            records.append({"k": k, "error": "resource cap exceeded", "detail": str(exc), "partial": True})
            code = EXIT_CAP
            break
    with output(args) as fh:
        if args.format == "csv":
            emit_csv(fh, ["k", "betti", "even", "odd"],
                     [[r["k"], r["betti"], *r["super_betti"]] for r in records if "betti" in r])
        else:
            emit_json(fh, records)
    return code


def cmd_cup(args) -> int:
    alg = load(args)
    co = Cohomology(alg, module_for(alg, args.module), args.cap)
    cx = co.complex
    records, code, nonzero = [], EXIT_OK, False
    if args.oracle and args.module != "adjoint":
        raise InputError("--oracle compares against the adjoint closed form")
    star = adjoint_star(alg) if args.oracle else None
    try:
        for p in range(args.degree_cap + 1):
            for q in range(args.degree_cap + 1 - p):
                table = cup_on_cohomology(co, p, q)
                rec = {"p": p, "q": q,
                       "table": [[cx.format_cochain(e) for e in row] for row in table.entries]}
                if args.oracle:
                    agree = all(
                        cup_closed_form(alg, f, g, cx.gens) == cup_permutation_sum(cx.gens, star, f, g)
                        for f in co.representatives(p) for g in co.representatives(q))
                    rec["oracle_agrees"] = agree
                    if not agree:
                        code = EXIT_MISMATCH
                nonzero = nonzero or not table.all_zero()
                records.append(rec)
    except (ResourceCapExceeded, FactorialCapExceeded) as exc:
        records.append({"error": "resource cap exceeded", "detail": str(exc), "partial": True})
        code = EXIT_CAP
    with output(args) as fh:
        if args.format == "csv":
            rows = [[r["p"], r["q"], i, j, e] for r in records if "table" in r
                    for i, row in enumerate(r["table"]) for j, e in enumerate(row)]
            emit_csv(fh, ["p", "q", "i", "j", "entry"], rows)
        else:
            emit_json(fh, records)
    if code == EXIT_OK and args.all_zero and nonzero:
        code = EXIT_MISMATCH
    return code


def cmd_spectral(args) -> int:
    alg = load(args)
    window = parse_window(args.k)
    top = window.stop - 1
    cen = center(alg)
    if len(cen) != 1:
        dims = e2_dimensions_general(alg, cen, top)
        rec = {"r": 2, "entries": {f"{p},{q}": d for (p, q), d in sorted(dims.items())},
               "d2": "unsupported", "reason": f"center has dimension {len(cen)}"}
        with output(args) as fh:
            emit_json(fh, [rec])
        return EXIT_UNSUPPORTED
    ss = SpectralSequence(alg, top, args.cap)
    co = Cohomology(alg, adjoint_module(alg), args.cap)
    totals = ss.totals()
    betti = {k: co.betti(k) for k in window}
    e3_totals = {k: totals[k] for k in window}
    try:
        limit = FilteredComplex(alg, args.cap).limit(top)
        inf_totals = {k: sum(v for (p, q), v in limit.items() if p + q == k) for k in window}
    except Unsupported:
        inf_totals = None
    ok = all(e3_totals[k] == betti[k] for k in window)
    records = [ss.e2().dump(), ss.e3().dump(), {
        "convergence": {"ok": ok,
                        "e3_totals": {str(k): v for k, v in e3_totals.items()},
                        "betti": {str(k): v for k, v in betti.items()},
                        "e_infinity_totals": None if inf_totals is None
                        else {str(k): v for k, v in inf_totals.items()}}}]
    with output(args) as fh:
        if args.format == "csv":
            rows = [[page["r"], *key.split(","), d] for page in records[:2]
                    for key, d in page["entries"].items()]
            emit_csv(fh, ["r", "p", "q", "dim"], rows)
        else:
            emit_json(fh, records)
    return EXIT_OK if ok else EXIT_MISMATCH


def cmd_verify(args) -> int:
    config = VerifyConfig(scale=args.scale, seed=args.seed, degree_cap=args.degree_cap)
    ok = True
    with output(args) as fh:
        if args.format == "csv":
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["check", "criterion", "params", "ok"])
        for res in run(config):
            ok = ok and res.ok
            if args.format == "csv":
                w.writerow([res.check, res.criterion, json.dumps(res.params, separators=(",", ":")), res.ok])
            else:
                fh.write(res.to_json() + "\n")
            fh.flush()
    return EXIT_OK if ok else EXIT_MISMATCH


# -- argument parsing ---------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="write the report here instead of stdout")
    common.add_argument("--format", choices=("json", "csv"), default="json")

    alg = argparse.ArgumentParser(add_help=False)
    alg.add_argument("--family", nargs="+", metavar="ARG",
                     help="built-in algebra: h M N | ba N | abelian R S")
    alg.add_argument("--input", help="algebra as a JSON file")
    alg.add_argument("--cap", type=int, default=None,
                     help="largest cochain space dimension (default from SUPERCOHOM_CAP or 200000)")

    parser = argparse.ArgumentParser(prog="supercohom",
                                     description="Cohomology of Lie superalgebras in exact arithmetic.")
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("check", parents=[common, alg], help="validate the superalgebra axioms")

    p = sub.add_parser("betti", parents=[common, alg], help="Betti numbers and representatives")
    p.add_argument("--module", choices=("adjoint", "trivial"), default="adjoint")
    p.add_argument("--k", default="0..3", help="degree window A..B")
    p.add_argument("--no-representatives", action="store_true")

    p = sub.add_parser("cup", parents=[common, alg], help="cup products on cohomology")
    p.add_argument("--module", choices=("adjoint", "trivial"), default="adjoint")
    p.add_argument("--degree-cap", type=int, default=3, help="largest p+q")
    p.add_argument("--all-zero", action="store_true", help="exit 1 if any product is nonzero")
    p.add_argument("--oracle", action="store_true",
                   help="also compare the closed form with the permutation sum")

    p = sub.add_parser("spectral", parents=[common, alg], help="pages two and three for a central line")
    p.add_argument("--k", default="0..3", help="total degree window A..B")

    p = sub.add_parser("verify", parents=[common], help="run the verification suite")
    p.add_argument("--scale", choices=("default", "large"), default="default")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--degree-cap", type=int, default=5)
    return parser


COMMANDS = {"check": cmd_check, "betti": cmd_betti, "cup": cmd_cup,
            "spectral": cmd_spectral, "verify": cmd_verify}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    if getattr(args, "cap", None) is not None and args.cap <= 0:
        print("error: --cap must be positive", file=sys.stderr)
        return EXIT_INPUT
    if getattr(args, "degree_cap", 1) < 0:
        print("error: --degree-cap must be non-negative", file=sys.stderr)
        return EXIT_INPUT
    try:
        return COMMANDS[args.command](args)
    except InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (ResourceCapExceeded, FactorialCapExceeded) as exc:
        print(f"resource cap exceeded: {exc}", file=sys.stderr)
        return EXIT_CAP
    except Unsupported as exc:
        print(f"unsupported: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED


if __name__ == "__main__":
    sys.exit(main())
