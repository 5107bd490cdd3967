"""Command-line interface: ``qgelfand verify | eigenvalue | limit``.

Exit codes: 0 all requested checks pass, 1 a verification failed,
2 usage or configuration error.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from . import __version__
from .invariants import (closed_form_eigenvalue, classical_eigenvalue,
                         classical_limit_value, require_dominant)
from .reps import WeightError
from .suite import (SuiteConfig, ConfigError, CHECK_NAMES, run_suite,
                    render_text, render_json)


def _parse_ints(text):
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated "
                                         f"integers, got {text!r}")


def _parse_q0(text):
    try:
        q0 = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"expected a rational NUM or "
                                         f"NUM/DEN, got {text!r}")
    if q0 == 0:
        raise argparse.ArgumentTypeError("q must be nonzero")
    return q0


def _parse_checks(text):
    names = tuple(x for x in text.split(",") if x)
    for name in names:
        if name not in CHECK_NAMES:
            raise argparse.ArgumentTypeError(
                f"unknown check name {name!r}; known: {', '.join(CHECK_NAMES)}")
    return names


def build_parser():
    top = argparse.ArgumentParser(
        prog="qgelfand",
        description="Exact verification of quantum Gelfand invariants "
                    "and their eigenvalues.")
    top.add_argument("--version", action="version", version=__version__)
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="run the verification suite")
    p.add_argument("--n", type=_parse_ints, default=(2, 3), metavar="LIST",
                   help="matrix sizes to cover (comma-separated, default 2,3)")
    p.add_argument("--N-max", dest="N_max", type=int, default=3,
                   help="largest tensor power of the vector representation")
    p.add_argument("--m-max", dest="m_max", type=int, default=3,
                   help="largest invariant degree")
    p.add_argument("--order", type=int, default=3,
                   help="u-series expansion order")
    p.add_argument("--checks", type=_parse_checks, default=CHECK_NAMES,
                   metavar="LIST", help="only run these categories")
    p.add_argument("--exclude", type=_parse_checks, default=(),
                   metavar="LIST", help="skip these categories")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--out", metavar="PATH",
                   help="write the report here instead of stdout")
    p.add_argument("--jobs", type=int, default=1, metavar="K",
                   help="worker threads")
    p.add_argument("--inject-fault", choices=("rmatrix", "rep", "qnum"),
                   default=None, help=argparse.SUPPRESS)

    for name, extra in (("eigenvalue",
                         "print eigenvalues of the quantum Gelfand "
                         "invariants on the given highest weight"),
                        ("limit",
                         "print the classical (q -> 1) eigenvalues")):
        p = sub.add_parser(name, help=extra)
        p.add_argument("--n", type=int, required=True)
        p.add_argument("--lambda", dest="lam", type=_parse_ints,
                       required=True, metavar="LIST",
                       help="weight as comma-separated integers")
        p.add_argument("--m", type=int, default=None,
                       help="single invariant degree")
        p.add_argument("--m-max", dest="m_max", type=int, default=3,
                       help="degrees 0..m-max (ignored with --m)")
        if name == "eigenvalue":
            p.add_argument("--eval-q", dest="eval_q", type=_parse_q0,
                           default=None, metavar="NUM/DEN",
                           help="also evaluate exactly at this rational q")
    return top


def _m_range(args):
    if args.m is not None:
        if args.m < 0:
            raise WeightError(f"degree must be nonnegative, got {args.m}")
        return range(args.m, args.m + 1)
    if args.m_max < 0:
        raise WeightError(f"m-max must be nonnegative, got {args.m_max}")
    return range(args.m_max + 1)


def cmd_verify(args):
    try:
        config = SuiteConfig(ns=args.n, N_max=args.N_max, m_max=args.m_max,
                             order=args.order, include=args.checks,
                             exclude=args.exclude, jobs=args.jobs,
                             fault=args.inject_fault)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    report = run_suite(config)
    rendered = (render_json(report) if args.format == "json"
                else render_text(report))
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(rendered)
    else:
        sys.stdout.write(rendered)
    return 0 if report["summary"]["fail"] == 0 else 1


def cmd_eigenvalue(args):
    lam = _check_weight(args.n, args.lam)
    for m in _m_range(args):
        value = closed_form_eigenvalue(args.n, lam, m)
        line = f"E_{m}{_lam_text(lam)} = {value.render()}"
        if args.eval_q is not None:
            at = value.eval_at(args.eval_q)
            line += f"   [q={args.eval_q}: {at}]"
        print(line)
    return 0


def cmd_limit(args):
    lam = _check_weight(args.n, args.lam)
    code = 0
    for m in _m_range(args):
        direct = classical_eigenvalue(args.n, lam, m)
        via_limit = classical_limit_value(args.n, lam, m)
        line = f"m={m}: {direct}"
        if via_limit != direct:
            line += f"   MISMATCH: q->1 limit gives {via_limit}"
            code = 1
        print(line)
    return code


def _check_weight(n, lam):
    if n < 1:
        raise WeightError(f"n must be positive, got {n}")
    if len(lam) != n:
        raise WeightError(f"weight {lam} has {len(lam)} entries, need {n}")
    require_dominant(n, lam)
    return tuple(lam)


def _lam_text(lam):
    return "(" + ",".join(str(x) for x in lam) + ")"


def main(argv=None):
    args = build_parser().parse_args(argv)
    handler = {"verify": cmd_verify, "eigenvalue": cmd_eigenvalue,
               "limit": cmd_limit}[args.command]
    try:
        return handler(args)
    except WeightError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ZeroDivisionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
