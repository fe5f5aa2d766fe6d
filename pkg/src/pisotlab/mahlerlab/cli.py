"""Command-line entry point: ``mahlerlab <command> ...``.

Exit codes: 0 consistent, 2 inconsistent, 3 inconclusive at the precision
cap, 1 for usage or input errors.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path

from ..algnum import AlgebraicReal, classify_pisot, frac_power, refine_root
from ..algnum.powers import PRECISION_CAP
from ..cfrac import expand, period_of_power_table
from ..liouville import DEFAULT_MAX_DEPTH, BetaSchedule
from ..quadirr import QuadIrr
from .experiments import (DEFAULT_PREC, exp_liouville, exp_mahler_rational, exp_theorem1,
                          exp_theorem2, scan_main_theorem)
from .report import (CONSISTENT, FORMATS, INCONCLUSIVE, ExperimentReport, UsageError, emit, rat,
                     sci)

EXIT_USAGE = 1


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad usage, which would read as "inconsistent"
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _cmd_cf(a) -> ExperimentReport:
    x = QuadIrr.parse(a.surd)
    cf = expand(x)
    return ExperimentReport("cf", {"x": x.format()}, ("x", "cf", "preperiod", "period"),
                            ((x.format(), cf.format(), len(cf.preperiod), len(cf.period)),),
                            CONSISTENT, "expansion computed")


def _cmd_powers(a) -> ExperimentReport:
    x = QuadIrr.parse(a.surd)
    rows = tuple((r.n, r.preperiod_length, r.period_length)
                 for r in period_of_power_table(x, a.max_n))
    return ExperimentReport("powers", {"x": x.format(), "N": a.max_n},
                            ("n", "preperiod", "period"), rows, CONSISTENT,
                            "period table computed", series=("period",))


def _cmd_pisot(a) -> ExperimentReport:
    x = AlgebraicReal.parse(a.poly, a.root)
    c = classify_pisot(x)
    enc = refine_root(x, 64)
    row = (str(x.poly), c.kind.value, rat(c.trace), c.degree, c.monic, c.inside_count,
           c.unit_circle_roots, sci(enc.lo, rounding="floor"), sci(enc.hi, rounding="ceil"))
    return ExperimentReport("pisot", {"poly": a.poly, "root": a.root},
                            ("poly", "kind", "trace", "degree", "monic", "inside",
                             "on_circle", "root_lo", "root_hi"),
                            (row,), CONSISTENT, c.kind.value, c.notes)


def _cmd_fracpow(a) -> ExperimentReport:
    x = AlgebraicReal.parse(a.poly, a.root)
    fp = frac_power(x, a.n, prec=a.prec, scale=Fraction(a.scale), cap=a.cap)
    if fp.ambiguous:
        row = (a.n, None, None, None, fp.working_prec)
        status, verdict = INCONCLUSIVE, "nearest integer not certified at the precision cap"
    else:
        row = (a.n, fp.nearest, sci(fp.dist.lo, 20, "floor"), sci(fp.dist.hi, 20, "ceil"),
               fp.working_prec)
        status, verdict = CONSISTENT, "distance certified"
    return ExperimentReport("fracpow", {"poly": a.poly, "root": a.root, "n": a.n,
                                        "scale": a.scale, "prec": a.prec},
                            ("n", "nearest", "dist_lo", "dist_hi", "working_prec"),
                            (row,), status, verdict, metadata={"precision_cap": a.cap})


def _cmd_thm1(a) -> ExperimentReport:
    x = AlgebraicReal.parse(a.poly, a.root)
    return exp_theorem1(x, Fraction(a.l), a.max_n, prec=a.prec, power_cap=a.power_cap,
                        density=Fraction(a.density), cap=a.cap)


def _cmd_thm2(a) -> ExperimentReport:
    return exp_theorem2(QuadIrr.parse(a.surd), a.max_n, min_increases=a.min_increases)


def _cmd_mahler(a) -> ExperimentReport:
    return exp_mahler_rational(Fraction(a.r), Fraction(a.l), a.max_n)


def _cmd_scan11(a) -> ExperimentReport:
    x = AlgebraicReal.parse(a.poly, a.root)
    return scan_main_theorem(x, Fraction(a.delta), Fraction(a.eps), a.max_n, a.max_q,
                             prec=a.prec, cap=a.cap)


def _cmd_liouville(a) -> ExperimentReport:
    schedule = BetaSchedule.named(a.schedule, a.schedule_file)
    return exp_liouville(schedule, a.depth, max_depth=a.max_depth)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--prec", type=int, default=DEFAULT_PREC,
                        help="working precision in bits (default %(default)s)")
    common.add_argument("--cap", type=int, default=PRECISION_CAP,
                        help="precision cap in bits before giving up (default %(default)s)")
    common.add_argument("--format", default="text", help=f"one of {', '.join(FORMATS)}")
    common.add_argument("--out", help="write the report here instead of stdout")

    p = _Parser(prog="mahlerlab", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, fn, help_):
        s = sub.add_parser(name, parents=[common], help=help_)
        s.set_defaults(fn=fn)
        return s

    s = add("cf", _cmd_cf, "continued fraction of a quadratic irrational")
    s.add_argument("surd", help='e.g. "(1+sqrt(13))/2"')

    s = add("powers", _cmd_powers, "period lengths of the expansions of x^n")
    s.add_argument("surd")
    s.add_argument("--max-n", type=int, required=True)

    poly_help = ('"X^2-X-1" or ascending coefficients "-1,-1,1" '
                 '(put "--" before arguments that start with "-")')
    root_help = 'root selector: "K" (K-th real root, negative from the top), "largest", "in:(lo,hi)"'
    s = add("pisot", _cmd_pisot, "classify a real root as Pisot / pseudo-Pisot")
    s.add_argument("poly", help=poly_help)
    s.add_argument("--root", default="largest", help=root_help)

    s = add("fracpow", _cmd_fracpow, "certified distance from scale*x^n to the nearest integer")
    s.add_argument("poly", help=poly_help)
    s.add_argument("--root", default="largest", help=root_help)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--scale", default="1")

    s = add("thm1", _cmd_thm1, "||x^n|| against l^n")
    s.add_argument("poly", help=poly_help)
    s.add_argument("--root", default="largest", help=root_help)
    s.add_argument("--l", required=True)
    s.add_argument("--max-n", type=int, required=True)
    s.add_argument("--power-cap", type=int, default=6)
    s.add_argument("--density", default="1/2")

    s = add("thm2", _cmd_thm2, "period growth of the expansions of x^n")
    s.add_argument("surd")
    s.add_argument("--max-n", type=int, required=True)
    s.add_argument("--min-increases", type=int, default=4)

    s = add("mahler", _cmd_mahler, "exact frac((p/q)^n) against l^n")
    s.add_argument("r", help='rational > 1, e.g. "3/2"')
    s.add_argument("--l", required=True)
    s.add_argument("--max-n", type=int, required=True)

    s = add("scan11", _cmd_scan11, "scan 0 < ||delta q x^n|| < H(x^n)^-eps q^(-d-eps)")
    s.add_argument("poly", help=poly_help)
    s.add_argument("--root", default="largest", help=root_help)
    s.add_argument("--delta", default="1")
    s.add_argument("--eps", required=True)
    s.add_argument("--max-n", type=int, required=True)
    s.add_argument("--max-q", type=int, default=1)

    s = add("liouville", _cmd_liouville, "nested-interval construction with certificates")
    s.add_argument("--depth", type=int, required=True)
    s.add_argument("--schedule", choices=("default", "zeros", "file"), default="default")
    s.add_argument("--schedule-file", help="one beta per line, for --schedule file")
    s.add_argument("--max-depth", type=int, default=DEFAULT_MAX_DEPTH,
                   help="cost cap on --depth (default %(default)s)")
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.format not in FORMATS:
        parser.error(f"unknown format {args.format!r}; choose from {', '.join(FORMATS)}")
    try:
        report = args.fn(args)
        text = emit(report, args.format)
    except (UsageError, ValueError, ZeroDivisionError) as err:
        print(f"mahlerlab: error: {err}", file=sys.stderr)
        return EXIT_USAGE
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
