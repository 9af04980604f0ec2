"""``jetlct`` command line.

Exit codes: 0 success or PASS, 1 usage or parse error, 2 resource
exhaustion, 3 verdict FAIL.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
import time
from importlib import resources
from pathlib import Path
from typing import Sequence

from .errors import IneligibleIdealError, JetLctError, ParseError, ResourceExhausted
from .groebner import Limits, krull_dimension
from .idealfile import IdealFile, parse_arc, read_ideal_file
from .ideal import AffineIdeal
from .jets import contact_ideal, jet_fiber_origin, jet_ideal, ord_along_arc
from .lct import (
    DEFAULT_MMAX,
    LctReport,
    Mode,
    check_inversion_of_adjunction,
    check_multiplicity_bound,
    compare_mod_p,
    default_jobs,
    lct_estimate,
)

EXIT_OK, EXIT_USAGE, EXIT_EXHAUSTED, EXIT_FAIL = 0, 1, 2, 3
SCHEMA_VERSION = 1
VANISHED = "(≡0)"


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def load_schema() -> dict:
    return json.loads(resources.files("jetlct").joinpath("report.schema.json").read_text())


def _positive_int(text: str) -> int:
    v = int(text)
    if v <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def _nonneg_int(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("must be nonnegative")
    return v


def _primes(text: str) -> list[int]:
    try:
        return [int(p) for p in text.split(",") if p.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad prime list {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="jetlct", description="Jet schemes and log canonical threshold estimates.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, mmax=True):
        p.add_argument("file", help="ideal file")
        if mmax:
            p.add_argument("--mmax", type=_nonneg_int, default=DEFAULT_MMAX, help="largest jet level")
            p.add_argument("--jobs", type=_positive_int, default=None,
                           help="worker processes for the per-level jobs (default: available CPUs)")
        p.add_argument("--max-degree", type=_positive_int, default=Limits.max_degree)
        p.add_argument("--time-limit", type=float, default=Limits.time_limit, help="seconds per basis")

    p = sub.add_parser("jet", help="print the jet ideal generators")
    common(p, mmax=False)
    p.add_argument("--m", type=_nonneg_int, required=True)
    p.add_argument("--fiber-origin", action="store_true", help="restrict to jets centred at the origin")

    p = sub.add_parser("lct", help="codimension table and running minimum")
    common(p)
    p.add_argument("--fiber-origin", action="store_true")
    p.add_argument("--json", metavar="PATH")
    p.add_argument("--csv", metavar="PATH")

    p = sub.add_parser("compare", help="origin-fiber dimensions over Q versus F_p")
    common(p)
    p.add_argument("--primes", type=_primes, default=[2, 3, 5])
    p.add_argument("--json", metavar="PATH")

    p = sub.add_parser("ord", help="order of the ideal along a polynomial arc")
    p.add_argument("file")
    p.add_argument("--arc", required=True, help='e.g. "x=t^3; y=t^2"')
    p.add_argument("--prec", type=_positive_int, required=True)

    p = sub.add_parser("contact", help="codimension of the contact locus Cont^{>=e} at level m")
    common(p, mmax=False)
    p.add_argument("--e", type=_positive_int, required=True)
    p.add_argument("--m", type=_nonneg_int, required=True)

    p = sub.add_parser("ioa", help="per-level comparison with a coordinate hyperplane")
    common(p)
    p.add_argument("--hyperplane", required=True, help="variable name x_i of H = {x_i = 0}")
    p.add_argument("--json", metavar="PATH")

    p = sub.add_parser("mult", help="origin-fiber ratios against 1/ord at the origin")
    common(p)
    p.add_argument("--json", metavar="PATH")
    return parser


def _limits(args) -> Limits:
    return Limits(max_degree=args.max_degree, time_limit=args.time_limit)


def _jobs(args) -> int:
    return args.jobs if args.jobs is not None else default_jobs()


def _echo(ideal: AffineIdeal, out, title: str = "ideal") -> None:
    print(f"field: {ideal.field.describe()}", file=out)
    print(f"vars: {' '.join(ideal.ring.names)}", file=out)
    print(f"{title}:", file=out)
    for k, g in enumerate(ideal.generators, start=1):
        mark = f"  {VANISHED}" if g.is_zero() else ""
        print(f"  [{k}] {g}{mark}", file=out)


def _input_record(src: IdealFile, ideal: AffineIdeal | None = None) -> dict:
    ideal = ideal or src.ideal
    return {
        "source": src.source,
        "field": ideal.field.describe(),
        "vars": list(ideal.ring.names),
        "generators": [{"text": str(g), "vanished": g.is_zero()} for g in ideal.generators],
    }


def _table(report: LctReport, out) -> None:
    label = "dim(fiber)" if report.mode is Mode.FIBER else "dim"
    print(f"mode: {report.mode.value}", file=out)
    print(f"{'m':>3}  {label:>10}  {'codim':>6}  ratio", file=out)
    for r in report.rows:
        dim = "-" if r.dim is None else str(r.dim)
        codim = "-" if not r.ok else "inf" if r.codim is None else str(r.codim)
        print(f"{r.m:>3}  {dim:>10}  {codim:>6}  {r.ratio_text()}", file=out)
    fiber = report.caveat if report.mode is Mode.FIBER else None
    for note in (fiber, report.convention, report.diagnostic):
        if note:
            print(f"note: {note}", file=out)
    tail = f" (attained at m = {report.argmin})" if report.argmin is not None else ""
    print(report.footer() + tail, file=out)


def _write_json(path: str, doc: dict) -> None:
    Path(path).write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n", encoding="utf-8")


def _write_csv(path: str, report: LctReport) -> None:
    # infinite codimension is written as codim -1 with ratio 1/0 so the file stays integer-only
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(["m", "codim", "ratio_num", "ratio_den"])
        for r in report.rows:
            if not r.ok:
                w.writerow([r.m, "", "", ""])
            elif r.codim is None:
                w.writerow([r.m, -1, 1, 0])
            else:
                q = r.ratio
                w.writerow([r.m, r.codim, q.numerator, q.denominator])


def _verdict_word(ok: bool, partial: bool) -> str:
    if not ok:
        return "FAIL"
    return "PARTIAL" if partial else "PASS"


def _verdict_exit(ok: bool, partial: bool) -> int:
    if not ok:
        return EXIT_FAIL
    return EXIT_EXHAUSTED if partial else EXIT_OK


def cmd_jet(args, out) -> int:
    src = read_ideal_file(args.file)
    J = jet_ideal(src.ideal, args.m)
    if args.fiber_origin:
        F = jet_fiber_origin(J)
        for g in F.generators:
            print(g, file=out)
        if not F.generators:
            print(f"0  (zero ideal in {F.nvars} variables)", file=out)
        return EXIT_OK
    for _, g in J.ordered():
        print(f"0  {VANISHED}" if g.is_zero() else str(g), file=out)
    return EXIT_OK


def cmd_lct(args, out) -> int:
    start = time.perf_counter()
    src = read_ideal_file(args.file)
    mode = Mode.FIBER if args.fiber_origin else Mode.GLOBAL
    report = lct_estimate(src.ideal, args.mmax, mode, _limits(args), jobs=_jobs(args))
    _echo(src.ideal, out)
    _table(report, out)
    if args.json:
        _write_json(args.json, {
            "schema_version": SCHEMA_VERSION,
            "command": "lct",
            "input": _input_record(src),
            "report": report.to_dict(),
            "timing": {"total_seconds": time.perf_counter() - start},
        })
    if args.csv:
        _write_csv(args.csv, report)
    return EXIT_OK if report.complete else EXIT_EXHAUSTED


def cmd_compare(args, out) -> int:
    start = time.perf_counter()
    src = read_ideal_file(args.file)
    try:
        cmp = compare_mod_p(src.ideal, args.primes, args.mmax, _limits(args), jobs=_jobs(args))
    except IneligibleIdealError as exc:
        raise IneligibleIdealError(
            f"{exc}\nreduction mod p applies to ideals of Z[x_1..x_n] contained in (x_1, ..., x_n)"
        ) from None
    _echo(src.ideal, out)
    for p in cmp.primes:
        _echo(cmp.reduced[p], out, title=f"reduction mod {p}")
    print(f"{'p':>3}  {'m':>3}  {'dim_Q':>6}  {'dim_p':>6}  check", file=out)
    for r in cmp.rows:
        dq = "-" if r.dim_q is None else str(r.dim_q)
        dp = "-" if r.dim_p is None else str(r.dim_p)
        mark = {True: "ok", False: "VIOLATION", None: "timeout"}[r.holds]
        print(f"{r.p:>3}  {r.m:>3}  {dq:>6}  {dp:>6}  {mark}", file=out)
    print("Q " + cmp.report_q.footer(), file=out)
    for p in cmp.primes:
        print(f"F_{p} " + cmp.reports_p[p].footer(), file=out)
    word = _verdict_word(cmp.verdict, cmp.partial)
    print(f"verdict: {word} (dim_p >= dim_Q at every computed level)", file=out)
    if args.json:
        reports = {"Q": cmp.report_q.to_dict()}
        reports.update({f"Fp {p}": cmp.reports_p[p].to_dict() for p in cmp.primes})
        _write_json(args.json, {
            "schema_version": SCHEMA_VERSION,
            "command": "compare",
            "input": _input_record(src),
            "reports": reports,
            "comparison": [{"p": r.p, "m": r.m, "dim_q": r.dim_q, "dim_p": r.dim_p, "holds": r.holds}
                           for r in cmp.rows],
            "verdicts": {"mod_p": word},
            "timing": {"total_seconds": time.perf_counter() - start},
        })
    return _verdict_exit(cmp.verdict, cmp.partial)


def cmd_ord(args, out) -> int:
    src = read_ideal_file(args.file)
    arc = parse_arc(args.arc, src.ring, args.prec)
    print(ord_along_arc(src.ideal, arc), file=out)
    return EXIT_OK


def cmd_contact(args, out) -> int:
    src = read_ideal_file(args.file)
    if args.e > args.m + 1:
        raise ValueError(f"--e {args.e} exceeds m+1 = {args.m + 1}")
    I = contact_ideal(src.ideal, args.e, args.m)
    d = krull_dimension(I, limits=_limits(args))
    print(f"codim = {'inf' if d.codim is None else d.codim}", file=out)
    return EXIT_OK


def cmd_ioa(args, out) -> int:
    start = time.perf_counter()
    src = read_ideal_file(args.file)
    if args.hyperplane not in src.ring.names:
        raise ValueError(f"unknown hyperplane variable {args.hyperplane!r}")
    chk = check_inversion_of_adjunction(src.ideal, args.hyperplane, args.mmax, _limits(args), jobs=_jobs(args))
    _echo(src.ideal, out)
    if chk.contained:
        print(f"H = {{{chk.hyperplane} = 0}} lies inside Y: the H side is 0 by convention", file=out)
    else:
        _echo(chk.restricted, out, title=f"restriction to {chk.hyperplane} = 0")
    print(f"{'m':>3}  {'c_X':>5}  {'c_H':>5}  {'ratio_X':>8}  {'ratio_H':>8}  check", file=out)
    for r in chk.rows:
        def fmt(v):
            return "-" if not r.complete else "inf" if v is None else str(v)
        mark = {True: "ok", False: "VIOLATION", None: "timeout"}[r.holds]
        print(f"{r.m:>3}  {fmt(r.c_x):>5}  {fmt(r.c_h):>5}  {fmt(r.ratio_x):>8}  {fmt(r.ratio_h):>8}  {mark}",
              file=out)
    ex, eh = chk.estimate_x, chk.estimate_h
    print(f"X {chk.report_x.footer()}", file=out)
    print(f"H upper bound after {chk.m_max} levels: {'none' if eh is None else eh}", file=out)
    word = _verdict_word(chk.verdict, chk.partial)
    print(f"verdict: {word} (c_X(m) >= c_H(m) at every computed level)", file=out)
    if args.json:
        reports = {"X": chk.report_x.to_dict()}
        if chk.report_h is not None:
            reports["H"] = chk.report_h.to_dict()
        _write_json(args.json, {
            "schema_version": SCHEMA_VERSION,
            "command": "ioa",
            "input": _input_record(src),
            "reports": reports,
            "comparison": [{"m": r.m, "c_x": r.c_x, "c_h": r.c_h, "holds": r.holds} for r in chk.rows],
            "verdicts": {"inversion_of_adjunction": word},
            "timing": {"total_seconds": time.perf_counter() - start},
        })
    return _verdict_exit(chk.verdict, chk.partial)


def cmd_mult(args, out) -> int:
    start = time.perf_counter()
    src = read_ideal_file(args.file)
    chk = check_multiplicity_bound(src.ideal, args.mmax, _limits(args), jobs=_jobs(args))
    _echo(src.ideal, out)
    _table(chk.report, out)
    partial = not chk.report.complete
    word = _verdict_word(chk.verdict, partial)
    print(f"ord at origin: {chk.order}; bound 1/ord = {chk.bound}", file=out)
    print(f"verdict: {word} (every finite fiber ratio >= {chk.bound})", file=out)
    if args.json:
        _write_json(args.json, {
            "schema_version": SCHEMA_VERSION,
            "command": "mult",
            "input": _input_record(src),
            "report": chk.report.to_dict(),
            "verdicts": {"multiplicity": word},
            "timing": {"total_seconds": time.perf_counter() - start},
        })
    return _verdict_exit(chk.verdict, partial)


COMMANDS = {
    "jet": cmd_jet,
    "lct": cmd_lct,
    "compare": cmd_compare,
    "ord": cmd_ord,
    "contact": cmd_contact,
    "ioa": cmd_ioa,
    "mult": cmd_mult,
}


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args, out)
    except ResourceExhausted as exc:
        print(f"jetlct: resource limit reached: {exc.reason}", file=sys.stderr)
        return EXIT_EXHAUSTED
    except ParseError as exc:
        print(f"jetlct: {args.file}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (JetLctError, ValueError, OSError) as exc:
        print(f"jetlct: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
