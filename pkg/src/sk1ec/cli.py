"""Command line: ``sk1ec analyze`` and ``sk1ec scan``."""
from __future__ import annotations

import argparse
import json
import logging
import sys

from .assemble import render_report
from .corpus import JOBS_ENV, CurveRecord, analyze, parse_curve_file, scan
from .curves import SUPPORTED_P
from .errors import AssemblyInconsistency, CurveFileError

EXIT_OK, EXIT_USAGE, EXIT_INCONSISTENT = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _primes(text: str) -> tuple[int, ...]:
    try:
        ps = tuple(int(s) for s in text.split(",") if s.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad prime list {text!r}") from None
    bad = [p for p in ps if p not in SUPPORTED_P]
    if bad or not ps:
        raise argparse.ArgumentTypeError(f"primes must be drawn from {SUPPORTED_P}")
    return ps


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="sk1ec", description="mod-p structure of the norm kernel of SK1 for elliptic curves over Q")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    a = sub.add_parser("analyze", help="report on one curve")
    a.add_argument("--curve", required=True, help="a1,a2,a3,a4,a6")
    a.add_argument("--label", default=None)
    a.add_argument("--p", type=_primes, default=SUPPORTED_P, help="comma-separated primes (default 2,3,5,7)")
    a.add_argument("--precision", type=int, default=None, help="unit digits of each Tate parameter")
    a.add_argument("--format", choices=("text", "json"), default="text")

    s = sub.add_parser("scan", help="classify every curve in a file")
    s.add_argument("--input", required=True)
    s.add_argument("--p", type=_primes, default=SUPPORTED_P)
    s.add_argument("--jobs", type=int, default=None, help=f"worker processes (default ${JOBS_ENV} or 1)")
    s.add_argument("--strict", action="store_true", help="abort on the first bad line")
    s.add_argument("--summary-only", action="store_true")
    s.add_argument("--screen-bound", type=int, default=100)
    s.add_argument("--format", choices=("text", "json"), default="text")
    return parser


def _analyze(args) -> int:
    try:
        record = parse_curve_file([f"{args.label or 'E'},{args.curve}\n"])[0]
    except CurveFileError as exc:
        print(f"sk1ec: bad curve: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.precision is not None and args.precision < 1:
        print("sk1ec: --precision must be positive", file=sys.stderr)
        return EXIT_USAGE
    record = CurveRecord(args.label, record.ainvs)
    try:
        reports = analyze(record, args.p, args.precision)
    except AssemblyInconsistency as exc:
        print(f"sk1ec: internal inconsistency: {exc}", file=sys.stderr)
        return EXIT_INCONSISTENT
    if args.format == "json":
        print(json.dumps([json.loads(render_report(r, "json")) for r in reports.values()], ensure_ascii=False, indent=2))
    else:
        print("\n\n".join(render_report(r) for r in reports.values()))
    return EXIT_OK


def _scan(args) -> int:
    try:
        records = parse_curve_file(args.input, strict=args.strict)
    except (OSError, CurveFileError) as exc:
        print(f"sk1ec: {exc}", file=sys.stderr)
        return EXIT_USAGE
    summary, results = scan(records, args.p, args.jobs, args.summary_only, args.screen_bound)
    if args.format == "json":
        out = {"summary": summary.as_dict()}
        if not args.summary_only:
            out["curves"] = [
                {
                    "label": r.label,
                    "semistable": r.semistable,
                    "coinvariants": {str(p): d for p, d in r.coinvariants.items()},
                    "classification": {str(p): t for p, t in r.classifications.items()},
                    "reports": [json.loads(render_report(rep, "json")) for rep in r.reports.values()],
                    "error": r.error,
                }
                for r in results
            ]
        print(json.dumps(out, ensure_ascii=False, indent=2))
    else:
        if not args.summary_only:
            for r in results:
                if r.error:
                    print(f"{r.label}: ERROR {r.error}")
                    continue
                dims = " ".join(f"p={p}:{d}({r.classifications[p]})" for p, d in r.coinvariants.items())
                print(f"{r.label}: {'semistable' if r.semistable else 'additive'} {dims}")
        for key, value in summary.as_dict().items():
            print(f"{key}: {value}")
    return EXIT_INCONSISTENT if any(r.inconsistent for r in results) else EXIT_OK


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    if args.command == "analyze":
        return _analyze(args)
    return _scan(args)


if __name__ == "__main__":
    sys.exit(main())
