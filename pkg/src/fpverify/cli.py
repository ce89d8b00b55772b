"""Command-line front end.

Subcommands: parse, tc, abelianize, simplify, certify, verify.

Exit codes: 0 pass, 1 verification mismatch (or certificate not found),
2 input error, 3 resource limit.  FPVERIFY_MAX_COSETS overrides the default
coset limit.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import __version__
from .certificates import NotFound, search_certificate
from .corpus import list_scenarios
from .coset import DEFAULT_MAX_COSETS, STRATEGIES, enumerate_cosets
from .presentation import (
    ParseError,
    load_presentation_file,
    parse_word,
    print_presentation,
    simplify,
)
from .snf import homology_h1
from .verify import run_all, run_scenario
from .words import CONVENTIONS

EXIT_PASS = 0
EXIT_MISMATCH = 1
EXIT_INPUT = 2
EXIT_LIMIT = 3


def _default_max_cosets() -> int:
    env = os.environ.get("FPVERIFY_MAX_COSETS")
    if env is not None:
        try:
            value = int(env)
            if value < 1:
                raise ValueError
        except ValueError:
            raise SystemExit(
                f"FPVERIFY_MAX_COSETS must be a positive integer, got {env!r}")
        return value
    return DEFAULT_MAX_COSETS


def _load(path: str, convention: str):
    try:
        return load_presentation_file(path, convention=convention)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        raise SystemExit(EXIT_INPUT)
    except (ParseError, ValueError) as exc:
        print(f"error: {path}: {exc}", file=sys.stderr)
        raise SystemExit(EXIT_INPUT)


def _emit(data: dict) -> None:
    json.dump(data, sys.stdout, indent=1)
    sys.stdout.write("\n")


def cmd_parse(args) -> int:
    p = _load(args.path, args.convention)
    if args.json:
        _emit(p.to_json())
    else:
        print(print_presentation(p))
    return EXIT_PASS


def cmd_tc(args) -> int:
    p = _load(args.path, args.convention)
    try:
        subgroup = tuple(parse_word(w, convention=args.convention)
                         for w in args.subgroup)
    except (ParseError, ValueError) as exc:
        print(f"error: subgroup word: {exc}", file=sys.stderr)
        return EXIT_INPUT
    max_cosets = args.max_cosets or _default_max_cosets()
    result = enumerate_cosets(p, subgroup, strategy=args.strategy,
                              max_cosets=max_cosets)
    _emit(result.to_json())
    return EXIT_PASS if result.completed else EXIT_LIMIT


def cmd_abelianize(args) -> int:
    p = _load(args.path, args.convention)
    _emit(homology_h1(p).to_json())
    return EXIT_PASS


def cmd_simplify(args) -> int:
    p = _load(args.path, args.convention)
    simplified, moves = simplify(p, budget=args.budget)
    if args.json:
        _emit({"presentation": simplified.to_json(), "moves": len(moves)})
    else:
        print(print_presentation(simplified))
    return EXIT_PASS


def cmd_certify(args) -> int:
    p = _load(args.path, args.convention)
    try:
        target = parse_word(args.target, convention=args.convention)
    except (ParseError, ValueError) as exc:
        print(f"error: target word: {exc}", file=sys.stderr)
        return EXIT_INPUT
    try:
        cert = search_certificate(
            p, target, max_factors=args.max_factors,
            max_conjugator_len=args.max_conjugator_len,
            max_states=args.max_states)
    except NotFound as exc:
        print(f"not found: {exc}", file=sys.stderr)
        return EXIT_MISMATCH
    _emit(cert.to_json())
    return EXIT_PASS


def _print_report(report, as_json: bool) -> None:
    if as_json:
        _emit(report.to_json())
        return
    print(f"{report.scenario}: {report.status.upper()} "
          f"(convention={report.convention}, "
          f"{report.elapsed_ms / 1000.0:.1f}s)")
    if report.source_claim:
        print(f'  source claim ({report.source_location}): '
              f'"{report.source_claim}"')
    for step in report.steps:
        extra = ""
        if step.detail:
            extra = "  " + json.dumps(step.detail, sort_keys=True)
        print(f"  [{step.status:5}] {step.name}{extra}")


def cmd_verify(args) -> int:
    max_cosets = args.max_cosets or _default_max_cosets()
    try:
        if args.all:
            reports = run_all(convention=args.convention,
                              max_cosets=max_cosets, strategy=args.strategy)
        else:
            reports = [run_scenario(args.scenario,
                                    convention=args.convention,
                                    max_cosets=max_cosets,
                                    strategy=args.strategy)]
    except KeyError as exc:
        print(f"error: {exc.args[0]}", file=sys.stderr)
        return EXIT_INPUT
    if args.json:
        _emit({"reports": [r.to_json() for r in reports]})
    else:
        for r in reports:
            _print_report(r, as_json=False)
    statuses = {r.status for r in reports}
    if "fail" in statuses:
        return EXIT_MISMATCH
    if "limit" in statuses:
        return EXIT_LIMIT
    return EXIT_PASS


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fpverify",
        description="Finitely-presented-group verification toolkit.")
    parser.add_argument("--version", action="version",
                        version=f"fpverify {__version__}")
    parser.add_argument("--convention", choices=CONVENTIONS,
                        default="default",
                        help="commutator expansion convention")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("parse", help="parse and reprint a presentation file")
    p.add_argument("path")
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_parse)

    p = sub.add_parser("tc", help="run Todd-Coxeter coset enumeration")
    p.add_argument("path")
    p.add_argument("--strategy", choices=STRATEGIES, default="hlt-lookahead")
    p.add_argument("--max-cosets", type=int, default=None)
    p.add_argument("--subgroup", action="append", default=[],
                   metavar="WORD", help="subgroup generator (repeatable)")
    p.set_defaults(fn=cmd_tc)

    p = sub.add_parser("abelianize", help="first homology of a presentation")
    p.add_argument("path")
    p.set_defaults(fn=cmd_abelianize)

    p = sub.add_parser("simplify", help="greedy Tietze simplification")
    p.add_argument("path")
    p.add_argument("--budget", type=int, default=1000)
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_simplify)

    p = sub.add_parser("certify",
                       help="search a consequence certificate for a word")
    p.add_argument("path")
    p.add_argument("--target", required=True, metavar="WORD")
    p.add_argument("--max-factors", type=int, default=16)
    p.add_argument("--max-conjugator-len", type=int, default=24)
    p.add_argument("--max-states", type=int, default=200_000)
    p.set_defaults(fn=cmd_certify)

    p = sub.add_parser("verify", help="replay registered scenarios")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--scenario", metavar="ID",
                       help="one of: " + ", ".join(
                           s.id for s in list_scenarios()))
    group.add_argument("--all", action="store_true")
    p.add_argument("--strategy", choices=STRATEGIES, default="hlt-lookahead")
    p.add_argument("--max-cosets", type=int, default=None)
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_verify)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.fn(args)


if __name__ == "__main__":
    sys.exit(main())
