"""Command line entry point."""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import __version__
from .ideal import GREVLEX, LEX, budget, get_budget
from .poly import PolyError
from .problem import load_problem
from .report import BUILDERS, build, error_document, render_text

EXIT_USAGE = 64


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _positive(text: str) -> int:
    n = int(text)
    if n <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return n


def make_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--input", required=True, metavar="PATH", help="problem file (JSON)")
    common.add_argument("--json", action="store_true", help="emit the JSON result document")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--trials", type=_positive, default=3, help="random linear forms to sample")
    common.add_argument("--order", choices=("grevlex", "lex"), default="grevlex",
                        help="monomial order for printed bases")
    common.add_argument("--budget", type=_positive, help="S-pair budget per Groebner basis")

    parser = _Parser(prog="polarcycle", description="Enriched relative polar curves of constructible sheaves.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    helps = {
        "gecc": "graded enriched characteristic cycle",
        "conormal": "graded enriched relative conormal cycle of f",
        "polar": "polar set and enriched polar curve of (f, g)",
        "main1": "dimension verdicts and stalk table at the origin",
        "main2": "pair numbers for polar components outside V(g)",
        "empty": "polar emptiness checks for random linear forms",
        "leattach": "attaching number of f relative to a linear form",
        "milnor": "Milnor number of f at the origin",
        "family": "additivity of the polar count along g",
    }
    for name in BUILDERS:
        sub.add_parser(name, parents=[common], help=helps[name])
    return parser


def _budget(args) -> int | None:
    env = os.environ.get("POLAR_BUDGET")
    if env:
        return int(env)
    return args.budget


def run(argv=None) -> int:
    args = make_parser().parse_args(argv)
    try:
        b = _budget(args)
        if b is not None and b <= 0:
            raise ValueError("budget must be positive")
        spec = load_problem(args.input)
        order = LEX if args.order == "lex" else GREVLEX
        with budget(b if b is not None else get_budget()):
            doc, status = build(args.command, spec, args.seed, order, args.trials)
    except (OSError, ValueError, PolyError, RuntimeError, ArithmeticError) as exc:
        code = getattr(exc, "code", "IO_ERROR" if isinstance(exc, OSError) else type(exc).__name__)
        doc, status = error_document(args.command, args.seed, code, str(exc)), 1
        if not args.json:
            print(render_text(doc), file=sys.stderr)
            return status
    if args.json:
        sys.stdout.write(dumps(doc))
    else:
        print(render_text(doc))
    return status


def dumps(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def main() -> None:
    sys.exit(run())
