"""Command line entry point: ``curvetop analyze``."""

from __future__ import annotations

import argparse
import sys

from .cad import CertificationError, CurveNotSquareFree
from .emit import FORMATS, emit
from .exactnum import RefinementBudgetExceeded
from .polyparse import DegreeTooLarge, ParseError, read_poly
from .topo import analyze

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_NOT_SQUARE_FREE = 3
EXIT_CERTIFICATION = 4
EXIT_DEGREE = 5


def _parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="curvetop",
                                 description="Certified topology of real plane algebraic curves.")
    sub = ap.add_subparsers(dest="command", required=True)
    an = sub.add_parser("analyze", help="compute the topology of P(x, y) = 0")
    an.add_argument("--input", metavar="FILE",
                    help="file holding a polynomial expression or JSON terms ('-' for stdin)")
    an.add_argument("--expr", help="polynomial expression given inline, e.g. 'x^2+y^2-1'")
    an.add_argument("--out", metavar="FILE", default="-", help="output file (default: stdout)")
    an.add_argument("--format", choices=FORMATS, default="json")
    an.add_argument("--stats", action="store_true", help="add timings and certificate flags (json)")
    an.add_argument("--max-degree", type=int, default=64, metavar="D",
                    help="reject inputs of total degree above D (default 64)")
    an.add_argument("--buffers", choices=("derivative", "rational"), default="derivative",
                    help="how buffer values between special values are chosen")
    return ap


def _read_source(args) -> str:
    if args.expr is not None:
        return args.expr
    if args.input is None:
        raise ParseError("no input: give --input FILE or --expr")
    if args.input == "-":
        return sys.stdin.read()
    with open(args.input, encoding="utf-8") as fh:
        return fh.read()


def analyze_command(args) -> int:
    try:
        text = _read_source(args)
    except OSError as e:
        print(f"curvetop: cannot read input: {e}", file=sys.stderr)
        return EXIT_PARSE
    except ParseError as e:
        print(f"curvetop: {e}", file=sys.stderr)
        return EXIT_PARSE
    try:
        P = read_poly(text, args.max_degree)
    except ParseError as e:
        print(f"curvetop: parse error: {e}", file=sys.stderr)
        return EXIT_PARSE
    except DegreeTooLarge as e:
        print(f"curvetop: {e}", file=sys.stderr)
        return EXIT_DEGREE
    if P.total_degree > args.max_degree:
        print(f"curvetop: degree {P.total_degree} exceeds {args.max_degree}", file=sys.stderr)
        return EXIT_DEGREE
    if P.is_zero():
        print("curvetop: the zero polynomial does not define a curve", file=sys.stderr)
        return EXIT_PARSE
    try:
        top = analyze(P, args.buffers)
    except CurveNotSquareFree as e:
        print(f"curvetop: {e}", file=sys.stderr)
        return EXIT_NOT_SQUARE_FREE
    except (CertificationError, RefinementBudgetExceeded, ArithmeticError) as e:
        print(f"curvetop: certification failure: {e}", file=sys.stderr)
        return EXIT_CERTIFICATION
    data = emit(top, args.format, args.stats)
    if args.out == "-":
        sys.stdout.buffer.write(data)
        sys.stdout.flush()
    else:
        with open(args.out, "wb") as fh:
            fh.write(data)
    return EXIT_OK


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    if args.command == "analyze":
        return analyze_command(args)
    return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
