"""``qcalc``: batch front end for unit files and single expressions.

Exit codes: 0 all statements passed, 1 semantic or dimension error,
2 parse error, 3 I/O error. Diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import sys
from typing import Sequence, TextIO

from .core import laurent_form
from .errors import ParseError, QSpaceError
from .evaluate import Evaluator, Result, describe
from .quotients import build_quotient, format_pi_group, pi_groups
from .scalars import format_rational
from .syntax import BasisDecl, LetDecl, UnitDecl, parse, parse_expression, parse_statement
from .units import convert

EXIT_OK, EXIT_SEMANTIC, EXIT_PARSE, EXIT_IO = 0, 1, 2, 3


class _Failure(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except (OSError, UnicodeDecodeError) as exc:
        raise _Failure(EXIT_IO, f"cannot read {path}: {exc}") from None


def _parse_file(path: str):
    try:
        return parse(_read(path))
    except ParseError as exc:
        raise _Failure(EXIT_PARSE, f"{path}:{exc}") from None


def _load_file(path: str) -> tuple[Evaluator, list, list[Result]]:
    statements = _parse_file(path)
    ev = Evaluator()
    results = ev.run(statements)
    return ev, statements, results


def _context(args) -> Evaluator:
    """Registry for single-expression commands from ``--units`` and ``-D``."""
    ev = Evaluator()
    if args.units:
        ev, _, results = _load_file(args.units)
        _require_clean(args.units, results)
    for i, line in enumerate(args.define or [], start=1):
        try:
            stmt = parse_statement(line, i)
        except ParseError as exc:
            raise _Failure(EXIT_PARSE, f"-D {line!r}: {exc}") from None
        if stmt is None:
            continue
        if isinstance(stmt, BasisDecl) and (ev.space.rank or ev.registry.units):
            raise _Failure(EXIT_PARSE, f"-D {line!r}: basis already declared")
        try:
            ev.execute(stmt)
        except QSpaceError as exc:
            raise _Failure(EXIT_SEMANTIC, f"-D {line!r}: {describe(exc)}") from None
    return ev


def _expression(ev: Evaluator, text: str):
    try:
        node = parse_expression(text)
    except ParseError as exc:
        raise _Failure(EXIT_PARSE, f"{text!r}: {exc}") from None
    try:
        return ev.eval(node)
    except QSpaceError as exc:
        raise _Failure(EXIT_SEMANTIC, describe(exc)) from None


def cmd_check(args, out: TextIO, err: TextIO) -> int:
    _, _, results = _load_file(args.file)
    code = EXIT_OK
    for r in results:
        print(r.text, file=out)
        if not r.ok:
            print(f"{args.file}:{r.line}: {r.text}", file=err)
            code = EXIT_SEMANTIC
    return code


def cmd_eval(args, out: TextIO, err: TextIO) -> int:
    ev = _context(args)
    print(laurent_form(_expression(ev, args.expr)), file=out)
    return EXIT_OK


def cmd_convert(args, out: TextIO, err: TextIO) -> int:
    ev = _context(args)
    x = _expression(ev, args.expr)
    u = _expression(ev, args.to)
    try:
        print(format_rational(convert(x, u)), file=out)
    except QSpaceError as exc:
        raise _Failure(EXIT_SEMANTIC, describe(exc)) from None
    return EXIT_OK


def _require_clean(path: str, results: list[Result]) -> None:
    bad = [r for r in results if not r.ok]
    if bad:
        raise _Failure(EXIT_SEMANTIC, f"{path}:{bad[0].line}: {bad[0].text}")


def cmd_quotient(args, out: TextIO, err: TextIO) -> int:
    ev, _, results = _load_file(args.file)
    _require_clean(args.file, results)
    try:
        qs = build_quotient(ev.registry, args.set)
    except QSpaceError as exc:
        raise _Failure(EXIT_SEMANTIC, describe(exc)) from None
    print(f"rank {qs.rank}", file=out)
    print("basis " + " ".join(qs.quotient_space.basis), file=out)
    for name in ev.registry.names():
        print(f"{name} -> {laurent_form(qs.project(ev.registry.resolve(name)))}", file=out)
    return EXIT_OK


def cmd_pi(args, out: TextIO, err: TextIO) -> int:
    ev, statements, results = _load_file(args.file)
    _require_clean(args.file, results)
    names = [s.name for s in statements if isinstance(s, LetDecl)]
    if names:
        values = [ev.variables[n] for n in names]
    else:
        names = [s.name for s in statements if isinstance(s, UnitDecl)]
        values = [ev.registry.resolve(n) for n in names]
    groups = pi_groups([(n, q.dims) for n, q in zip(names, values)])
    if not groups:
        print("none", file=out)
    for i, e in enumerate(groups, start=1):
        print(f"pi{i} = {format_pi_group(names, e)}", file=out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qcalc", description="Exact quantity calculus on unit files.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="run every statement of a unit file")
    p.add_argument("file")
    p.set_defaults(func=cmd_check)

    def context_flags(p):
        p.add_argument("--units", metavar="FILE", help="unit file providing the basis and units")
        p.add_argument("-D", "--define", action="append", metavar="LINE",
                       help="extra statement, e.g. 'unit yard = 3 foot' (repeatable)")

    p = sub.add_parser("eval", help="print the canonical form of an expression")
    p.add_argument("expr")
    context_flags(p)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("convert", help="measure an expression in a unit")
    p.add_argument("expr")
    p.add_argument("--to", required=True, metavar="UNIT")
    context_flags(p)
    p.set_defaults(func=cmd_convert)

    p = sub.add_parser("quotient", help="set units to 1 and project every unit")
    p.add_argument("file")
    p.add_argument("--set", action="append", required=True, metavar="NAME")
    p.set_defaults(func=cmd_quotient)

    p = sub.add_parser("pi", help="dimensionless groups of the file's variables")
    p.add_argument("file")
    p.set_defaults(func=cmd_pi)
    return parser


def run(argv: Sequence[str] | None = None, out: TextIO | None = None, err: TextIO | None = None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_PARSE
    try:
        return args.func(args, out, err)
    except _Failure as exc:
        print(f"qcalc: {exc}", file=err)
        return exc.code


def main() -> None:
    sys.exit(run())
