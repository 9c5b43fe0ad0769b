"""Lexer, AST and recursive-descent parser for quantity expressions and unit files.

Expression grammar::

    expr    := ['-'] term (('+' | '-') term)*
    term    := factor (('*' | '/')? factor)*       # juxtaposition multiplies
    factor  := primary ('^' ['-'] INT)*
    primary := NUMBER | NAME | '(' expr ')'

``NUMBER`` is an integer, an exact decimal or an ``a/b`` fraction written
without spaces. Division is left-associative and ``^`` binds tighter than
juxtaposition.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Union

from .errors import ParseError
from .scalars import parse_rational

Span = tuple[int, int, int]  # line, start column, end column (1-based, end exclusive)


@dataclass(frozen=True)
class Token:
    kind: str  # NUMBER, NAME, OP, END
    text: str
    line: int
    col: int

    @property
    def end(self) -> int:
        return self.col + len(self.text)


_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<number>\d+(?:\.\d*)?)
  | (?P<name>[^\W\d]\w*)
  | (?P<op>==|->|[-+*/^()=])
    """,
    re.VERBOSE,
)


def tokenize(text: str, line: int = 1) -> list[Token]:
    tokens: list[Token] = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos + 1)
        kind = m.lastgroup
        if kind == "number":
            tokens.append(Token("NUMBER", m.group(), line, pos + 1))
        elif kind == "name":
            tokens.append(Token("NAME", m.group(), line, pos + 1))
        elif kind == "op":
            tokens.append(Token("OP", m.group(), line, pos + 1))
        pos = m.end()
    tokens = _merge_fractions(tokens)
    tokens.append(Token("END", "", line, len(text) + 1))
    return tokens


def _merge_fractions(tokens: list[Token]) -> list[Token]:
    """Fuse ``INT/INT`` written without spaces into one NUMBER token.

    Not applied right after ``^`` where the integer is an exponent.
    """
    out: list[Token] = []
    i = 0
    while i < len(tokens):
        t = tokens[i]
        if (
            t.kind == "NUMBER"
            and "." not in t.text
            and i + 2 < len(tokens)
            and tokens[i + 1].text == "/"
            and tokens[i + 1].col == t.end
            and tokens[i + 2].kind == "NUMBER"
            and "." not in tokens[i + 2].text
            and tokens[i + 2].col == t.end + 1
            and not _after_caret(out)
        ):
            out.append(Token("NUMBER", t.text + "/" + tokens[i + 2].text, t.line, t.col))
            i += 3
            continue
        out.append(t)
        i += 1
    return out


def _after_caret(out: list[Token]) -> bool:
    if out and out[-1].text == "^":
        return True
    return len(out) > 1 and out[-1].text in ("-", "+") and out[-2].text == "^"


# -- AST --------------------------------------------------------------------

@dataclass(frozen=True)
class NumberLit:
    value: Fraction
    span: Span = field(default=(0, 0, 0), compare=False)


@dataclass(frozen=True)
class Name:
    name: str
    span: Span = field(default=(0, 0, 0), compare=False)


@dataclass(frozen=True)
class Scale:
    factor: Fraction
    operand: "Node"
    span: Span = field(default=(0, 0, 0), compare=False)


@dataclass(frozen=True)
class Mul:
    left: "Node"
    right: "Node"
    span: Span = field(default=(0, 0, 0), compare=False)


@dataclass(frozen=True)
class Div:
    left: "Node"
    right: "Node"
    span: Span = field(default=(0, 0, 0), compare=False)


@dataclass(frozen=True)
class Pow:
    base: "Node"
    exponent: int
    span: Span = field(default=(0, 0, 0), compare=False)


@dataclass(frozen=True)
class Add:
    left: "Node"
    right: "Node"
    span: Span = field(default=(0, 0, 0), compare=False)


@dataclass(frozen=True)
class Sub:
    left: "Node"
    right: "Node"
    span: Span = field(default=(0, 0, 0), compare=False)


@dataclass(frozen=True)
class Neg:
    operand: "Node"
    span: Span = field(default=(0, 0, 0), compare=False)


@dataclass(frozen=True)
class Paren:
    inner: "Node"
    span: Span = field(default=(0, 0, 0), compare=False)


Node = Union[NumberLit, Name, Scale, Mul, Div, Pow, Add, Sub, Neg, Paren]


# -- statements -------------------------------------------------------------

@dataclass(frozen=True)
class BasisDecl:
    names: tuple[str, ...]
    line: int = 0


@dataclass(frozen=True)
class UnitDecl:
    name: str
    expr: Node
    line: int = 0


@dataclass(frozen=True)
class LetDecl:
    name: str
    expr: Node
    line: int = 0


@dataclass(frozen=True)
class Check:
    expr: Node
    line: int = 0


@dataclass(frozen=True)
class Assert:
    lhs: Node
    rhs: Node
    line: int = 0


@dataclass(frozen=True)
class Convert:
    expr: Node
    target: Node
    line: int = 0


Statement = Union[BasisDecl, UnitDecl, LetDecl, Check, Assert, Convert]

_PRIMARY_START = ("NUMBER", "NAME", "'('", "'-'")


class _Parser:
    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.pos = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.pos]

    def advance(self) -> Token:
        t = self.tokens[self.pos]
        self.pos += 1
        return t

    def at(self, text: str) -> bool:
        return self.tok.kind == "OP" and self.tok.text == text

    def fail(self, expected) -> ParseError:
        t = self.tok
        what = "end of input" if t.kind == "END" else repr(t.text)
        return ParseError(f"unexpected {what}", t.line, t.col, expected)

    def expect_op(self, text: str) -> Token:
        if not self.at(text):
            raise self.fail([f"'{text}'"])
        return self.advance()

    def expect_name(self) -> Token:
        if self.tok.kind != "NAME":
            raise self.fail(["NAME"])
        return self.advance()

    def expect_end(self, extra=()) -> None:
        if self.tok.kind != "END":
            raise self.fail(["end of line", *extra])

    def _span(self, start: Token) -> Span:
        prev = self.tokens[self.pos - 1]
        return (start.line, start.col, prev.end)

    def expr(self) -> Node:
        start = self.tok
        if self.at("-"):
            self.advance()
            operand = self.term()
            node: Node = Neg(operand, self._span(start))
        else:
            node = self.term()
        while self.at("+") or self.at("-"):
            op = self.advance().text
            right = self.term()
            cls = Add if op == "+" else Sub
            node = cls(node, right, self._span(start))
        return node

    def _starts_primary(self) -> bool:
        return self.tok.kind in ("NUMBER", "NAME") or self.at("(")

    def term(self) -> Node:
        start = self.tok
        first = self.factor()
        items: list[tuple[str, Node]] = []
        while True:
            if self.at("*") or self.at("/"):
                op = self.advance().text
                items.append((op, self.factor()))
            elif self._starts_primary():
                items.append(("", self.factor()))
            else:
                break
        if isinstance(first, NumberLit) and items and items[0][0] == "":
            # leading number followed by units: a scaled quantity
            rest = items[0][1]
            for op, node in items[1:]:
                rest = self._combine(rest, op, node, start)
            return Scale(first.value, rest, self._span(start))
        node = first
        for op, right in items:
            node = self._combine(node, op, right, start)
        return node

    def _combine(self, left: Node, op: str, right: Node, start: Token) -> Node:
        span = (start.line, start.col, right.span[2])
        return Div(left, right, span) if op == "/" else Mul(left, right, span)

    def factor(self) -> Node:
        start = self.tok
        node = self.primary()
        while self.at("^"):
            self.advance()
            sign = 1
            if self.at("-") or self.at("+"):
                sign = -1 if self.advance().text == "-" else 1
            t = self.tok
            if t.kind != "NUMBER" or not t.text.isdigit():
                raise self.fail(["INT"])
            self.advance()
            node = Pow(node, sign * int(t.text), self._span(start))
        return node

    def primary(self) -> Node:
        t = self.tok
        if t.kind == "NUMBER":
            self.advance()
            return NumberLit(parse_rational(t.text), (t.line, t.col, t.end))
        if t.kind == "NAME":
            self.advance()
            return Name(t.text, (t.line, t.col, t.end))
        if self.at("("):
            self.advance()
            inner = self.expr()
            self.expect_op(")")
            return Paren(inner, self._span(t))
        raise self.fail(_PRIMARY_START)


def parse_expression(text: str, line: int = 1) -> Node:
    p = _Parser(tokenize(text, line))
    node = p.expr()
    p.expect_end(["'+'", "'-'", "'*'", "'/'", "'^'"])
    return node


_KEYWORDS = ("basis", "unit", "let", "check", "assert", "convert")


def parse_statement(text: str, line: int = 1) -> Statement | None:
    """Parse one line of a unit file; blank and comment-only lines give None."""
    code = text.split("#", 1)[0]
    if not code.strip():
        return None
    p = _Parser(tokenize(code, line))
    head = p.tok
    if head.kind != "NAME" or head.text not in _KEYWORDS:
        raise ParseError(f"unknown statement {head.text!r}", line, head.col, [repr(k) for k in _KEYWORDS])
    p.advance()
    kw = head.text
    if kw == "basis":
        names = []
        while p.tok.kind == "NAME":
            names.append(p.advance().text)
        p.expect_end(["NAME"])
        return BasisDecl(tuple(names), line)
    if kw in ("unit", "let"):
        name = p.expect_name().text
        p.expect_op("=")
        expr = p.expr()
        p.expect_end(["'+'", "'-'", "'*'", "'/'", "'^'"])
        return (UnitDecl if kw == "unit" else LetDecl)(name, expr, line)
    if kw == "check":
        expr = p.expr()
        p.expect_end(["'+'", "'-'", "'*'", "'/'", "'^'"])
        return Check(expr, line)
    if kw == "assert":
        lhs = p.expr()
        if not p.at("=="):
            raise p.fail(["'=='", "'+'", "'-'", "'*'", "'/'", "'^'"])
        p.advance()
        rhs = p.expr()
        p.expect_end(["'+'", "'-'", "'*'", "'/'", "'^'"])
        return Assert(lhs, rhs, line)
    expr = p.expr()
    if not p.at("->"):
        raise p.fail(["'->'", "'+'", "'-'", "'*'", "'/'", "'^'"])
    p.advance()
    target = p.expr()
    p.expect_end(["'+'", "'-'", "'*'", "'/'", "'^'"])
    return Convert(expr, target, line)


def parse(text: str, require_basis: bool = True) -> list[Statement]:
    """Parse a whole unit file.

    With ``require_basis`` the file must declare its basis exactly once, as
    its first statement.
    """
    statements: list[Statement] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stmt = parse_statement(raw, lineno)
        if stmt is None:
            continue
        if isinstance(stmt, BasisDecl) and statements:
            raise ParseError("basis must be declared once, before anything else", lineno, 1)
        if require_basis and not statements and not isinstance(stmt, BasisDecl):
            raise ParseError("file must start with a basis declaration", lineno, 1, ["'basis'"])
        statements.append(stmt)
    if require_basis and not statements:
        raise ParseError("file must start with a basis declaration", 1, 1, ["'basis'"])
    return statements
