"""Evaluate parsed statements against a unit registry."""

from __future__ import annotations

from dataclasses import dataclass, field

from .core import Quantity, QuantitySpace, laurent_form
from .errors import (
    DimensionMismatch,
    DuplicateName,
    IncommensurableAddition,
    NotInvertible,
    QSpaceError,
    UnknownName,
)
from .scalars import format_rational
from .syntax import (
    Add,
    Assert,
    BasisDecl,
    Check,
    Convert,
    Div,
    LetDecl,
    Mul,
    Name,
    Neg,
    Node,
    NumberLit,
    Paren,
    Pow,
    Scale,
    Statement,
    Sub,
    UnitDecl,
    parse_expression,
)
from .units import UnitRegistry, convert


@dataclass(frozen=True)
class Result:
    line: int
    text: str
    ok: bool = True
    error: Exception | None = None


@dataclass
class Evaluator:
    """Holds a registry plus ``let`` variables; statements run in order."""

    registry: UnitRegistry = field(default_factory=lambda: UnitRegistry(QuantitySpace(())))
    variables: dict[str, Quantity] = field(default_factory=dict)

    @property
    def space(self) -> QuantitySpace:
        return self.registry.space

    def lookup(self, node: Name) -> Quantity:
        if node.name in self.variables:
            return self.variables[node.name]
        if node.name in self.registry:
            return self.registry.resolve(node.name)
        raise UnknownName(node.name, node.span)

    def eval(self, node: Node) -> Quantity:
        if isinstance(node, NumberLit):
            return self.space.quantity(node.value)
        if isinstance(node, Name):
            return self.lookup(node)
        if isinstance(node, Scale):
            return node.factor * self.eval(node.operand)
        if isinstance(node, Paren):
            return self.eval(node.inner)
        if isinstance(node, Neg):
            return -self.eval(node.operand)
        if isinstance(node, Pow):
            return self.eval(node.base) ** node.exponent
        if isinstance(node, Mul):
            return self.eval(node.left) * self.eval(node.right)
        if isinstance(node, Div):
            left, right = self.eval(node.left), self.eval(node.right)
            if right.is_zero:
                raise NotInvertible(f"division by the zero quantity {laurent_form(right)}")
            return left / right
        if isinstance(node, (Add, Sub)):
            left, right = self.eval(node.left), self.eval(node.right)
            try:
                return left + right if isinstance(node, Add) else left - right
            except IncommensurableAddition as exc:
                op = "+" if isinstance(node, Add) else "-"
                raise DimensionMismatch(exc.left, exc.right, node.span, op) from None
        raise TypeError(f"not an expression node: {node!r}")

    def _define(self, name: str) -> None:
        if name in self.variables or name in self.registry:
            raise DuplicateName(f"{name!r} is already defined")

    def execute(self, stmt: Statement) -> Result | None:
        """Run one statement; only check, assert and convert produce a result."""
        if isinstance(stmt, BasisDecl):
            self.registry = UnitRegistry.from_basis(stmt.names)
            self.variables = {}
            return None
        if isinstance(stmt, UnitDecl):
            q = self.eval(stmt.expr)
            if stmt.name in self.variables:
                raise DuplicateName(f"{stmt.name!r} is already defined")
            self.registry = self.registry.register(stmt.name, q)
            return None
        if isinstance(stmt, LetDecl):
            q = self.eval(stmt.expr)
            self._define(stmt.name)
            self.variables[stmt.name] = q
            return None
        if isinstance(stmt, Check):
            return Result(stmt.line, f"OK {laurent_form(self.eval(stmt.expr))}")
        if isinstance(stmt, Assert):
            return assert_stmt(self, stmt)
        if isinstance(stmt, Convert):
            value = convert(self.eval(stmt.expr), self.eval(stmt.target))
            return Result(stmt.line, format_rational(value))
        raise TypeError(f"not a statement: {stmt!r}")

    def run(self, statements: list[Statement]) -> list[Result]:
        """Execute every statement, turning semantic errors into failed results."""
        results = []
        for stmt in statements:
            try:
                r = self.execute(stmt)
            except QSpaceError as exc:
                r = Result(stmt.line, f"FAIL {describe(exc)}", ok=False, error=exc)
            if r is not None:
                results.append(r)
        return results


def assert_stmt(ev: Evaluator, stmt: Assert) -> Result:
    lhs, rhs = ev.eval(stmt.lhs), ev.eval(stmt.rhs)
    if lhs.dims != rhs.dims:
        exc = DimensionMismatch(lhs.dims.exponents, rhs.dims.exponents, None, "==")
        return Result(stmt.line, f"FAIL {describe(exc)}", ok=False, error=exc)
    if lhs == rhs:
        return Result(stmt.line, "PASS")
    return Result(stmt.line, f"FAIL {laurent_form(lhs)} != {laurent_form(rhs)}", ok=False)


def describe(exc: Exception) -> str:
    return f"{type(exc).__name__}: {exc}"


def evaluate(statements: list[Statement], registry: UnitRegistry | None = None) -> list[Result]:
    ev = Evaluator(registry) if registry is not None else Evaluator()
    return ev.run(statements)


def eval_expression(text: str, registry: UnitRegistry) -> Quantity:
    return Evaluator(registry).eval(parse_expression(text))
