"""Exact scalars: rationals for quantity spaces, residues mod n for finite models.

Rationals are plain :class:`fractions.Fraction` values; this module adds the
text form used by the expression language and a small op dispatcher.
"""

from __future__ import annotations

import operator
import re
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .errors import DivisionByZero, ModulusMismatch, NoInverse

Rational = Fraction

_RATIONAL_RE = re.compile(r"^\s*([+-]?)(\d+)(?:\.(\d*)|/(\d+))?\s*$")


def parse_rational(text: str) -> Fraction:
    """Parse ``a``, ``a/b`` or ``a.b`` exactly; never goes through float.

    >>> parse_rational("4.5")
    Fraction(9, 2)
    """
    m = _RATIONAL_RE.match(text)
    if not m:
        raise ValueError(f"not a rational literal: {text!r}")
    sign, whole, frac, den = m.groups()
    if den is not None:
        if int(den) == 0:
            raise DivisionByZero(f"zero denominator in {text!r}")
        value = Fraction(int(whole), int(den))
    elif frac:
        value = Fraction(int(whole + frac), 10 ** len(frac))
    else:
        value = Fraction(int(whole))
    return -value if sign == "-" else value


def format_rational(q: Fraction) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


_BINARY = {
    "add": operator.add,
    "sub": operator.sub,
    "mul": operator.mul,
    "div": operator.truediv,
}


def rational_op(a: Fraction, b: Fraction | None, op: str):
    """Apply ``op`` to exact rationals.

    ``cmp`` returns -1, 0 or 1; ``neg`` and ``inv`` ignore ``b``.
    """
    a = Fraction(a)
    if op in _BINARY:
        b = Fraction(b)
        if op == "div" and b == 0:
            raise DivisionByZero(f"{format_rational(a)} / 0")
        return _BINARY[op](a, b)
    if op == "neg":
        return -a
    if op == "inv":
        if a == 0:
            raise DivisionByZero("inverse of 0")
        return 1 / a
    if op == "cmp":
        b = Fraction(b)
        return (a > b) - (a < b)
    raise ValueError(f"unknown rational op {op!r}")


@dataclass(frozen=True)
class ModularElement:
    """Residue class ``value mod modulus`` in the ring Z/nZ."""

    modulus: int
    value: int

    def __post_init__(self):
        if self.modulus < 2:
            raise ValueError(f"modulus must be >= 2, got {self.modulus}")
        object.__setattr__(self, "value", self.value % self.modulus)

    def _check(self, other: ModularElement) -> None:
        if not isinstance(other, ModularElement):
            raise TypeError(f"expected ModularElement, got {type(other).__name__}")
        if other.modulus != self.modulus:
            raise ModulusMismatch(f"mod {self.modulus} vs mod {other.modulus}")

    def __add__(self, other: ModularElement) -> ModularElement:
        self._check(other)
        return ModularElement(self.modulus, self.value + other.value)

    def __sub__(self, other: ModularElement) -> ModularElement:
        self._check(other)
        return ModularElement(self.modulus, self.value - other.value)

    def __mul__(self, other: ModularElement) -> ModularElement:
        self._check(other)
        return ModularElement(self.modulus, self.value * other.value)

    def __neg__(self) -> ModularElement:
        return ModularElement(self.modulus, -self.value)

    def inverse(self) -> ModularElement:
        if gcd(self.value, self.modulus) != 1:
            raise NoInverse(self.value, self.modulus)
        return ModularElement(self.modulus, pow(self.value, -1, self.modulus))

    def __int__(self) -> int:
        return self.value

    def __repr__(self) -> str:
        return f"{self.value} mod {self.modulus}"


def modular_op(n: int, a: ModularElement, b: ModularElement | None, op: str) -> ModularElement:
    if a.modulus != n or (b is not None and b.modulus != n):
        raise ModulusMismatch(f"operands are not in Z/{n}")
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "neg":
        return -a
    if op == "inv":
        return a.inverse()
    raise ValueError(f"unknown modular op {op!r}")


def residues(n: int) -> list[ModularElement]:
    return [ModularElement(n, v) for v in range(n)]
