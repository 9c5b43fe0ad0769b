"""Exception hierarchy shared by every qspace module."""

from __future__ import annotations


class QSpaceError(Exception):
    """Base class for all qspace errors."""


# scalars

class DivisionByZero(QSpaceError, ZeroDivisionError):
    pass


class NoInverse(QSpaceError, ArithmeticError):
    def __init__(self, value: int, modulus: int):
        super().__init__(f"{value} has no inverse mod {modulus}")
        self.value = value
        self.modulus = modulus


class ModulusMismatch(QSpaceError, ValueError):
    pass


# dimensions

class RankMismatch(QSpaceError, ValueError):
    pass


class ExponentOverflow(QSpaceError, OverflowError):
    pass


class NotIndependent(QSpaceError, ValueError):
    pass


class NotSaturated(QSpaceError, ValueError):
    def __init__(self, invariant_factors):
        self.invariant_factors = list(invariant_factors)
        super().__init__(f"lattice is not saturated; invariant factors {self.invariant_factors}")


# quantities

class SpaceMismatch(QSpaceError, ValueError):
    pass


class NotInvertible(QSpaceError, ArithmeticError):
    pass


class IncommensurableAddition(QSpaceError, ValueError):
    """Raised when adding quantities of different dimensions."""

    def __init__(self, left, right, message: str | None = None):
        self.left = tuple(left)
        self.right = tuple(right)
        super().__init__(message or f"cannot add {self.left} and {self.right}")


class Incomparable(QSpaceError, ValueError):
    def __init__(self, left, right):
        self.left = tuple(left)
        self.right = tuple(right)
        super().__init__(f"cannot order {self.left} against {self.right}")


# units registry

class DuplicateName(QSpaceError, ValueError):
    pass


class EmptyName(QSpaceError, ValueError):
    pass


class ZeroUnit(QSpaceError, ValueError):
    pass


class NotUnimodular(QSpaceError, ValueError):
    def __init__(self, det: int):
        self.det = det
        super().__init__(f"basis change matrix has determinant {det}, expected +1 or -1")


class WrongCount(QSpaceError, ValueError):
    pass


class IncommensurableConversion(QSpaceError, ValueError):
    def __init__(self, left, right):
        self.left = tuple(left)
        self.right = tuple(right)
        super().__init__(f"cannot convert {self.left} into a multiple of {self.right}")


class UnknownUnit(QSpaceError, KeyError):
    def __str__(self):
        return Exception.__str__(self)


# quotients

class TorsionQuotient(QSpaceError, ValueError):
    def __init__(self, invariant_factors):
        self.invariant_factors = list(invariant_factors)
        super().__init__(f"quotient has torsion; invariant factors {self.invariant_factors}")


# finite models

class InvalidMonoidTable(QSpaceError, ValueError):
    pass


class NotCentral(QSpaceError, ValueError):
    def __init__(self, witness):
        self.witness = witness
        super().__init__(f"submonoid is not central: {witness}")


class NotSubmonoid(QSpaceError, ValueError):
    pass


class NotScalableSubmonoid(QSpaceError, ValueError):
    pass


class RingMismatch(QSpaceError, ValueError):
    pass


class NotACongruence(QSpaceError, ValueError):
    pass


# expression language

class ParseError(QSpaceError, ValueError):
    def __init__(self, message: str, line: int, column: int, expected=()):
        self.line = line
        self.column = column
        self.expected = tuple(sorted(set(expected)))
        exp = f"; expected one of {', '.join(self.expected)}" if self.expected else ""
        super().__init__(f"{line}:{column}: {message}{exp}")


class DimensionMismatch(IncommensurableAddition):
    def __init__(self, left, right, span=None, op: str = "+"):
        self.span = span
        where = f" at {span[0]}:{span[1]}" if span else ""
        super().__init__(left, right, f"dimension mismatch{where}: {tuple(left)} vs {tuple(right)} ({op})")


class UnknownName(QSpaceError, KeyError):
    def __init__(self, name: str, span=None):
        self.name = name
        self.span = span
        where = f" at {span[0]}:{span[1]}" if span else ""
        super().__init__(f"unknown name {name!r}{where}")

    def __str__(self):
        return Exception.__str__(self)
