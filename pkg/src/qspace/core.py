"""Quantities as Laurent monomials over exact rationals.

Every quantity is stored in its unique expansion ``measure * prod(b_i ** k_i)``
relative to the space's basis, so multiplication multiplies measures and
adds exponents, and commensurability is equality of exponent tuples.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .dimensions import DimVector, checked
from .errors import (
    DuplicateName,
    EmptyName,
    Incomparable,
    IncommensurableAddition,
    NotInvertible,
    RankMismatch,
    SpaceMismatch,
)
from .scalars import format_rational


@dataclass(frozen=True)
class QuantitySpace:
    """A quantity space with an ordered basis of named base quantities.

    Two spaces are the same space exactly when their symbol lists match.
    """

    basis: tuple[str, ...] = ()

    def __post_init__(self):
        names = tuple(self.basis)
        seen = set()
        for name in names:
            if not isinstance(name, str) or not name.strip():
                raise EmptyName("basis symbols must be nonempty strings")
            if name in seen:
                raise DuplicateName(f"basis symbol {name!r} appears twice")
            seen.add(name)
        object.__setattr__(self, "basis", names)

    @property
    def rank(self) -> int:
        return len(self.basis)

    @property
    def space_id(self) -> tuple[str, ...]:
        return self.basis

    def quantity(self, measure=1, dims: Sequence[int] | DimVector | None = None) -> Quantity:
        if dims is None:
            dims = (0,) * self.rank
        return Quantity(self, Fraction(measure), dims if isinstance(dims, DimVector) else DimVector(tuple(dims)))

    def one(self) -> Quantity:
        return self.quantity(1)

    def zero(self, dims=None) -> Quantity:
        return self.quantity(0, dims)

    def base(self, name_or_index) -> Quantity:
        """The basis element ``1 * b_i``."""
        i = self.basis.index(name_or_index) if isinstance(name_or_index, str) else name_or_index
        return Quantity(self, Fraction(1), DimVector.unit(self.rank, i))

    def base_quantities(self) -> list[Quantity]:
        return [self.base(i) for i in range(self.rank)]

    def __repr__(self) -> str:
        return f"QuantitySpace({' '.join(self.basis) or '<dimensionless>'})"


@dataclass(frozen=True)
class Quantity:
    """``measure * prod(basis[i] ** dims[i])`` in ``space``.

    Equality is structural: same space, same measure, same exponents. Zero
    quantities of different dimensions are therefore different.
    """

    space: QuantitySpace
    measure: Fraction
    dims: DimVector

    def __post_init__(self):
        if not isinstance(self.measure, Fraction):
            object.__setattr__(self, "measure", Fraction(self.measure))
        if not isinstance(self.dims, DimVector):
            object.__setattr__(self, "dims", DimVector(tuple(self.dims)))
        if self.dims.rank != self.space.rank:
            raise RankMismatch(f"{self.dims.rank} exponents for a rank-{self.space.rank} space")

    @property
    def is_zero(self) -> bool:
        return self.measure == 0

    def _same_space(self, other: Quantity) -> None:
        if not isinstance(other, Quantity):
            raise TypeError(f"expected Quantity, got {type(other).__name__}")
        if self.space != other.space:
            raise SpaceMismatch(f"{self.space!r} vs {other.space!r}")

    # arithmetic delegates to the module-level operations below
    def __mul__(self, other):
        if isinstance(other, Quantity):
            return qmul(self, other)
        if isinstance(other, (int, Fraction)):
            return scale(other, self)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return scale(other, self)
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, Quantity):
            return qmul(self, qpow(other, -1))
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise NotInvertible("division by zero scalar")
            return scale(1 / Fraction(other), self)
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return scale(other, qpow(self, -1))
        return NotImplemented

    def __pow__(self, k: int) -> Quantity:
        return qpow(self, k)

    def __add__(self, other: Quantity) -> Quantity:
        return qadd(self, other)

    def __sub__(self, other: Quantity) -> Quantity:
        return qsub(self, other)

    def __neg__(self) -> Quantity:
        return qneg(self)

    def __lt__(self, other: Quantity) -> bool:
        return compare(self, other) < 0

    def __le__(self, other: Quantity) -> bool:
        return compare(self, other) <= 0

    def __gt__(self, other: Quantity) -> bool:
        return compare(self, other) > 0

    def __ge__(self, other: Quantity) -> bool:
        return compare(self, other) >= 0

    def __str__(self) -> str:
        return laurent_form(self)

    def __repr__(self) -> str:
        return f"Quantity({laurent_form(self)!r})"


def scale(factor, x: Quantity) -> Quantity:
    return Quantity(x.space, Fraction(factor) * x.measure, x.dims)


def one(space: QuantitySpace) -> Quantity:
    return space.one()


def qmul(x: Quantity, y: Quantity) -> Quantity:
    x._same_space(y)
    return Quantity(x.space, x.measure * y.measure, x.dims * y.dims)


def qpow(x: Quantity, k: int) -> Quantity:
    if not isinstance(k, int) or isinstance(k, bool):
        raise TypeError("quantities only take integer powers")
    if k == 0:
        return x.space.one()
    if k < 0 and x.measure == 0:
        raise NotInvertible(f"zero quantity {laurent_form(x)} has no inverse")
    checked(k)
    return Quantity(x.space, x.measure ** k, x.dims ** k)


def qinv(x: Quantity) -> Quantity:
    return qpow(x, -1)


def dimension(x: Quantity) -> DimVector:
    return x.dims


def commensurable(x: Quantity, y: Quantity) -> bool:
    x._same_space(y)
    return x.dims == y.dims


def qadd(x: Quantity, y: Quantity) -> Quantity:
    x._same_space(y)
    if x.dims != y.dims:
        raise IncommensurableAddition(x.dims.exponents, y.dims.exponents)
    # x = a*u and y = b*u for the coherent unit u of the shared dimension
    return Quantity(x.space, x.measure + y.measure, x.dims)


def qneg(x: Quantity) -> Quantity:
    return scale(-1, x)


def qsub(x: Quantity, y: Quantity) -> Quantity:
    x._same_space(y)
    if x.dims != y.dims:
        raise IncommensurableAddition(x.dims.exponents, y.dims.exponents, f"cannot subtract {y.dims.exponents} from {x.dims.exponents}")
    return qadd(x, qneg(y))


def compare(x: Quantity, y: Quantity) -> int:
    """-1, 0 or 1 for commensurable quantities.

    The coherent unit of every dimension is taken as positive, so the order
    reduces to the order of measures.
    """
    x._same_space(y)
    if x.dims != y.dims:
        raise Incomparable(x.dims.exponents, y.dims.exponents)
    diff = y.measure - x.measure
    return (diff < 0) - (diff > 0)


def measure(x: Quantity) -> Fraction:
    return x.measure


def laurent_form(x: Quantity) -> str:
    """Canonical text: measure, then basis symbols in basis order.

    >>> s = QuantitySpace(("m", "s"))
    >>> laurent_form(s.quantity(Fraction(3, 2), (1, -2)))
    '3/2 m s^-2'
    """
    parts = [format_rational(x.measure)]
    for name, k in zip(x.space.basis, x.dims.exponents):
        if k == 1:
            parts.append(name)
        elif k:
            parts.append(f"{name}^{k}")
    return " ".join(parts)
