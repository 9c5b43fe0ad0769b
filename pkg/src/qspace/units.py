"""Named unit quantities, coherent units, change of basis and conversion."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from types import MappingProxyType
from typing import Iterable, Mapping, Sequence

from .core import Quantity, QuantitySpace, laurent_form
from .dimensions import DimVector, IntMatrix, determinant, solve_unimodular
from .errors import (
    DuplicateName,
    EmptyName,
    IncommensurableConversion,
    NotUnimodular,
    RankMismatch,
    SpaceMismatch,
    UnknownUnit,
    WrongCount,
    ZeroUnit,
)


def define_space(names: Iterable[str]) -> QuantitySpace:
    return QuantitySpace(tuple(names))


def coherent_unit(space: QuantitySpace, d) -> Quantity:
    """The measure-1 unit ``prod(b_i ** d_i)`` of dimension ``d``."""
    d = d if isinstance(d, DimVector) else DimVector(tuple(d))
    if d.rank != space.rank:
        raise RankMismatch(f"{d.rank} exponents for a rank-{space.rank} space")
    return Quantity(space, Fraction(1), d)


@dataclass(frozen=True)
class UnitRegistry:
    """A basis plus named non-zero unit quantities, all fully expanded.

    Registries never change; :meth:`register` returns a new one.
    """

    space: QuantitySpace
    units: Mapping[str, Quantity] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "units", MappingProxyType(dict(self.units)))

    @classmethod
    def from_basis(cls, names: Iterable[str]) -> UnitRegistry:
        return cls(define_space(names))

    def register(self, name: str, q: Quantity) -> UnitRegistry:
        return register_unit(self, name, q)

    def resolve(self, name: str) -> Quantity:
        if name in self.units:
            return self.units[name]
        if name in self.space.basis:
            return self.space.base(name)
        raise UnknownUnit(f"unknown unit {name!r}")

    def __contains__(self, name: str) -> bool:
        return name in self.units or name in self.space.basis

    def names(self) -> list[str]:
        return list(self.space.basis) + [n for n in self.units if n not in self.space.basis]


def register_unit(reg: UnitRegistry, name: str, q: Quantity) -> UnitRegistry:
    if not isinstance(name, str) or not name.strip():
        raise EmptyName("unit names must be nonempty")
    if q.space != reg.space:
        raise SpaceMismatch(f"unit {name!r} lives in {q.space!r}, registry uses {reg.space!r}")
    if q.is_zero:
        raise ZeroUnit(f"{name} = {laurent_form(q)} is a zero quantity and cannot be a unit")
    if name in reg:
        if reg.resolve(name) == q:
            return reg
        raise DuplicateName(f"{name!r} is already defined as {laurent_form(reg.resolve(name))}")
    units = dict(reg.units)
    units[name] = q
    return UnitRegistry(reg.space, units)


def convert(x: Quantity, u: Quantity) -> Fraction:
    """The unique ``r`` with ``x == r * u``."""
    x._same_space(u)
    if u.is_zero:
        raise ZeroUnit(f"cannot measure in the zero quantity {laurent_form(u)}")
    if x.dims != u.dims:
        raise IncommensurableConversion(x.dims.exponents, u.dims.exponents)
    return x.measure / u.measure


@dataclass(frozen=True)
class BasisChange:
    """Move quantities from ``source`` to a new basis ``target``.

    New basis element ``j`` is ``scalars[j] * prod(old_i ** matrix[j][i])``.
    """

    source: QuantitySpace
    target: QuantitySpace
    matrix: tuple[tuple[int, ...], ...]
    scalars: tuple[Fraction, ...]

    def __post_init__(self):
        n = self.source.rank
        if self.target.rank != n or len(self.matrix) != n or len(self.scalars) != n:
            raise WrongCount(f"basis change needs {n} new basis elements")
        if any(s == 0 for s in self.scalars):
            raise ZeroUnit("new basis elements must be non-zero")
        det = determinant(self.matrix)
        if det not in (1, -1):
            raise NotUnimodular(det)
        object.__setattr__(self, "_transposed", [list(col) for col in zip(*self.matrix)] if n else [])

    @property
    def det(self) -> int:
        return determinant(self.matrix)

    def rebase(self, x: Quantity) -> Quantity:
        if x.space != self.source:
            raise SpaceMismatch(f"{x.space!r} is not the source space {self.source!r}")
        # old exponents k = A^T k'
        new = solve_unimodular(self._transposed, x.dims.exponents) if self.source.rank else []
        value = x.measure
        for mu, k in zip(self.scalars, new):
            value /= mu ** k
        return Quantity(self.target, value, DimVector(tuple(new)))

    def inverse(self) -> BasisChange:
        images = [self.rebase(b) for b in self.source.base_quantities()]
        return BasisChange(
            self.target,
            self.source,
            tuple(q.dims.exponents for q in images),
            tuple(q.measure for q in images),
        )

    def new_basis(self) -> list[Quantity]:
        """The new basis elements expressed in the source space."""
        return [Quantity(self.source, mu, DimVector(tuple(row))) for mu, row in zip(self.scalars, self.matrix)]


def change_basis(space: QuantitySpace, new_defs: Sequence[tuple[str, Quantity]]) -> BasisChange:
    """Basis change to the named quantities in ``new_defs`` (one per old basis element)."""
    if len(new_defs) != space.rank:
        raise WrongCount(f"a rank-{space.rank} space needs {space.rank} basis elements, got {len(new_defs)}")
    for name, q in new_defs:
        if q.space != space:
            raise SpaceMismatch(f"{name!r} is not in {space!r}")
        if q.is_zero:
            raise ZeroUnit(f"{name} = {laurent_form(q)} is zero")
    matrix: IntMatrix = [list(q.dims.exponents) for _, q in new_defs]
    det = determinant(matrix)
    if det not in (1, -1):
        raise NotUnimodular(det)
    target = QuantitySpace(tuple(name for name, _ in new_defs))
    return BasisChange(space, target, tuple(map(tuple, matrix)), tuple(q.measure for _, q in new_defs))


def rebase(change: BasisChange, x: Quantity) -> Quantity:
    return change.rebase(x)
