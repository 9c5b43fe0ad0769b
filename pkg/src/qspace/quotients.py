"""Natural-unit quotients ("set c = 1") and Buckingham pi groups.

A quotient by a set of units first changes basis so that every chosen unit
becomes a basis element, then forgets those coordinates. The numeric value
of each chosen unit is absorbed by the basis change, so every chosen unit
projects to exactly ``1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .core import Quantity, QuantitySpace
from .dimensions import DimVector, LatticeQuotient, integer_nullspace, lattice_quotient, unimodular_complete
from .errors import NotIndependent, RankMismatch, SpaceMismatch, TorsionQuotient
from .units import BasisChange, UnitRegistry, change_basis, coherent_unit


@dataclass(frozen=True)
class QuotientSpace:
    parent: QuantitySpace
    set_units: tuple[tuple[str, Quantity], ...]
    completion: BasisChange
    quotient_space: QuantitySpace
    diagnostics: LatticeQuotient
    # quotient basis name -> the parent quantity it stands for
    basis_definitions: tuple[tuple[str, Quantity], ...] = ()

    @property
    def rank(self) -> int:
        return self.quotient_space.rank

    def project(self, x: Quantity) -> Quantity:
        if x.space != self.parent:
            raise SpaceMismatch(f"{x.space!r} is not the parent space {self.parent!r}")
        r = len(self.set_units)
        y = self.completion.rebase(x)
        return Quantity(self.quotient_space, y.measure, DimVector(y.dims.exponents[r:]))

    def lift(self, q: Quantity) -> Quantity:
        """A parent quantity projecting to ``q`` (set-unit exponents zero)."""
        if q.space != self.quotient_space:
            raise SpaceMismatch(f"{q.space!r} is not the quotient space")
        r = len(self.set_units)
        y = Quantity(self.completion.target, q.measure, DimVector((0,) * r + q.dims.exponents))
        return self.completion.inverse().rebase(y)


def _basis_name(row: Sequence[int], parent: QuantitySpace, taken: set[str]) -> str:
    if sorted(row) == [0] * (len(row) - 1) + [1]:
        return parent.basis[list(row).index(1)]
    i = 1
    while f"q{i}" in taken:
        i += 1
    return f"q{i}"


def build_quotient(reg: UnitRegistry, set_to_one: Sequence[str]) -> QuotientSpace:
    space = reg.space
    chosen = [(name, reg.resolve(name)) for name in set_to_one]
    vectors = [q.dims for _, q in chosen]
    diagnostics = lattice_quotient(vectors, space.rank)
    if diagnostics.free_rank + len(chosen) != space.rank:
        raise NotIndependent(
            f"units {', '.join(set_to_one)} have dependent dimensions; cannot set them all to 1"
        )
    if diagnostics.has_torsion:
        raise TorsionQuotient(diagnostics.invariant_factors)

    rows = unimodular_complete(vectors, space.rank)
    taken = set(space.basis) | {name for name, _ in chosen} | set(reg.units)
    defs = list(chosen)
    kept = []
    for row in rows[len(chosen):]:
        name = _basis_name(row, space, taken)
        taken.add(name)
        q = coherent_unit(space, row)
        defs.append((name, q))
        kept.append((name, q))
    completion = change_basis(space, defs)
    return QuotientSpace(
        parent=space,
        set_units=tuple(chosen),
        completion=completion,
        quotient_space=QuantitySpace(tuple(name for name, _ in kept)),
        diagnostics=diagnostics,
        basis_definitions=tuple(kept),
    )


def project(qs: QuotientSpace, x: Quantity) -> Quantity:
    return qs.project(x)


def pi_groups(variables: Sequence[tuple[str, DimVector]]) -> list[tuple[int, ...]]:
    """Integer exponent tuples e with ``prod(var_i ** e_i)`` dimensionless.

    The tuples form a basis of all such products, in Hermite form (so the
    first nonzero entry of each is positive).
    """
    if not variables:
        return []
    dims = [d if isinstance(d, DimVector) else DimVector(tuple(d)) for _, d in variables]
    n = dims[0].rank
    if any(d.rank != n for d in dims):
        raise RankMismatch("all variables must have dimensions over the same basis")
    m = len(dims)
    matrix = [[d[i] for d in dims] for i in range(n)]
    groups = [tuple(row) for row in integer_nullspace(matrix, m)]
    for e in groups:
        assert pi_dimension(dims, e).is_identity()
    return groups


def pi_dimension(dims: Sequence[DimVector], exponents: Sequence[int]) -> DimVector:
    total = DimVector.identity(dims[0].rank if dims else 0)
    for d, e in zip(dims, exponents):
        total = total * d ** e
    return total


def format_pi_group(names: Sequence[str], exponents: Sequence[int]) -> str:
    parts = []
    for name, e in zip(names, exponents):
        if e == 1:
            parts.append(name)
        elif e:
            parts.append(f"{name}^{e}")
    return " ".join(parts) or "1"
