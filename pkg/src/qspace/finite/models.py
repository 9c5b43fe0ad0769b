"""Finite scalable monoids as explicit Cayley and scaling tables.

Scalars are the residues of ``Z_n``; elements are indices ``0..size-1``.
``scale[lam][x]`` is ``lam . x`` and ``mul[x][y]`` is ``xy``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Hashable, Sequence

from ..errors import (
    InvalidMonoidTable,
    NotACongruence,
    NotCentral,
    NotScalableSubmonoid,
    NotSubmonoid,
    RingMismatch,
)

Table = tuple[tuple[int, ...], ...]


def _freeze(rows: Sequence[Sequence[int]]) -> Table:
    return tuple(tuple(int(v) for v in row) for row in rows)


def _check_monoid(mul: Table, identity: int) -> None:
    m = len(mul)
    if m == 0:
        raise InvalidMonoidTable("a monoid needs at least one element")
    if any(len(row) != m for row in mul):
        raise InvalidMonoidTable("multiplication table must be square")
    if any(not 0 <= v < m for row in mul for v in row):
        raise InvalidMonoidTable("table entry out of range")
    if not 0 <= identity < m:
        raise InvalidMonoidTable(f"identity {identity} out of range")
    for x in range(m):
        if mul[identity][x] != x or mul[x][identity] != x:
            raise InvalidMonoidTable(f"{identity} is not an identity: fails at {x}")
    for x, y, z in product(range(m), repeat=3):
        if mul[mul[x][y]][z] != mul[x][mul[y][z]]:
            raise InvalidMonoidTable(f"not associative at ({x}, {y}, {z})")


@dataclass(frozen=True)
class FiniteMonoid:
    mul: Table
    identity: int = 0
    labels: tuple[Hashable, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "mul", _freeze(self.mul))
        _check_monoid(self.mul, self.identity)
        if not self.labels:
            object.__setattr__(self, "labels", tuple(str(i) for i in range(self.size)))
        elif len(self.labels) != self.size:
            raise InvalidMonoidTable("one label per element required")

    @property
    def size(self) -> int:
        return len(self.mul)

    @classmethod
    def cyclic(cls, k: int) -> FiniteMonoid:
        """The cyclic group ``C_k = {1, x, ..., x^(k-1)}``."""
        if k < 1:
            raise InvalidMonoidTable("C_k needs k >= 1")
        labels = tuple("1" if i == 0 else ("x" if i == 1 else f"x^{i}") for i in range(k))
        return cls(tuple(tuple((i + j) % k for j in range(k)) for i in range(k)), 0, labels)


@dataclass(frozen=True)
class FiniteScalableMonoid:
    """A finite monoid with a scaling action of ``Z_modulus``.

    Construction validates the monoid and the table shapes only; the scaling
    axioms are checked by :func:`qspace.finite.checks.check_axioms` so that
    deliberately broken tables can still be built.
    """

    mul: Table
    identity: int
    modulus: int
    scale: Table
    labels: tuple[Hashable, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "mul", _freeze(self.mul))
        object.__setattr__(self, "scale", _freeze(self.scale))
        _check_monoid(self.mul, self.identity)
        if self.modulus < 1:
            raise InvalidMonoidTable("ring modulus must be positive")
        if len(self.scale) != self.modulus or any(len(row) != self.size for row in self.scale):
            raise InvalidMonoidTable("scale table must be modulus x size")
        if any(not 0 <= v < self.size for row in self.scale for v in row):
            raise InvalidMonoidTable("scale entry out of range")
        if not self.labels:
            object.__setattr__(self, "labels", tuple(str(i) for i in range(self.size)))
        elif len(self.labels) != self.size:
            raise InvalidMonoidTable("one label per element required")

    @property
    def size(self) -> int:
        return len(self.mul)

    @property
    def elements(self) -> range:
        return range(self.size)

    @property
    def scalars(self) -> range:
        return range(self.modulus)

    def orbit(self, x: int) -> frozenset[int]:
        return frozenset(self.scale[a][x] for a in self.scalars)

    @property
    def is_trivially_scalable(self) -> bool:
        return all(self.scale[a][x] == x for a in self.scalars for x in self.elements)

    def index(self, label: Hashable) -> int:
        return self.labels.index(label)


def build_ring_monoid(n: int, monoid: FiniteMonoid) -> FiniteScalableMonoid:
    """``Z_n [x] M`` with ``<a,x><b,y> = <ab,xy>`` and ``l.<a,x> = <la,x>``.

    Element ``<a, m>`` has index ``a * |M| + m``.
    """
    if n < 2:
        raise InvalidMonoidTable("ring modulus must be at least 2")
    k = monoid.size

    def idx(a: int, m: int) -> int:
        return (a % n) * k + m

    pairs = [(a, m) for a in range(n) for m in range(k)]
    mul = [[idx(a * b, monoid.mul[x][y]) for (b, y) in pairs] for (a, x) in pairs]
    scale = [[idx(lam * a, x) for (a, x) in pairs] for lam in range(n)]
    labels = tuple(f"<{a},{monoid.labels[m]}>" for a, m in pairs)
    return FiniteScalableMonoid(mul, idx(1, monoid.identity), n, scale, labels)


def ring_monoid(n: int, k: int) -> FiniteScalableMonoid:
    """Shorthand for ``Z_n [x] C_k``."""
    return build_ring_monoid(n, FiniteMonoid.cyclic(k))


def trivially_scalable(monoid: FiniteMonoid, n: int) -> FiniteScalableMonoid:
    scale = [list(range(monoid.size)) for _ in range(n)]
    return FiniteScalableMonoid(monoid.mul, monoid.identity, n, scale, monoid.labels)


def corrupt_scale_entry(x: FiniteScalableMonoid, lam: int | None = None, elem: int | None = None,
                        value: int | None = None) -> FiniteScalableMonoid:
    """Copy of ``x`` with one scaling entry changed.

    Defaults: scalar ``n-1``, the last element, and the next element index.
    """
    lam = x.modulus - 1 if lam is None else lam
    elem = x.size - 1 if elem is None else elem
    old = x.scale[lam][elem]
    value = (old + 1) % x.size if value is None else value
    if value == old:
        raise ValueError("corruption must change the entry")
    scale = [list(row) for row in x.scale]
    scale[lam][elem] = value
    return FiniteScalableMonoid(x.mul, x.identity, x.modulus, scale, x.labels)


# -- congruences and quotients --------------------------------------------

@dataclass(frozen=True)
class Tilde:
    """The orbit-class relation: ``x ~ y`` iff ``a.x = b.y`` for some scalars."""


@dataclass(frozen=True)
class Submonoid:
    """``x ~_S y`` iff ``mx = ny`` for some ``m, n`` in ``S``; ``S`` central."""

    elements: frozenset[int]

    def __post_init__(self):
        object.__setattr__(self, "elements", frozenset(self.elements))


@dataclass(frozen=True)
class ScalableSubmonoid(Submonoid):
    """As :class:`Submonoid`, and ``S`` is closed under scaling."""


@dataclass(frozen=True)
class Quotient:
    quotient: FiniteScalableMonoid
    surjection: tuple[int, ...]
    classes: tuple[tuple[int, ...], ...]


class UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, a: int) -> int:
        while self.parent[a] != a:
            self.parent[a] = self.parent[self.parent[a]]
            a = self.parent[a]
        return a

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)

    def groups(self) -> list[tuple[int, ...]]:
        out: dict[int, list[int]] = {}
        for a in range(len(self.parent)):
            out.setdefault(self.find(a), []).append(a)
        return sorted(tuple(g) for g in out.values())


def related_tilde(x: FiniteScalableMonoid, a: int, b: int) -> bool:
    return not x.orbit(a).isdisjoint(x.orbit(b))


def check_submonoid(x: FiniteScalableMonoid, kind: Submonoid) -> None:
    s = kind.elements
    if not s or any(not 0 <= e < x.size for e in s):
        raise NotSubmonoid("submonoid elements out of range")
    if x.identity not in s:
        raise NotSubmonoid("submonoid must contain the identity")
    for m, n in product(s, repeat=2):
        if x.mul[m][n] not in s:
            raise NotSubmonoid(f"not closed: {x.labels[m]} {x.labels[n]} leaves the set")
    for m in s:
        for y in x.elements:
            if x.mul[m][y] != x.mul[y][m]:
                raise NotCentral((x.labels[m], x.labels[y]))
    if isinstance(kind, ScalableSubmonoid):
        for lam, m in product(x.scalars, s):
            if x.scale[lam][m] not in s:
                raise NotScalableSubmonoid(f"{lam}.{x.labels[m]} leaves the set")


def relation_matrix(x: FiniteScalableMonoid, kind) -> list[list[bool]]:
    if isinstance(kind, Tilde):
        orbits = [x.orbit(e) for e in x.elements]
        return [[not orbits[a].isdisjoint(orbits[b]) for b in x.elements] for a in x.elements]
    if isinstance(kind, Submonoid):
        check_submonoid(x, kind)
        cosets = [frozenset(x.mul[m][e] for m in kind.elements) for e in x.elements]
        return [[not cosets[a].isdisjoint(cosets[b]) for b in x.elements] for a in x.elements]
    raise TypeError(f"unknown relation kind {kind!r}")


def classes_of(rel: list[list[bool]]) -> tuple[tuple[int, ...], ...]:
    """Equivalence classes of ``rel``; raises NotACongruence if it is not an equivalence."""
    n = len(rel)
    for a in range(n):
        if not rel[a][a]:
            raise NotACongruence(f"not reflexive at {a}")
        for b in range(n):
            if rel[a][b] != rel[b][a]:
                raise NotACongruence(f"not symmetric at ({a}, {b})")
    for a, b, c in product(range(n), repeat=3):
        if rel[a][b] and rel[b][c] and not rel[a][c]:
            raise NotACongruence(f"not transitive at ({a}, {b}, {c})")
    seen: dict[int, int] = {}
    classes: list[list[int]] = []
    for a in range(n):
        if a in seen:
            continue
        members = [b for b in range(n) if rel[a][b]]
        for b in members:
            seen[b] = len(classes)
        classes.append(members)
    return tuple(tuple(c) for c in classes)


def quotient_by_classes(x: FiniteScalableMonoid, classes: Sequence[Sequence[int]]) -> Quotient:
    """Quotient tables for a partition; verifies it is a congruence and the map a homomorphism."""
    phi = [0] * x.size
    for i, c in enumerate(classes):
        for e in c:
            phi[e] = i
    k = len(classes)
    mul: list[list[int | None]] = [[None] * k for _ in range(k)]
    for a, b in product(x.elements, repeat=2):
        ca, cb, cab = phi[a], phi[b], phi[x.mul[a][b]]
        if mul[ca][cb] is None:
            mul[ca][cb] = cab
        elif mul[ca][cb] != cab:
            raise NotACongruence(f"product not well defined at ({x.labels[a]}, {x.labels[b]})")
    scale: list[list[int | None]] = [[None] * k for _ in x.scalars]
    for lam, a in product(x.scalars, x.elements):
        c = phi[x.scale[lam][a]]
        if scale[lam][phi[a]] is None:
            scale[lam][phi[a]] = c
        elif scale[lam][phi[a]] != c:
            raise NotACongruence(f"scaling not well defined at ({lam}, {x.labels[a]})")
    labels = tuple(tuple(c) for c in classes)
    q = FiniteScalableMonoid(mul, phi[x.identity], x.modulus, scale, labels)
    # surjective homomorphism
    assert set(phi) == set(range(k))
    assert phi[x.identity] == q.identity
    for a, b in product(x.elements, repeat=2):
        assert phi[x.mul[a][b]] == q.mul[phi[a]][phi[b]]
    for lam, a in product(x.scalars, x.elements):
        assert phi[x.scale[lam][a]] == q.scale[lam][phi[a]]
    return Quotient(q, tuple(phi), tuple(tuple(c) for c in classes))


def congruence_quotient(x: FiniteScalableMonoid, kind=Tilde()) -> Quotient:
    """``X/~``, ``X/S`` or ``X/S`` for a scalable ``S``, built by definition."""
    classes = classes_of(relation_matrix(x, kind))
    result = quotient_by_classes(x, classes)
    if isinstance(kind, (Tilde, ScalableSubmonoid)) and not result.quotient.is_trivially_scalable:
        raise NotACongruence("quotient by a scalable relation should be trivially scalable")
    return result


# -- products ---------------------------------------------------------------

def direct_product(x: FiniteScalableMonoid, y: FiniteScalableMonoid) -> FiniteScalableMonoid:
    """``X [x] Y``: componentwise product and scaling; ``(i, j)`` has index ``i*|Y| + j``."""
    if x.modulus != y.modulus:
        raise RingMismatch(f"Z_{x.modulus} vs Z_{y.modulus}")
    ny = y.size
    pairs = [(i, j) for i in x.elements for j in y.elements]
    mul = [[x.mul[a][c] * ny + y.mul[b][d] for (c, d) in pairs] for (a, b) in pairs]
    scale = [[x.scale[lam][a] * ny + y.scale[lam][b] for (a, b) in pairs] for lam in x.scalars]
    labels = tuple((x.labels[a], y.labels[b]) for a, b in pairs)
    return FiniteScalableMonoid(mul, x.identity * ny + y.identity, x.modulus, scale, labels)


@dataclass(frozen=True)
class TensorProduct:
    """``X (x) Y`` together with the class index of every pair."""

    monoid: FiniteScalableMonoid
    class_of: tuple[tuple[int, ...], ...]  # class_of[x][y]
    left: FiniteScalableMonoid = field(repr=False)
    right: FiniteScalableMonoid = field(repr=False)

    def __call__(self, a: int, b: int) -> int:
        return self.class_of[a][b]


def tensor_relation(x: FiniteScalableMonoid, y: FiniteScalableMonoid) -> dict[tuple[int, int], set[tuple[int, int]]]:
    """Direct witnesses: ``(x1,y1) ~ (x2,y2)`` iff ``(a.x1, b.y1) = (b.x2, a.y2)``."""
    index: dict[tuple, list[tuple[int, int]]] = {}
    pairs = [(a, b) for a in x.elements for b in y.elements]
    scalars = list(product(x.scalars, repeat=2))
    for q in pairs:
        for al, be in scalars:
            index.setdefault((al, be, x.scale[be][q[0]], y.scale[al][q[1]]), []).append(q)
    related: dict[tuple[int, int], set[tuple[int, int]]] = {}
    for p in pairs:
        hits: set[tuple[int, int]] = set()
        for al, be in scalars:
            hits.update(index.get((al, be, x.scale[al][p[0]], y.scale[be][p[1]]), ()))
        related[p] = hits
    return related


def tensor_product(x: FiniteScalableMonoid, y: FiniteScalableMonoid) -> TensorProduct:
    if x.modulus != y.modulus:
        raise RingMismatch(f"Z_{x.modulus} vs Z_{y.modulus}")
    ny = y.size
    related = tensor_relation(x, y)
    uf = UnionFind(x.size * ny)
    for (a, b), hits in related.items():
        for c, d in hits:
            uf.union(a * ny + b, c * ny + d)
    groups = uf.groups()
    # closure must add nothing: the direct relation is already transitive
    for g in groups:
        members = {(e // ny, e % ny) for e in g}
        for p in members:
            if related[p] != members:
                raise NotACongruence(f"tensor relation not transitive at {p}")
    classes = [[(e // ny, e % ny) for e in g] for g in groups]
    class_of = [[0] * ny for _ in x.elements]
    for i, c in enumerate(classes):
        for a, b in c:
            class_of[a][b] = i
    k = len(classes)
    mul: list[list[int | None]] = [[None] * k for _ in range(k)]
    for i, ci in enumerate(classes):
        for j, cj in enumerate(classes):
            for (a1, b1), (a2, b2) in product(ci, cj):
                r = class_of[x.mul[a1][a2]][y.mul[b1][b2]]
                if mul[i][j] is None:
                    mul[i][j] = r
                elif mul[i][j] != r:
                    raise NotACongruence(f"tensor product not well defined at classes ({i}, {j})")
    scale: list[list[int | None]] = [[None] * k for _ in x.scalars]
    for lam in x.scalars:
        for i, ci in enumerate(classes):
            for a, b in ci:
                r = class_of[x.scale[lam][a]][b]
                if scale[lam][i] is None:
                    scale[lam][i] = r
                elif scale[lam][i] != r:
                    raise NotACongruence(f"tensor scaling not well defined at ({lam}, class {i})")
    labels = tuple(tuple(sorted(c)) for c in classes)
    m = FiniteScalableMonoid(mul, class_of[x.identity][y.identity], x.modulus, scale, labels)
    return TensorProduct(m, tuple(map(tuple, class_of)), x, y)
