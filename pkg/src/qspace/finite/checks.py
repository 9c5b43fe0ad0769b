"""Exhaustive checks over finite scalable monoids.

Every check returns a :class:`Report`. Its text form is one line per
property, ``<id>: PASS``, or one ``<id>: FAIL <witness>`` line per
violated instance.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Any

from .models import FiniteScalableMonoid, TensorProduct, UnionFind, tensor_product

MAX_UNIT_SETS = 4096


@dataclass(frozen=True)
class Violation:
    prop: str
    witness: tuple


@dataclass
class Report:
    checked: list[str] = field(default_factory=list)
    violations: list[Violation] = field(default_factory=list)
    info: dict[str, Any] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.violations

    def declare(self, prop: str) -> None:
        if prop not in self.checked:
            self.checked.append(prop)

    def fail(self, prop: str, *witness) -> None:
        self.declare(prop)
        self.violations.append(Violation(prop, tuple(witness)))

    def expect(self, prop: str, cond: bool, *witness) -> None:
        self.declare(prop)
        if not cond:
            self.violations.append(Violation(prop, tuple(witness)))

    def failed(self, prop: str) -> list[Violation]:
        return [v for v in self.violations if v.prop == prop]

    def merge(self, other: Report, prefix: str = "") -> None:
        for p in other.checked:
            self.declare(prefix + p)
        for v in other.violations:
            self.violations.append(Violation(prefix + v.prop, v.witness))

    def lines(self) -> list[str]:
        out = []
        for prop in self.checked:
            bad = self.failed(prop)
            if not bad:
                out.append(f"{prop}: PASS")
            out.extend(f"{prop}: FAIL {' '.join(map(str, v.witness))}" for v in bad)
        return out

    def __str__(self) -> str:
        return "\n".join(self.lines())

    def to_dict(self) -> dict:
        return {
            "ok": self.ok,
            "properties": [
                {"id": p, "status": "FAIL" if self.failed(p) else "PASS",
                 "witnesses": [list(v.witness) for v in self.failed(p)]}
                for p in self.checked
            ],
        }


def check_axioms(x: FiniteScalableMonoid) -> Report:
    """Every violated instance of the scaling axioms and the scaling lemma.

    ``axiom1``: ``1.x = x``; ``axiom2``: ``a.(b.x) = ab.x``;
    ``axiom3``: ``a.xy = (a.x)y = x(a.y)``; ``lemma1``: ``(a.x)(b.y) = ab.xy``.
    """
    r = Report()
    n, mul, sc, lab = x.modulus, x.mul, x.scale, x.labels
    for p in ("axiom1", "axiom2", "axiom3", "lemma1"):
        r.declare(p)
    one = 1 % n
    for e in x.elements:
        if sc[one][e] != e:
            r.fail("axiom1", f"1.{lab[e]}={lab[sc[one][e]]}")
    for a, b in product(x.scalars, repeat=2):
        ab = a * b % n
        for e in x.elements:
            if sc[a][sc[b][e]] != sc[ab][e]:
                r.fail("axiom2", f"a={a}", f"b={b}", f"x={lab[e]}")
    for a in x.scalars:
        for e, f in product(x.elements, repeat=2):
            lhs = sc[a][mul[e][f]]
            if not lhs == mul[sc[a][e]][f] == mul[e][sc[a][f]]:
                r.fail("axiom3", f"a={a}", f"x={lab[e]}", f"y={lab[f]}")
    for a, b in product(x.scalars, repeat=2):
        ab = a * b % n
        for e, f in product(x.elements, repeat=2):
            if mul[sc[a][e]][sc[b][f]] != sc[ab][mul[e][f]]:
                r.fail("lemma1", f"a={a}", f"b={b}", f"x={lab[e]}", f"y={lab[f]}")
    return r


# -- orbit classes ----------------------------------------------------------

@dataclass(frozen=True)
class OrbitPartition:
    classes: tuple[tuple[int, ...], ...]
    zeros: tuple[int, ...]  # zeros[i] is the zero element of classes[i]
    class_of: tuple[int, ...]
    approx_pairs: frozenset[tuple[int, int]]  # x ~~ y, stored with x <= y

    def approx(self, a: int, b: int) -> bool:
        return (min(a, b), max(a, b)) in self.approx_pairs


def commensurable(x: FiniteScalableMonoid, a: int, b: int) -> bool:
    """``a ~ b``: some ``al.a == be.b``, by direct search over scalar pairs."""
    return any(x.scale[al][a] == x.scale[be][b] for al, be in product(x.scalars, repeat=2))


def orbit_partition(x: FiniteScalableMonoid) -> OrbitPartition:
    rel = [[commensurable(x, a, b) for b in x.elements] for a in x.elements]
    uf = UnionFind(x.size)
    for a, b in combinations(x.elements, 2):
        if rel[a][b]:
            uf.union(a, b)
    classes = tuple(uf.groups())
    class_of = [0] * x.size
    for i, c in enumerate(classes):
        for e in c:
            class_of[e] = i
    zeros = tuple(x.scale[0][c[0]] for c in classes)
    approx = set()
    for t in x.elements:
        orb = sorted(x.orbit(t))
        for a, b in combinations(orb, 2):
            approx.add((a, b))
    approx.update((e, e) for e in x.elements)
    return OrbitPartition(classes, zeros, tuple(class_of), frozenset(approx))


def orbit_facts(x: FiniteScalableMonoid, part: OrbitPartition | None = None) -> Report:
    """Structural facts about orbit classes and zeros."""
    part = part or orbit_partition(x)
    r = Report()
    for a, b in product(x.elements, repeat=2):
        r.expect("sim.equivalence", not (commensurable(x, a, b) and part.class_of[a] != part.class_of[b]), a, b)
    for i, c in enumerate(part.classes):
        zs = {x.scale[0][e] for e in c}
        r.expect("zero.unique", zs == {part.zeros[i]}, i, sorted(zs))
        r.expect("zero.in_class", part.class_of[part.zeros[i]] == i, i)
        for lam in x.scalars:
            r.expect("zero.absorbs_scaling", x.scale[lam][part.zeros[i]] == part.zeros[i], lam, i)
        union = set().union(*(x.orbit(t) for t in c))
        r.expect("orbit.union_is_class", union == set(c), i)
    for e in x.elements:
        r.expect("orbit.in_class", all(part.class_of[t] == part.class_of[e] for t in x.orbit(e)), e)
    for a, b in part.approx_pairs:
        r.expect("approx.implies_sim", part.class_of[a] == part.class_of[b], a, b)
    for a, b in product(x.elements, repeat=2):
        za = part.zeros[part.class_of[a]]
        zab = part.zeros[part.class_of[x.mul[a][b]]]
        r.expect("zero.product", x.mul[za][b] == zab, a, b)
    return r


def strict_approx_witness(x: FiniteScalableMonoid, part: OrbitPartition | None = None):
    """A pair with ``a ~ b`` but not ``a ~~ b``, or None."""
    part = part or orbit_partition(x)
    for a, b in combinations(x.elements, 2):
        if part.class_of[a] == part.class_of[b] and not part.approx(a, b):
            return a, b
    return None


# -- units and addition -----------------------------------------------------

@dataclass(frozen=True)
class ClassModule:
    members: tuple[int, ...]
    generating: tuple[int, ...]
    units: tuple[int, ...]
    # add[(a, b)] = a + b, using the first unit; empty without a unit
    add: dict = field(default_factory=dict, compare=False)


@dataclass(frozen=True)
class UnitSet:
    members: frozenset[int]
    dense: bool
    sparse: bool
    closed: bool


def _coords(x: FiniteScalableMonoid, u: int) -> dict[int, int]:
    return {x.scale[rho][u]: rho for rho in x.scalars}


def addition_table(x: FiniteScalableMonoid, u: int, members) -> dict[tuple[int, int], int]:
    """``a + b = (rho + sigma).u`` where ``a = rho.u`` and ``b = sigma.u``."""
    co = _coords(x, u)
    n = x.modulus
    return {(a, b): x.scale[(co[a] + co[b]) % n][u] for a in members for b in members}


def _module_laws(x: FiniteScalableMonoid, cls: ClassModule, r: Report, tag: str) -> None:
    add, mem, n = cls.add, cls.members, x.modulus
    zero = x.scale[0][mem[0]]
    for a, b in product(mem, repeat=2):
        r.expect(f"{tag}.commutative", add[a, b] == add[b, a], a, b)
    for a, b, c in product(mem, repeat=3):
        r.expect(f"{tag}.associative", add[add[a, b], c] == add[a, add[b, c]], a, b, c)
    for a in mem:
        r.expect(f"{tag}.zero", add[a, zero] == a, a)
        r.expect(f"{tag}.inverse", any(add[a, b] == zero for b in mem), a)
    for lam in x.scalars:
        for a, b in product(mem, repeat=2):
            r.expect(f"{tag}.scalar_distributes", x.scale[lam][add[a, b]] == add[x.scale[lam][a], x.scale[lam][b]], lam, a, b)
    for al, be in product(x.scalars, repeat=2):
        for a in mem:
            r.expect(f"{tag}.sum_distributes", x.scale[(al + be) % n][a] == add[x.scale[al][a], x.scale[be][a]], al, be, a)


def orbit_module_check(x: FiniteScalableMonoid) -> Report:
    """Units, addition and module laws per orbit class, and unit-set classification.

    ``info["classes"]`` holds a :class:`ClassModule` per class and
    ``info["unit_sets"]`` the classified candidate unit sets.
    """
    part = orbit_partition(x)
    r = Report()
    modules = []
    for i, c in enumerate(part.classes):
        members = set(c)
        generating = tuple(u for u in c if x.orbit(u) >= members)
        units = tuple(u for u in generating if len({x.scale[rho][u] for rho in x.scalars}) == x.modulus)
        add = addition_table(x, units[0], c) if units else {}
        cm = ClassModule(tuple(c), generating, units, add)
        modules.append(cm)
        if units:
            _module_laws(x, cm, r, "module")
            for u in units[1:]:
                r.expect("module.unit_independent", addition_table(x, u, c) == add, i, u)
    r.info["classes"] = modules
    r.info["partition"] = part

    candidates: list[frozenset[int]] = []
    with_units = [m.units for m in modules if m.units]
    count = 1
    for us in with_units:
        count *= len(us)
    if with_units and count <= MAX_UNIT_SETS:
        candidates.extend(frozenset(choice) for choice in product(*with_units))
    all_units = frozenset(u for m in modules for u in m.units)
    if all_units and all_units not in candidates:
        candidates.append(all_units)
    unit_sets = [classify_unit_set(x, part, s) for s in candidates]
    r.info["unit_sets"] = unit_sets

    good = [s for s in unit_sets if s.dense and s.closed]
    r.info["additive"] = bool(good)
    if good:
        r.declare("additive.distributive")
        _distributivity(x, part, modules, r)
    return r


def classify_unit_set(x: FiniteScalableMonoid, part: OrbitPartition, s: frozenset[int]) -> UnitSet:
    dense = {part.class_of[u] for u in s} == set(range(len(part.classes)))
    sparse = len({part.class_of[u] for u in s}) == len(s)
    closed = all(x.mul[u][v] in s for u, v in product(s, repeat=2))
    return UnitSet(s, dense, sparse, closed)


def _distributivity(x: FiniteScalableMonoid, part: OrbitPartition, modules, r: Report) -> None:
    def plus(a: int, b: int) -> int:
        return modules[part.class_of[a]].add[a, b]

    for cls in modules:
        for y, z in product(cls.members, repeat=2):
            yz = plus(y, z)
            for e in x.elements:
                r.expect("additive.distributive", x.mul[e][yz] == plus(x.mul[e][y], x.mul[e][z]), e, y, z)
                r.expect("additive.distributive", x.mul[yz][e] == plus(x.mul[y][e], x.mul[z][e]), e, y, z)


# -- products -----------------------------------------------------------------

def tensor_balance(t: TensorProduct) -> Report:
    """``(l.x) (x) y`` and ``x (x) (l.y)`` name the same class."""
    r = Report()
    x, y = t.left, t.right
    for lam in x.scalars:
        for a, b in product(x.elements, y.elements):
            r.expect("tensor.balance", t(x.scale[lam][a], b) == t(a, y.scale[lam][b]), lam, a, b)
    return r


def tensor_associativity(x: FiniteScalableMonoid, y: FiniteScalableMonoid, z: FiniteScalableMonoid) -> Report:
    """``(x(x)y)(x)z -> x(x)(y(x)z)`` is a well-defined bijective homomorphism."""
    r = Report()
    xy = tensor_product(x, y)
    left = tensor_product(xy.monoid, z)
    yz = tensor_product(y, z)
    right = tensor_product(x, yz.monoid)
    phi: dict[int, int] = {}
    for a, b, c in product(x.elements, y.elements, z.elements):
        src = left(xy(a, b), c)
        dst = right(a, yz(b, c))
        if src in phi:
            r.expect("assoc.well_defined", phi[src] == dst, a, b, c)
        else:
            phi[src] = dst
    L, R = left.monoid, right.monoid
    r.expect("assoc.total", set(phi) == set(L.elements), sorted(set(L.elements) - set(phi)))
    r.expect("assoc.bijective", sorted(phi.values()) == list(R.elements), L.size, R.size)
    if r.ok:
        r.expect("assoc.identity", phi[L.identity] == R.identity)
        for p, q in product(L.elements, repeat=2):
            r.expect("assoc.multiplicative", phi[L.mul[p][q]] == R.mul[phi[p]][phi[q]], p, q)
        for lam in L.scalars:
            for p in L.elements:
                r.expect("assoc.scaling", phi[L.scale[lam][p]] == R.scale[lam][phi[p]], lam, p)
    r.info["sizes"] = (L.size, R.size)
    return r
