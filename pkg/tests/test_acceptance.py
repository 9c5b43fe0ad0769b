"""Acceptance criteria, one test each; the summary prints a PASS/FAIL line per criterion."""

import random
import time
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

import pytest
import sympy
from sympy.matrices.normalforms import invariant_factors as sympy_invariant_factors

from qspace import (
    BasisChange,
    DimVector,
    QuantitySpace,
    UnitRegistry,
    build_quotient,
    convert,
    evaluate,
    laurent_form,
    parse,
    pi_groups,
)
from qspace.errors import DimensionMismatch, NotInvertible, TorsionQuotient
from qspace.evaluate import Evaluator
from qspace.finite import (
    ScalableSubmonoid,
    Submonoid,
    Tilde,
    check_axioms,
    congruence_quotient,
    corrupt_scale_entry,
    orbit_facts,
    orbit_module_check,
    orbit_partition,
    ring_monoid,
    tensor_associativity,
    tensor_balance,
    tensor_product,
)
from qspace.quotients import pi_dimension
from qspace.syntax import parse_expression

SEED = 20240601


def random_rational(rng, nonzero=False):
    while True:
        q = Fraction(rng.randint(-10**6, 10**6), rng.randint(1, 10**4))
        if q or not nonzero:
            return q


def random_quantity(rng, space, nonzero=False, bound=6):
    dims = tuple(rng.randint(-bound, bound) for _ in range(space.rank))
    return space.quantity(random_rational(rng, nonzero), dims)


def random_space(rng, max_rank=5):
    r = rng.randint(0, max_rank)
    return QuantitySpace(tuple(f"b{i}" for i in range(r)))


@pytest.mark.criterion("axiom suite: scaling axioms, lemma, commutativity, non-zero closure")
def test_axiom_suite():
    rng = random.Random(SEED)
    start = time.perf_counter()
    cases = 1000
    failures = {law: 0 for law in ("one", "compose", "mixed", "lemma", "commutative", "nonzero")}
    for _ in range(cases):
        space = random_space(rng)
        x, y = random_quantity(rng, space), random_quantity(rng, space)
        a, b = random_rational(rng), random_rational(rng)
        failures["one"] += 1 * x != x
        failures["compose"] += a * (b * x) != (a * b) * x
        failures["mixed"] += not (a * (x * y) == (a * x) * y == x * (a * y))
        failures["lemma"] += (a * x) * (b * y) != (a * b) * (x * y)
        failures["commutative"] += x * y != y * x
        u, v = random_quantity(rng, space, nonzero=True), random_quantity(rng, space, nonzero=True)
        failures["nonzero"] += (u * v).is_zero or (u * u**-1 != space.one())
    elapsed = time.perf_counter() - start
    print(f"axiom suite: {cases} cases per law, failures={failures}, {elapsed:.2f}s")
    assert not any(failures.values())
    assert elapsed < 10


@pytest.mark.criterion("measure laws")
def test_measure_laws():
    rng = random.Random(SEED + 1)
    bad = 0
    for _ in range(1000):
        space = random_space(rng)
        x, y = random_quantity(rng, space, nonzero=True), random_quantity(rng, space)
        lam = random_rational(rng)
        same = space.quantity(random_rational(rng), x.dims)
        bad += space.one().measure != 1
        bad += (x * y).measure != x.measure * y.measure
        bad += (x**-1).measure != 1 / x.measure
        bad += (lam * x).measure != lam * x.measure
        bad += x.measure + same.measure != (x + same).measure
    assert bad == 0


def _results(text):
    return [r.text for r in evaluate(parse(text))]


@pytest.mark.criterion("worked examples")
def test_worked_examples():
    assert _results("basis cm g s\nassert 100 cm + 50 cm == 150 cm\ncheck 100 cm + 50 cm\n") == ["PASS", "OK 150 cm"]
    assert _results("basis cm g s\nassert (1 cm)(2 g) == 2 cm g\n") == ["PASS"]
    assert _results("basis foot\nunit yard = 3 foot\nassert 4 foot * 2 yard == 24 foot^2\n"
                    "convert 4 foot * 2 yard -> foot^2\n") == ["PASS", "24"]
    assert _results("basis mile min\nunit hour = 60 min\nassert 9/2 mile/hour * 40 min == 3 mile\n") == ["PASS"]
    assert _results("basis statC cm s\nunit g = statC^2 cm^-3 s^2\nassert statC^2 == cm^3 g / s^2\n") == ["PASS"]


# -- homogeneity fuzz -----------------------------------------------------------

REF_UNITS = {
    # name: (measure, exponents over m, s, kg)
    "m": (Fraction(1), (1, 0, 0)),
    "s": (Fraction(1), (0, 1, 0)),
    "kg": (Fraction(1), (0, 0, 1)),
    "cm": (Fraction(1, 100), (1, 0, 0)),
    "min": (Fraction(60), (0, 1, 0)),
    "N": (Fraction(1), (1, -2, 1)),
    "J": (Fraction(1), (2, -2, 1)),
    "g": (Fraction(1, 1000), (0, 0, 1)),
}


class Mismatch(Exception):
    def __init__(self, left, right):
        self.left, self.right = left, right


class ZeroDiv(Exception):
    pass


@dataclass
class Gen:
    """Random expression tree; rendered to text and typed by the reference checker."""

    kind: str
    a: object = None
    b: object = None


def gen(rng, depth):
    if depth == 0 or rng.random() < 0.25:
        if rng.random() < 0.7:
            return Gen("name", rng.choice(sorted(REF_UNITS)))
        num = Fraction(rng.randint(1, 9), rng.choice([1, 1, 2, 3, 4]))
        return Gen("num", num)
    k = rng.choice(["mul", "mul", "div", "pow", "add", "sub"])
    if k == "pow":
        return Gen("pow", gen(rng, depth - 1), rng.choice([-2, -1, 2, 3]))
    left = gen(rng, depth - 1)
    if k in ("add", "sub") and rng.random() < 0.6:
        right = Gen("mul", Gen("num", Fraction(rng.randint(1, 5))), left)
    else:
        right = gen(rng, depth - 1)
    return Gen(k, left, right)


def render(g):
    if g.kind == "name":
        return g.a
    if g.kind == "num":
        q = g.a
        return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"
    if g.kind == "pow":
        base = render(g.a) if g.a.kind == "name" else f"({render(g.a)})"
        return f"{base}^{g.b}"
    left, right = render(g.a), render(g.b)
    if g.kind in ("mul", "div"):
        if g.a.kind in ("add", "sub"):
            left = f"({left})"
        if g.b.kind in ("add", "sub", "mul", "div"):
            right = f"({right})"
        if g.kind == "div":
            return f"{left} / {right}"
        # alternate juxtaposition and explicit '*' deterministically
        return f"{left} {right}" if len(left) % 2 else f"{left} * {right}"
    if g.b.kind in ("add", "sub"):
        right = f"({right})"
    return f"{left} {'+' if g.kind == 'add' else '-'} {right}"


def reference(g):
    """(measure, exponents) computed with plain tuples; raises Mismatch or ZeroDiv."""
    if g.kind == "name":
        return REF_UNITS[g.a]
    if g.kind == "num":
        return g.a, (0, 0, 0)
    if g.kind == "pow":
        mu, d = reference(g.a)
        if g.b < 0 and mu == 0:
            raise ZeroDiv
        return mu ** g.b, tuple(e * g.b for e in d)
    (m1, d1), (m2, d2) = reference(g.a), reference(g.b)
    if g.kind == "mul":
        return m1 * m2, tuple(a + b for a, b in zip(d1, d2))
    if g.kind == "div":
        if m2 == 0:
            raise ZeroDiv
        return m1 / m2, tuple(a - b for a, b in zip(d1, d2))
    if d1 != d2:
        raise Mismatch(d1, d2)
    return (m1 + m2 if g.kind == "add" else m1 - m2), d1


def _registry():
    reg = UnitRegistry.from_basis(["m", "s", "kg"])
    for name, (mu, d) in REF_UNITS.items():
        if name not in ("m", "s", "kg"):
            reg = reg.register(name, reg.space.quantity(mu, d))
    return reg


@pytest.mark.criterion("homogeneity fuzz against reference checker")
def test_homogeneity_fuzz():
    rng = random.Random(SEED + 2)
    ev = Evaluator(_registry())
    false_accept = false_reject = wrong_value = 0
    counts = {"ok": 0, "mismatch": 0, "zero": 0, "assert": 0}
    for i in range(10_000):
        is_assert = i % 5 == 0
        trees = [gen(rng, 4)] + ([gen(rng, 3)] if is_assert else [])
        if is_assert and rng.random() < 0.5:
            trees[1] = Gen("mul", Gen("num", Fraction(rng.randint(1, 3))), trees[0])
        try:
            refs = [reference(t) for t in trees]
            expected = "ok"
            if is_assert and refs[0][1] != refs[1][1]:
                expected = "mismatch"
                mismatch = (refs[0][1], refs[1][1])
        except Mismatch as exc:
            expected, mismatch = "mismatch", (exc.left, exc.right)
        except ZeroDiv:
            expected = "zero"
        texts = [render(t) for t in trees]
        counts["assert" if is_assert else expected] += 1
        if is_assert:
            stmt = parse(f"assert {texts[0]} == {texts[1]}", require_basis=False)[0]
            got = ev.run([stmt])[0]
            err = got.error
            if isinstance(err, DimensionMismatch):
                false_reject += expected != "mismatch"
                wrong_value += (tuple(err.left), tuple(err.right)) != mismatch
            elif isinstance(err, NotInvertible):
                wrong_value += expected != "zero"
            else:
                false_accept += expected == "mismatch"
                if expected == "ok":
                    same = refs[0] == refs[1]
                    wrong_value += (got.text == "PASS") != same
            continue
        try:
            q = ev.eval(parse_expression(texts[0]))
        except DimensionMismatch as err:
            false_reject += expected != "mismatch"
            if expected == "mismatch":
                wrong_value += (tuple(err.left), tuple(err.right)) != mismatch
            continue
        except NotInvertible:
            wrong_value += expected != "zero"
            continue
        false_accept += expected == "mismatch"
        if expected == "ok":
            wrong_value += (q.measure, q.dims.exponents) != refs[0]
    print(f"homogeneity fuzz: {counts}, false accepts={false_accept}, false rejects={false_reject}, "
          f"wrong values={wrong_value}")
    assert counts["mismatch"] > 500 and counts["ok"] > 500
    assert false_accept == false_reject == wrong_value == 0


# -- basis change ---------------------------------------------------------------

def random_unimodular(rng, n):
    while True:
        a = [[rng.randint(-3, 3) for _ in range(n)] for _ in range(n)]
        if abs(sympy.Matrix(a).det()) == 1:
            return a


@pytest.mark.criterion("basis change: 100 random unimodular changes")
def test_basis_change():
    rng = random.Random(SEED + 3)
    failures = 0
    for trial in range(100):
        n = rng.randint(1, 4)
        src = QuantitySpace(tuple(f"b{i}" for i in range(n)))
        dst = QuantitySpace(tuple(f"c{i}" for i in range(n)))
        a = random_unimodular(rng, n)
        mus = tuple(random_rational(rng, nonzero=True) for _ in range(n))
        change = BasisChange(src, dst, tuple(map(tuple, a)), mus)
        inverse = change.inverse()
        failures += change.rebase(src.one()) != dst.one()
        for _ in range(10):
            x, y = random_quantity(rng, src), random_quantity(rng, src)
            lam = random_rational(rng)
            failures += change.rebase(x * y) != change.rebase(x) * change.rebase(y)
            failures += change.rebase(lam * x) != lam * change.rebase(x)
            failures += inverse.rebase(change.rebase(x)) != x
            z = src.quantity(random_rational(rng), (0,) * n)
            failures += change.rebase(z).measure != z.measure
            w = src.quantity(random_rational(rng, nonzero=True), x.dims)
            failures += convert(change.rebase(x), change.rebase(w)) != convert(x, w)
    assert failures == 0


# -- natural units --------------------------------------------------------------

def _si():
    reg = UnitRegistry.from_basis(["m", "s", "kg"])
    m, s, kg = reg.space.base_quantities()
    reg = reg.register("c", 299792458 * m / s)
    reg = reg.register("hbar", Fraction(1054571817, 10**43) * kg * m**2 / s)
    return reg.register("w", m**2 / s**2)


def _oracle(vectors, n):
    mat = sympy.Matrix(vectors)
    factors = [abs(int(f)) for f in sympy_invariant_factors(mat, domain=sympy.ZZ) if f]
    return n - mat.rank(), [f for f in factors if f > 1]


@pytest.mark.criterion("natural units quotients")
def test_natural_units():
    reg = _si()
    qc = build_quotient(reg, ["c"])
    assert qc.rank == 2 == _oracle([reg.resolve("c").dims.exponents], 3)[0]
    assert qc.project(reg.resolve("c")) == qc.quotient_space.one()
    qch = build_quotient(reg, ["c", "hbar"])
    vectors = [reg.resolve(u).dims.exponents for u in ("c", "hbar")]
    assert qch.rank == 1 == _oracle(vectors, 3)[0]
    assert qch.project(reg.resolve("c")) == qch.quotient_space.one()
    assert qch.project(reg.resolve("hbar")) == qch.quotient_space.one()
    with pytest.raises(TorsionQuotient) as exc:
        build_quotient(reg, ["w"])
    assert list(exc.value.invariant_factors) == [2] == _oracle([(2, -2, 0)], 3)[1]


# -- finite models ----------------------------------------------------------------

def _brute_classes(x):
    rel = {(a, b) for a, b in product(x.elements, repeat=2)
           if any(x.scale[al][a] == x.scale[be][b] for al, be in product(x.scalars, repeat=2))}
    classes = {frozenset(b for b in x.elements if (a, b) in rel) for a in x.elements}
    return sorted(tuple(sorted(c)) for c in classes)


@pytest.mark.criterion("finite-model oracle")
def test_finite_models():
    start = time.perf_counter()
    lines = []
    for n, k in product((2, 3, 4), (1, 2, 3)):
        x = ring_monoid(n, k)
        assert check_axioms(x).ok
        part = orbit_partition(x)
        assert sorted(part.classes) == _brute_classes(x)
        assert orbit_facts(x, part).ok
        tilde = congruence_quotient(x, Tilde())
        ones = congruence_quotient(x, ScalableSubmonoid(x.orbit(x.identity)))
        ident = congruence_quotient(x, Submonoid({x.identity}))
        assert ones.classes == tilde.classes
        for q in (tilde, ones, ident):
            assert sorted(set(q.surjection)) == list(q.quotient.elements)
            assert check_axioms(q.quotient).ok
        assert orbit_module_check(x).ok
        bad = check_axioms(corrupt_scale_entry(x))
        assert len(bad.violations) >= 1
        lines.append(f"Z{n}[x]C{k}: classes={len(part.classes)} control violations={len(bad.violations)}")
    small = [ring_monoid(n, k) for n, k in product((2, 3, 4), (1, 2)) if n * k <= 4]
    for a, b in product(small, repeat=2):
        if a.modulus != b.modulus:
            continue
        t = tensor_product(a, b)
        assert tensor_balance(t).ok
        assert check_axioms(t.monoid).ok
    for a, b, c in product(small, repeat=3):
        if a.modulus == b.modulus == c.modulus:
            assert tensor_associativity(a, b, c).ok
    elapsed = time.perf_counter() - start
    print("\n".join(lines), f"\nfinite models: {elapsed:.2f}s")
    assert elapsed < 60


# -- Laurent round trip -----------------------------------------------------------

@pytest.mark.criterion("Laurent round trip")
def test_laurent_roundtrip():
    rng = random.Random(SEED + 4)
    for _ in range(1000):
        space = random_space(rng)
        x = random_quantity(rng, space)
        back = Evaluator(UnitRegistry(space)).eval(parse_expression(laurent_form(x)))
        assert back == x, laurent_form(x)


# -- Buckingham pi ------------------------------------------------------------------

@pytest.mark.criterion("Buckingham pi groups")
def test_buckingham_pi():
    pendulum = [("l", (1, 0, 0)), ("g", (1, -2, 0)), ("t", (0, 1, 0)), ("mass", (0, 0, 1))]
    dims = [DimVector(d) for _, d in pendulum]
    groups = pi_groups([(name, DimVector(d)) for name, d in pendulum])
    assert len(groups) == 1
    assert pi_dimension(dims, groups[0]).is_identity()
    vlt = [("v", DimVector((1, -1))), ("l", DimVector((1, 0))), ("t", DimVector((0, 1)))]
    groups = pi_groups(vlt)
    assert groups in ([(1, -1, 1)], [(-1, 1, -1)])
    assert all(pi_dimension([d for _, d in vlt], g).is_identity() for g in groups)
