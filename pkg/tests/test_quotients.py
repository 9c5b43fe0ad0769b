from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from qspace import DimVector, UnitRegistry, build_quotient, format_pi_group, pi_groups
from qspace.errors import NotIndependent, RankMismatch, TorsionQuotient, UnknownUnit
from qspace.quotients import pi_dimension

C = 299792458
HBAR = Fraction(1054571817, 10**43)


def si_registry():
    reg = UnitRegistry.from_basis(["m", "s", "kg"])
    m, s, kg = reg.space.base_quantities()
    reg = reg.register("c", C * m / s)
    reg = reg.register("hbar", HBAR * kg * m**2 / s)
    reg = reg.register("J", kg * m**2 / s**2)
    return reg


def test_quotient_by_c():
    reg = si_registry()
    qs = build_quotient(reg, ["c"])
    assert qs.rank == 2
    assert qs.quotient_space.basis == ("s", "kg")
    assert qs.project(reg.resolve("c")) == qs.quotient_space.one()
    assert qs.project(2 * reg.resolve("c")) == 2 * qs.quotient_space.one()
    kg = qs.quotient_space.base("kg")
    assert qs.project(reg.resolve("J")) == Fraction(1, C**2) * kg
    m, s, kgp = reg.space.base_quantities()
    assert qs.project(kgp * reg.resolve("c") ** 2) == kg


def test_quotient_by_c_and_hbar():
    reg = si_registry()
    qs = build_quotient(reg, ["c", "hbar"])
    assert qs.rank == 1
    assert qs.quotient_space.basis == ("kg",)
    one = qs.quotient_space.one()
    assert qs.project(reg.resolve("c")) == one
    assert qs.project(reg.resolve("hbar")) == one


def test_quotient_errors():
    reg = UnitRegistry.from_basis(["m", "s", "kg"])
    m, s, kg = reg.space.base_quantities()
    with pytest.raises(TorsionQuotient) as exc:
        build_quotient(reg.register("w", m**2 / s**2), ["w"])
    assert list(exc.value.invariant_factors) == [2]
    with pytest.raises(NotIndependent):
        build_quotient(reg.register("v", m / s).register("v2", 3 * m**2 / s**2), ["v", "v2"])
    with pytest.raises(UnknownUnit):
        build_quotient(reg, ["nope"])


@given(st.tuples(*[st.integers(-4, 4)] * 3), st.integers(1, 50))
def test_project_lift_section(d, a):
    reg = si_registry()
    qs = build_quotient(reg, ["c"])
    x = reg.space.quantity(a, d)
    y = qs.project(x)
    assert qs.project(qs.lift(y)) == y
    assert qs.project(x * reg.resolve("c")) == y


def test_pi_groups_pendulum():
    variables = [("l", DimVector((1, 0, 0))), ("g", DimVector((1, -2, 0))), ("t", DimVector((0, 1, 0))),
                 ("mass", DimVector((0, 0, 1)))]
    groups = pi_groups(variables)
    assert groups == [(1, -1, -2, 0)]
    assert pi_dimension([d for _, d in variables], groups[0]).is_identity()
    assert format_pi_group([n for n, _ in variables], groups[0]) == "l g^-1 t^-2"


def test_pi_groups_velocity():
    groups = pi_groups([("v", DimVector((1, -1))), ("l", DimVector((1, 0))), ("t", DimVector((0, 1)))])
    assert groups == [(1, -1, 1)]
    assert pi_groups([]) == []
    with pytest.raises(RankMismatch):
        pi_groups([("a", DimVector((1,))), ("b", DimVector((1, 0)))])
