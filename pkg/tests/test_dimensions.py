import random

import pytest
import sympy
from hypothesis import given, settings, strategies as st
from sympy.matrices.normalforms import invariant_factors as sympy_invariant_factors

from qspace.dimensions import (
    DimVector,
    determinant,
    hermite_rows,
    integer_nullspace,
    invariant_factors,
    lattice_quotient,
    matmul,
    rational_solve,
    scaled_inverse,
    smith_decomposition,
    solve_unimodular,
    unimodular_complete,
)
from qspace.errors import ExponentOverflow, NotIndependent, NotSaturated, RankMismatch

vectors3 = st.tuples(*[st.integers(-20, 20)] * 3).map(DimVector)
small_matrices = st.integers(1, 4).flatmap(
    lambda m: st.integers(1, 4).flatmap(
        lambda n: st.lists(st.lists(st.integers(-6, 6), min_size=n, max_size=n), min_size=m, max_size=m)
    )
)


@given(vectors3, vectors3, vectors3)
def test_group_laws(a, b, c):
    e = DimVector.identity(3)
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert a * e == a
    assert (a * a.inverse()).is_identity()
    assert a / b == a * b.inverse()
    assert a ** 3 == a * a * a


def test_rank_mismatch():
    with pytest.raises(RankMismatch):
        DimVector((1, 0)) * DimVector((1, 0, 0))
    with pytest.raises(RankMismatch):
        DimVector((1,)).equals(DimVector((1, 0)))


def test_overflow_is_detected():
    big = DimVector((2**62,))
    with pytest.raises(ExponentOverflow):
        big * big
    with pytest.raises(ExponentOverflow):
        DimVector((2**63,))


def _check_smith(a):
    f = smith_decomposition(a)
    assert matmul(matmul(f.U, a), f.V) == f.S
    assert abs(determinant(f.U)) == 1
    assert abs(determinant(f.V)) == 1
    n = len(f.V)
    assert matmul(f.V, f.V_inv) == [[int(i == j) for j in range(n)] for i in range(n)]
    d = f.diagonal
    for i, row in enumerate(f.S):
        for j, v in enumerate(row):
            if i != j:
                assert v == 0
    nz = [x for x in d if x]
    assert all(x > 0 for x in nz)
    assert all(nz[i + 1] % nz[i] == 0 for i in range(len(nz) - 1))
    assert d[: len(nz)] == nz
    return f


@settings(max_examples=300)
@given(small_matrices)
def test_smith_properties(a):
    _check_smith(a)


@settings(max_examples=300)
@given(small_matrices)
def test_invariant_factors_match_sympy(a):
    ours = [x for x in smith_decomposition(a).diagonal if x]
    theirs = [abs(int(x)) for x in sympy_invariant_factors(sympy.Matrix(a), domain=sympy.ZZ) if x]
    assert ours == theirs
    assert invariant_factors(a) == [x for x in theirs if x > 1]


def test_smith_examples():
    assert smith_decomposition([[1, -1, 0], [2, -1, 1]]).diagonal == [1, 1]
    assert smith_decomposition([[2, 4], [6, 8]]).diagonal == [2, 4]
    with pytest.raises(ValueError):
        smith_decomposition([])


@settings(max_examples=200)
@given(st.integers(1, 4).flatmap(lambda n: st.lists(st.lists(st.integers(-5, 5), min_size=n, max_size=n), min_size=n, max_size=n)))
def test_scaled_inverse(a):
    p, t = scaled_inverse(a)
    n = len(a)
    assert abs(p) == abs(determinant(a))
    assert matmul(a, t) == [[p * int(i == j) for j in range(n)] for i in range(n)]


def test_determinant_matches_sympy():
    rng = random.Random(7)
    for _ in range(200):
        n = rng.randint(1, 5)
        a = [[rng.randint(-9, 9) for _ in range(n)] for _ in range(n)]
        assert determinant(a) == sympy.Matrix(a).det()


def test_solve_unimodular_and_rational_solve():
    a = [[2, 1], [1, 1]]
    assert solve_unimodular(a, [3, 2]) == [1, 1]
    assert rational_solve([[2, 0], [0, 4]], [1, 1]) == [sympy.Rational(1, 2), sympy.Rational(1, 4)]
    assert rational_solve([[1, 1], [1, 1]], [1, 2]) is None


def test_unimodular_complete():
    rows = unimodular_complete([(1, -1, 0)], 3)
    assert rows == [[1, -1, 0], [0, 1, 0], [0, 0, 1]]
    with pytest.raises(NotSaturated) as exc:
        unimodular_complete([(2, -2, 0)], 3)
    assert exc.value.invariant_factors == [2] or list(exc.value.invariant_factors) == [2]
    with pytest.raises(NotIndependent):
        unimodular_complete([(1, 0, 0), (2, 0, 0)], 3)


@settings(max_examples=200)
@given(st.lists(st.tuples(*[st.integers(-4, 4)] * 4), min_size=1, max_size=3))
def test_unimodular_complete_random(vectors):
    f = lattice_quotient(vectors, 4)
    r = 4 - f.free_rank
    if r != len(vectors) or f.has_torsion:
        with pytest.raises((NotIndependent, NotSaturated)):
            unimodular_complete(vectors, 4)
        return
    rows = unimodular_complete(vectors, 4)
    assert abs(determinant(rows)) == 1
    assert rows[: len(vectors)] == [list(v) for v in vectors]


def test_lattice_quotient():
    q = lattice_quotient([(2, -2, 0)], 3)
    assert q.free_rank == 2 and q.invariant_factors == (2,)
    assert q.project((2, -2, 0))[-1] == 0
    assert q.project((1, -1, 0)) != q.project((0, 0, 0))
    free = lattice_quotient([(1, -1, 0)], 3)
    assert free.free_rank == 2 and not free.has_torsion
    assert free.project((1, -1, 0)) == (0, 0)


@settings(max_examples=200)
@given(st.lists(st.tuples(*[st.integers(-4, 4)] * 3), min_size=1, max_size=3), st.tuples(*[st.integers(-5, 5)] * 3))
def test_lattice_projection_kills_generators(gens, v):
    q = lattice_quotient(gens, 3)
    shifted = tuple(a + b for a, b in zip(v, gens[0]))
    assert q.project(shifted) == q.project(v)
    assert q.project(gens[0]) == q.project((0, 0, 0))


def test_nullspace_examples():
    # columns: length, acceleration, time, mass over (m, s, kg)
    a = [[1, 1, 0, 0], [0, -2, 1, 0], [0, 0, 0, 1]]
    assert integer_nullspace(a, 4) == [[1, -1, -2, 0]]
    assert integer_nullspace([[1, 1, 0], [-1, 0, 1]], 3) == [[1, -1, 1]]
    assert integer_nullspace([[0, 0]], 2) == [[1, 0], [0, 1]]


@settings(max_examples=200)
@given(st.lists(st.lists(st.integers(-3, 3), min_size=4, max_size=4), min_size=1, max_size=3))
def test_nullspace_against_sympy(a):
    basis = integer_nullspace(a, 4)
    for e in basis:
        assert all(sum(x * y for x, y in zip(row, e)) == 0 for row in a)
    assert len(basis) == 4 - sympy.Matrix(a).rank()
    if basis:
        # Hermite rows: the lattice is saturated so the gcd of maximal minors is 1
        assert sympy_invariant_factors(sympy.Matrix(basis), domain=sympy.ZZ)[-1] in (1, -1)


def test_hermite_rows():
    assert hermite_rows([[2, 4], [1, 3]]) == [[1, 1], [0, 2]]
    assert hermite_rows([[0, 0]]) == []
