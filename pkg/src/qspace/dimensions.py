"""Dimension vectors and the integer-lattice toolkit behind them.

A dimension is an element of the free abelian group Z^n, written
multiplicatively: the product of two dimensions adds their exponents.
Matrices here are plain ``list[list[int]]`` in row-major order.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

from .errors import ExponentOverflow, NotIndependent, NotSaturated, RankMismatch

INT64_MIN = -(2**63)
INT64_MAX = 2**63 - 1

IntMatrix = list[list[int]]


def checked(value: int) -> int:
    if not INT64_MIN <= value <= INT64_MAX:
        raise ExponentOverflow(f"{value} does not fit in a signed 64-bit exponent")
    return value


@dataclass(frozen=True)
class DimVector:
    """Integer exponent tuple; an element of the dimension group."""

    exponents: tuple[int, ...]

    def __post_init__(self):
        exps = tuple(self.exponents)
        for e in exps:
            if not isinstance(e, int) or isinstance(e, bool):
                raise TypeError(f"exponents must be integers, got {e!r}")
            checked(e)
        object.__setattr__(self, "exponents", exps)

    @classmethod
    def identity(cls, n: int) -> DimVector:
        return cls((0,) * n)

    @classmethod
    def unit(cls, n: int, i: int) -> DimVector:
        return cls(tuple(1 if j == i else 0 for j in range(n)))

    @property
    def rank(self) -> int:
        return len(self.exponents)

    def _same_rank(self, other: DimVector) -> None:
        if len(self.exponents) != len(other.exponents):
            raise RankMismatch(f"rank {len(self.exponents)} vs rank {len(other.exponents)}")

    def __mul__(self, other: DimVector) -> DimVector:
        if not isinstance(other, DimVector):
            return NotImplemented
        self._same_rank(other)
        return DimVector(tuple(checked(a + b) for a, b in zip(self.exponents, other.exponents)))

    def __truediv__(self, other: DimVector) -> DimVector:
        if not isinstance(other, DimVector):
            return NotImplemented
        return self * other.inverse()

    def __pow__(self, k: int) -> DimVector:
        return DimVector(tuple(checked(a * k) for a in self.exponents))

    def inverse(self) -> DimVector:
        return DimVector(tuple(checked(-a) for a in self.exponents))

    def equals(self, other: DimVector) -> bool:
        """Equality that refuses to compare vectors of different rank."""
        self._same_rank(other)
        return self.exponents == other.exponents

    def is_identity(self) -> bool:
        return not any(self.exponents)

    def __iter__(self):
        return iter(self.exponents)

    def __len__(self) -> int:
        return len(self.exponents)

    def __getitem__(self, i):
        return self.exponents[i]

    def __repr__(self) -> str:
        return f"DimVector{self.exponents}"


def dim_group_op(a: DimVector, b: DimVector | None, op: str):
    if op == "mul":
        return a * b
    if op == "inv":
        return a.inverse()
    if op == "identity":
        return DimVector.identity(a.rank)
    if op == "eq":
        return a.equals(b)
    raise ValueError(f"unknown dimension op {op!r}")


# -- matrix helpers ---------------------------------------------------------

def identity_matrix(n: int) -> IntMatrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    if a and len(a[0]) != len(b):
        raise RankMismatch(f"cannot multiply {len(a)}x{len(a[0])} by {len(b)}x?")
    cols = len(b[0]) if b else 0
    return [[sum(row[k] * b[k][j] for k in range(len(b))) for j in range(cols)] for row in a]


def transpose(a: IntMatrix) -> IntMatrix:
    return [list(col) for col in zip(*a)]


def _rect(a: Sequence[Sequence[int]]) -> IntMatrix:
    rows = [list(map(int, r)) for r in a]
    if rows and any(len(r) != len(rows[0]) for r in rows):
        raise RankMismatch("matrix rows have different lengths")
    return rows


def determinant(a: Sequence[Sequence[int]]) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    m = _rect(a)
    n = len(m)
    if any(len(r) != n for r in m):
        raise RankMismatch("determinant of a non-square matrix")
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        pivot = m[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * pivot - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = pivot
    return sign * m[n - 1][n - 1]


def scaled_inverse(a: Sequence[Sequence[int]]) -> tuple[int, IntMatrix]:
    """Return ``(p, T)`` with ``a @ T == p * I``; ``p == 0`` when singular.

    Fraction-free Gauss-Jordan: every division is exact, and ``|p|`` equals
    ``|det a|``.
    """
    m = _rect(a)
    n = len(m)
    if any(len(r) != n for r in m):
        raise RankMismatch("inverse of a non-square matrix")
    aug = [row + [int(i == j) for j in range(n)] for i, row in enumerate(m)]
    prev = 1
    for k in range(n):
        if aug[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if aug[i][k] != 0), None)
            if swap is None:
                return 0, [[0] * n for _ in range(n)]
            aug[k], aug[swap] = aug[swap], aug[k]
        pivot = aug[k][k]
        row_k = aug[k]
        for i in range(n):
            if i == k:
                continue
            f = aug[i][k]
            aug[i] = [(pivot * x - f * y) // prev for x, y in zip(aug[i], row_k)]
        prev = pivot
    return prev, [row[n:] for row in aug]


def solve_unimodular(a: Sequence[Sequence[int]], b: Sequence[int]) -> list[int]:
    """Solve ``a @ x = b`` for a unimodular integer matrix ``a``."""
    p, t = scaled_inverse(a)
    if p not in (1, -1):
        raise ValueError(f"matrix is not unimodular (|det| {abs(p)})")
    return [p * sum(r * v for r, v in zip(row, b)) for row in t]


# -- Smith normal form ------------------------------------------------------

@dataclass(frozen=True)
class SmithForm:
    """``U @ A @ V == S`` with ``U``, ``V`` unimodular and ``S`` diagonal."""

    U: IntMatrix
    S: IntMatrix
    V: IntMatrix
    V_inv: IntMatrix

    @property
    def diagonal(self) -> list[int]:
        return [self.S[i][i] for i in range(min(len(self.S), len(self.S[0]) if self.S else 0))]

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d != 0)


def smith_decomposition(a: Sequence[Sequence[int]]) -> SmithForm:
    """Smith normal form with smallest-magnitude pivoting.

    Ties between equal-magnitude pivot candidates go to the lowest
    (row, column) index so the transforms are reproducible.
    """
    s = _rect(a)
    if not s or not s[0]:
        raise ValueError("Smith normal form of an empty matrix")
    for row in s:
        for x in row:
            checked(x)
    m, n = len(s), len(s[0])
    u = identity_matrix(m)
    v = identity_matrix(n)
    vi = identity_matrix(n)

    def swap_rows(i, j):
        if i != j:
            s[i], s[j] = s[j], s[i]
            u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        if i != j:
            for row in s:
                row[i], row[j] = row[j], row[i]
            for row in v:
                row[i], row[j] = row[j], row[i]
            vi[i], vi[j] = vi[j], vi[i]

    def add_row(dst, src, q):
        # row_dst += q * row_src
        s[dst] = [x + q * y for x, y in zip(s[dst], s[src])]
        u[dst] = [x + q * y for x, y in zip(u[dst], u[src])]

    def add_col(dst, src, q):
        # col_dst += q * col_src; V picks up the same op, V^-1 the inverse row op
        for row in s:
            row[dst] += q * row[src]
        for row in v:
            row[dst] += q * row[src]
        vi[src] = [x - q * y for x, y in zip(vi[src], vi[dst])]

    for t in range(min(m, n)):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                x = s[i][j]
                if x and (best is None or abs(x) < abs(s[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        while True:
            p = s[t][t]
            for i in range(t + 1, m):
                if s[i][t]:
                    add_row(i, t, -(s[i][t] // p))
            for j in range(t + 1, n):
                if s[t][j]:
                    add_col(j, t, -(s[t][j] // p))
            cand = None
            for i in range(t + 1, m):
                if s[i][t] and (cand is None or abs(s[i][t]) < abs(cand[2])):
                    cand = (i, t, s[i][t])
            for j in range(t + 1, n):
                if s[t][j] and (cand is None or abs(s[t][j]) < abs(cand[2])):
                    cand = (t, j, s[t][j])
            if cand is not None:
                swap_rows(t, cand[0])
                swap_cols(t, cand[1])
                continue
            bad = next(
                ((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if s[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if s[t][t] < 0:
            s[t] = [-x for x in s[t]]
            u[t] = [-x for x in u[t]]

    for mat in (u, s, v, vi):
        for row in mat:
            for x in row:
                checked(x)
    return SmithForm(U=u, S=s, V=v, V_inv=vi)


def smith_normal_form(a: Sequence[Sequence[int]]) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    f = smith_decomposition(a)
    return f.U, f.S, f.V


def invariant_factors(a: Sequence[Sequence[int]]) -> list[int]:
    """Nonzero Smith diagonal entries greater than 1."""
    return [d for d in smith_decomposition(a).diagonal if d > 1]


# -- lattices ---------------------------------------------------------------

def _as_rows(vectors: Iterable, n: int) -> IntMatrix:
    rows = []
    for vec in vectors:
        row = list(vec.exponents if isinstance(vec, DimVector) else vec)
        if len(row) != n:
            raise RankMismatch(f"vector of length {len(row)} in Z^{n}")
        rows.append([checked(int(x)) for x in row])
    return rows


def unimodular_complete(vectors: Sequence, n: int) -> IntMatrix:
    """Extend independent vectors to an n x n integer matrix with |det| = 1.

    The first rows are the inputs. Completions by standard basis vectors are
    preferred, dropping the lowest-indexed coordinates first; otherwise the
    remaining rows come from the Smith transform.
    """
    rows = _as_rows(vectors, n)
    r = len(rows)
    if r == 0:
        return identity_matrix(n)
    if r > n:
        raise NotIndependent(f"{r} vectors in Z^{n} cannot be independent")
    f = smith_decomposition(rows)
    if f.rank < r:
        raise NotIndependent(f"vectors span a rank-{f.rank} lattice, expected {r}")
    torsion = [d for d in f.diagonal if d > 1]
    if torsion:
        raise NotSaturated(torsion)

    choices = list(combinations(range(n), r))
    if len(choices) <= 512:
        for dropped in choices:
            kept = [k for k in range(n) if k not in dropped]
            candidate = rows + [[int(j == k) for j in range(n)] for k in kept]
            if abs(determinant(candidate)) == 1:
                return candidate
    completion = rows + [list(row) for row in f.V_inv[r:]]
    assert abs(determinant(completion)) == 1
    return completion


@dataclass(frozen=True)
class LatticeQuotient:
    """Z^n modulo the span of some generators.

    ``projection`` has one row per quotient coordinate: free coordinates
    first, then one per invariant factor (read modulo that factor).
    """

    ambient_rank: int
    free_rank: int
    invariant_factors: tuple[int, ...]
    projection: IntMatrix
    snf_diagonal: tuple[int, ...] = ()

    @property
    def has_torsion(self) -> bool:
        return bool(self.invariant_factors)

    def project(self, vector) -> tuple[int, ...]:
        x = list(vector)
        if len(x) != self.ambient_rank:
            raise RankMismatch(f"vector of length {len(x)} in Z^{self.ambient_rank}")
        coords = [sum(p * v for p, v in zip(row, x)) for row in self.projection]
        free = coords[: self.free_rank]
        tors = [c % d for c, d in zip(coords[self.free_rank:], self.invariant_factors)]
        return tuple(free + tors)


def lattice_quotient(generators: Sequence, n: int) -> LatticeQuotient:
    if n < 0:
        raise ValueError("rank must be non-negative")
    rows = _as_rows(generators, n)
    if not rows or n == 0:
        return LatticeQuotient(n, n, (), identity_matrix(n), ())
    f = smith_decomposition(rows)
    diag = f.diagonal
    r = f.rank
    vt = transpose(f.V)
    projection = [vt[j] for j in range(r, n)]
    torsion = []
    for i, d in enumerate(diag[:r]):
        if d > 1:
            projection.append(vt[i])
            torsion.append(d)
    return LatticeQuotient(n, n - r, tuple(torsion), projection, tuple(diag))


def hermite_rows(rows: Sequence[Sequence[int]]) -> IntMatrix:
    """Row-style Hermite normal form; zero rows are dropped."""
    h = [list(r) for r in rows]
    if not h:
        return []
    m, n = len(h), len(h[0])
    top = 0
    for col in range(n):
        if top == m:
            break
        while True:
            nz = [i for i in range(top, m) if h[i][col]]
            if not nz:
                break
            piv = min(nz, key=lambda i: (abs(h[i][col]), i))
            h[top], h[piv] = h[piv], h[top]
            done = True
            for i in range(top + 1, m):
                if h[i][col]:
                    q = h[i][col] // h[top][col]
                    h[i] = [a - q * b for a, b in zip(h[i], h[top])]
                    if h[i][col]:
                        done = False
            if done:
                break
        if not h[top][col]:
            continue
        if h[top][col] < 0:
            h[top] = [-a for a in h[top]]
        for i in range(top):
            q = h[i][col] // h[top][col]
            if q:
                h[i] = [a - q * b for a, b in zip(h[i], h[top])]
        top += 1
    return [row for row in h if any(row)]


def integer_nullspace(a: Sequence[Sequence[int]], ncols: int | None = None) -> IntMatrix:
    """Basis of ``{e in Z^m : a @ e = 0}``, rows in Hermite form."""
    rows = _as_rows(a, ncols if ncols is not None else (len(a[0]) if a else 0))
    m = ncols if ncols is not None else (len(rows[0]) if rows else 0)
    if m == 0:
        return []
    if not rows or all(not any(r) for r in rows):
        return identity_matrix(m)
    f = smith_decomposition(rows)
    vt = transpose(f.V)
    basis = [vt[j] for j in range(f.rank, m)]
    return hermite_rows(basis)


def rational_solve(a: Sequence[Sequence[int]], b: Sequence[int]) -> list[Fraction] | None:
    """Exact solve over Q for a square system; None when singular."""
    n = len(a)
    m = [[Fraction(x) for x in row] + [Fraction(v)] for row, v in zip(a, b)]
    for k in range(n):
        piv = next((i for i in range(k, n) if m[i][k] != 0), None)
        if piv is None:
            return None
        m[k], m[piv] = m[piv], m[k]
        for i in range(n):
            if i != k and m[i][k]:
                f = m[i][k] / m[k][k]
                m[i] = [x - f * y for x, y in zip(m[i], m[k])]
    return [m[i][n] / m[i][i] for i in range(n)]
