"""Exact rational vectors, Gram forms, linear solves and a box-bounded LP feasibility test.

Everything here works over :class:`fractions.Fraction`; nothing is ever rounded.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Iterable, Optional, Sequence

Rational = Fraction


def as_rational(x) -> Fraction:
    """Coerce ints, Fractions and ``"num/den"`` strings to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("floats are not accepted; pass an int, Fraction or 'num/den' string")
    return Fraction(x)


class WeightVector(tuple):
    """Immutable exact coordinate vector with vector-space arithmetic.

    ``+``, ``-`` and scalar ``*`` act componentwise (not as tuple concatenation).
    """

    __slots__ = ()

    def __new__(cls, coords: Iterable = ()):
        return super().__new__(cls, (as_rational(c) for c in coords))

    @classmethod
    def zero(cls, n: int) -> "WeightVector":
        return cls((0,) * n)

    @classmethod
    def unit(cls, n: int, i: int, scale=1) -> "WeightVector":
        return cls(scale if j == i else 0 for j in range(n))

    def _check(self, other) -> None:
        if len(self) != len(other):
            raise ValueError(f"dimension mismatch: {len(self)} vs {len(other)}")

    def __add__(self, other):
        self._check(other)
        return WeightVector(a + b for a, b in zip(self, other))

    def __sub__(self, other):
        self._check(other)
        return WeightVector(a - b for a, b in zip(self, other))

    def __neg__(self):
        return WeightVector(-a for a in self)

    def __mul__(self, c):
        c = as_rational(c)
        return WeightVector(c * a for a in self)

    __rmul__ = __mul__

    def __truediv__(self, c):
        c = as_rational(c)
        return WeightVector(a / c for a in self)

    def is_zero(self) -> bool:
        return all(a == 0 for a in self)

    def __repr__(self) -> str:
        return "WeightVector(" + ", ".join(str(a) for a in self) + ")"

    def __str__(self) -> str:
        return "(" + ",".join(str(a) for a in self) + ")"


def vec(*coords) -> WeightVector:
    """Shorthand: ``vec(1, "-1/2")``."""
    return WeightVector(coords)


def vsum(vectors: Iterable[WeightVector], n: int) -> WeightVector:
    acc = [Fraction(0)] * n
    for v in vectors:
        for i, a in enumerate(v):
            acc[i] += a
    return WeightVector(acc)


@dataclass(frozen=True)
class GramForm:
    """Symmetric positive definite rational matrix defining the inner product."""

    matrix: tuple

    def __post_init__(self):
        rows = tuple(tuple(as_rational(x) for x in row) for row in self.matrix)
        object.__setattr__(self, "matrix", rows)
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise ValueError("Gram matrix must be square")
        for i in range(n):
            for j in range(i):
                if rows[i][j] != rows[j][i]:
                    raise ValueError("Gram matrix must be symmetric")
        for k in range(1, n + 1):
            if determinant([r[:k] for r in rows[:k]]) <= 0:
                raise ValueError("Gram matrix must be positive definite")
        object.__setattr__(self, "_diagonal", all(rows[i][j] == 0 for i in range(n) for j in range(n) if i != j))

    @classmethod
    def identity(cls, n: int) -> "GramForm":
        return cls(tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)))

    @classmethod
    def block_diagonal(cls, blocks: Sequence["GramForm"]) -> "GramForm":
        n = sum(b.rank for b in blocks)
        rows = [[Fraction(0)] * n for _ in range(n)]
        off = 0
        for b in blocks:
            for i in range(b.rank):
                for j in range(b.rank):
                    rows[off + i][off + j] = b.matrix[i][j]
            off += b.rank
        return cls(tuple(tuple(r) for r in rows))

    @property
    def rank(self) -> int:
        return len(self.matrix)

    def lower(self, v: Sequence) -> WeightVector:
        """The covector ``matrix @ v`` (so that ``inner(v, w) = lower(v) . w``)."""
        return WeightVector(sum(m * x for m, x in zip(row, v)) for row in self.matrix)


def inner(form: GramForm, v: Sequence, w: Sequence) -> Fraction:
    """Exact ``v^T G w``."""
    n = form.rank
    if len(v) != n or len(w) != n:
        raise ValueError(f"dimension mismatch: form has rank {n}, got {len(v)} and {len(w)}")
    m = form.matrix
    if form._diagonal:
        return sum((m[i][i] * v[i] * w[i] for i in range(n)), Fraction(0))
    return sum((v[i] * m[i][j] * w[j] for i in range(n) for j in range(n)), Fraction(0))


def norm2(form: GramForm, v: Sequence) -> Fraction:
    return inner(form, v, v)


# ----------------------------------------------------------------- linear algebra


def determinant(rows: Sequence[Sequence]) -> Fraction:
    a = [[as_rational(x) for x in r] for r in rows]
    n = len(a)
    det = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if a[r][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            a[c], a[p] = a[p], a[c]
            det = -det
        det *= a[c][c]
        for r in range(c + 1, n):
            f = a[r][c] / a[c][c]
            if f:
                for k in range(c, n):
                    a[r][k] -= f * a[c][k]
    return det


def rref(rows: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form and pivot columns."""
    a = [[as_rational(x) for x in r] for r in rows]
    if not a:
        return a, []
    m, n = len(a), len(a[0])
    pivots: list[int] = []
    r = 0
    for c in range(n):
        p = next((i for i in range(r, m) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        pv = a[r][c]
        a[r] = [x / pv for x in a[r]]
        for i in range(m):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    return a, pivots


def solve_linear(matrix: Sequence[Sequence], rhs: Sequence) -> Optional[tuple[Fraction, ...]]:
    """One exact solution of ``matrix @ x = rhs`` (free variables set to 0), or None."""
    m = len(matrix)
    if m == 0:
        return ()
    k = len(matrix[0])
    aug = [list(matrix[i]) + [rhs[i]] for i in range(m)]
    red, pivots = rref(aug)
    if k in pivots:
        return None
    x = [Fraction(0)] * k
    for row, c in zip(red, pivots):
        x[c] = row[k]
    return tuple(x)


def nullspace(matrix: Sequence[Sequence], ncols: int) -> list[WeightVector]:
    """Basis of ``{x : matrix @ x = 0}``."""
    if not matrix:
        return [WeightVector.unit(ncols, i) for i in range(ncols)]
    red, pivots = rref(matrix)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for row, c in zip(red, pivots):
            x[c] = -row[f]
        basis.append(WeightVector(x))
    return basis


def invert(matrix: Sequence[Sequence]) -> list[list[Fraction]]:
    n = len(matrix)
    aug = [list(matrix[i]) + [1 if j == i else 0 for j in range(n)] for i in range(n)]
    red, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise ValueError("matrix is singular")
    return [row[n:] for row in red]


def solve_in_span(vectors: Sequence[WeightVector], target: WeightVector) -> Optional[tuple[Fraction, ...]]:
    """Coefficients ``c`` with ``sum(c_i * vectors_i) == target``, or None if target is outside the span.

    For linearly dependent ``vectors`` a particular solution is returned.
    """
    n = len(target)
    if not vectors:
        return () if all(t == 0 for t in target) else None
    for v in vectors:
        if len(v) != n:
            raise ValueError("dimension mismatch")
    cols = [[v[i] for v in vectors] for i in range(n)]
    return solve_linear(cols, list(target))


# ----------------------------------------------------------------- square roots


def sqrt_upper(x) -> Fraction:
    """A rational upper bound for ``sqrt(x)``, exact when ``x`` is a rational square."""
    x = as_rational(x)
    if x < 0:
        raise ValueError("negative argument")
    n, d = x.numerator, x.denominator
    s = isqrt(n * d)
    if s * s == n * d:
        return Fraction(s, d)
    return Fraction(s + 1, d)


def sqrt_sum_bound_holds(x2, a2, b2) -> bool:
    """Exact test of ``sqrt(x2) <= sqrt(a2) + sqrt(b2)`` for nonnegative rationals."""
    x2, a2, b2 = as_rational(x2), as_rational(a2), as_rational(b2)
    d = x2 - a2 - b2
    return d <= 0 or d * d <= 4 * a2 * b2


# ----------------------------------------------------------------- LP feasibility


def lp_feasible(
    generators: Sequence[WeightVector],
    lower: Sequence,
    upper: Sequence,
    target: WeightVector,
) -> Optional[tuple[Fraction, ...]]:
    """Find ``b`` with ``lower <= b <= upper`` and ``sum(b_i * g_i) == target``.

    Phase-1 simplex over the rationals with Bland's rule. An entry of ``upper``
    may be ``None`` for an unbounded coefficient. Returns None if infeasible.
    Any returned witness has been checked exactly against all constraints.
    """
    k = len(generators)
    n = len(target)
    if len(lower) != k or len(upper) != k:
        raise ValueError("bounds must match the number of generators")
    lo = [as_rational(x) for x in lower]
    hi = [None if u is None else as_rational(u) for u in upper]
    for l, u in zip(lo, hi):
        if u is not None and l > u:
            raise ValueError("lower bound exceeds upper bound")
    for g in generators:
        if len(g) != n:
            raise ValueError("dimension mismatch")

    # Shift b = lo + y, 0 <= y <= hi - lo.
    rhs_eq = [target[i] - sum((generators[j][i] * lo[j] for j in range(k)), Fraction(0)) for i in range(n)]
    bounded = [j for j in range(k) if hi[j] is not None]
    nb = len(bounded)
    # Columns: y_0..y_{k-1}, s_0..s_{nb-1}, a_0..a_{n-1}.
    ncol = k + nb + n
    rows: list[list[Fraction]] = []
    basis: list[int] = []
    for i in range(n):
        sign = -1 if rhs_eq[i] < 0 else 1
        row = [Fraction(0)] * (ncol + 1)
        for j in range(k):
            row[j] = sign * generators[j][i]
        row[k + nb + i] = Fraction(1)
        row[ncol] = sign * rhs_eq[i]
        rows.append(row)
        basis.append(k + nb + i)
    for t, j in enumerate(bounded):
        row = [Fraction(0)] * (ncol + 1)
        row[j] = Fraction(1)
        row[k + t] = Fraction(1)
        row[ncol] = hi[j] - lo[j]
        rows.append(row)
        basis.append(k + t)

    cost = [Fraction(0)] * ncol
    for i in range(n):
        cost[k + nb + i] = Fraction(1)

    def reduced_costs() -> list[Fraction]:
        rc = cost[:]
        for r, bvar in enumerate(basis):
            cb = cost[bvar]
            if cb:
                row = rows[r]
                for j in range(ncol):
                    if row[j]:
                        rc[j] -= cb * row[j]
        return rc

    while True:
        rc = reduced_costs()
        enter = next((j for j in range(ncol) if rc[j] < 0), None)
        if enter is None:
            break
        leave = None
        best = None
        for r, row in enumerate(rows):
            if row[enter] > 0:
                ratio = row[ncol] / row[enter]
                if best is None or ratio < best or (ratio == best and basis[r] < basis[leave]):
                    best, leave = ratio, r
        if leave is None:  # phase-1 objective is bounded below by 0
            raise RuntimeError("unbounded phase-1 simplex; this indicates a bug")
        prow = rows[leave]
        pv = prow[enter]
        prow = [x / pv for x in prow]
        rows[leave] = prow
        for r in range(len(rows)):
            if r != leave and rows[r][enter] != 0:
                f = rows[r][enter]
                rows[r] = [x - f * y for x, y in zip(rows[r], prow)]
        basis[leave] = enter

    infeas = sum((rows[r][ncol] for r, bvar in enumerate(basis) if bvar >= k + nb), Fraction(0))
    if infeas != 0:
        return None
    y = [Fraction(0)] * k
    for r, bvar in enumerate(basis):
        if bvar < k:
            y[bvar] = rows[r][ncol]
    b = tuple(lo[j] + y[j] for j in range(k))
    _check_witness(generators, lo, hi, target, b)
    return b


def _check_witness(generators, lo, hi, target, b) -> None:
    n = len(target)
    for j, bj in enumerate(b):
        if bj < lo[j] or (hi[j] is not None and bj > hi[j]):
            raise RuntimeError("LP witness violates a bound; this indicates a bug")
    for i in range(n):
        if sum((b[j] * generators[j][i] for j in range(len(b))), Fraction(0)) != target[i]:
            raise RuntimeError("LP witness does not reproduce the target; this indicates a bug")
