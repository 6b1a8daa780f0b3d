"""Explicit complex Clifford modules with Gaussian-integer matrices.

A matrix is stored as a pair ``(re, im)`` of integer numpy arrays, so every
product and comparison below is exact.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

import numpy as np

MAX_DIMENSION = 12
GF_PRIME = 1_000_000_009  # congruent to 1 mod 4, so -1 has a square root mod p


@dataclass(frozen=True)
class GaussMatrix:
    re: np.ndarray
    im: np.ndarray

    @classmethod
    def identity(cls, n: int) -> "GaussMatrix":
        return cls(np.eye(n, dtype=np.int64), np.zeros((n, n), dtype=np.int64))

    @classmethod
    def from_rows(cls, rows) -> "GaussMatrix":
        arr = np.array(rows, dtype=complex)
        re, im = arr.real, arr.imag
        if not (np.all(re == np.round(re)) and np.all(im == np.round(im))):
            raise ValueError("entries must be Gaussian integers")
        return cls(re.astype(np.int64), im.astype(np.int64))

    @property
    def size(self) -> int:
        return self.re.shape[0]

    def __matmul__(self, other: "GaussMatrix") -> "GaussMatrix":
        return GaussMatrix(self.re @ other.re - self.im @ other.im, self.re @ other.im + self.im @ other.re)

    def __add__(self, other: "GaussMatrix") -> "GaussMatrix":
        return GaussMatrix(self.re + other.re, self.im + other.im)

    def __neg__(self) -> "GaussMatrix":
        return GaussMatrix(-self.re, -self.im)

    def scale(self, re: int, im: int = 0) -> "GaussMatrix":
        return GaussMatrix(re * self.re - im * self.im, re * self.im + im * self.re)

    def kron(self, other: "GaussMatrix") -> "GaussMatrix":
        return GaussMatrix(
            np.kron(self.re, other.re) - np.kron(self.im, other.im),
            np.kron(self.re, other.im) + np.kron(self.im, other.re),
        )

    def adjoint(self) -> "GaussMatrix":
        return GaussMatrix(self.re.T.copy(), -self.im.T.copy())

    def equals(self, other: "GaussMatrix") -> bool:
        return bool(np.array_equal(self.re, other.re) and np.array_equal(self.im, other.im))

    def is_zero(self) -> bool:
        return not self.re.any() and not self.im.any()

    def scalar_value(self):
        """``(a, b)`` if the matrix is ``(a + b i)`` times the identity, else None."""
        n = self.size
        a, b = int(self.re[0, 0]), int(self.im[0, 0])
        return (a, b) if self.equals(GaussMatrix.identity(n).scale(a, b)) else None

    def is_diagonal(self) -> bool:
        mask = ~np.eye(self.size, dtype=bool)
        return not self.re[mask].any() and not self.im[mask].any()

    def to_complex(self) -> np.ndarray:
        return self.re + 1j * self.im


@dataclass(frozen=True)
class CliffordModel:
    """Matrices ``gamma[a]`` for an orthonormal basis ``e_1..e_m`` of a real inner product space."""

    m: int
    gamma: tuple

    @property
    def module_dimension(self) -> int:
        return self.gamma[0].size


_J = GaussMatrix.from_rows([[0, 1], [-1, 0]])
_K = GaussMatrix.from_rows([[0, 1j], [1j, 0]])
# i times (J K); squares to +1 and anticommutes with J and K
_TWIST = GaussMatrix.from_rows([[-1, 0], [0, 1]])


def clifford_model(m: int) -> CliffordModel:
    """Generators with ``g_a g_b + g_b g_a = -2 delta_ab`` on a space of dimension ``2^(m // 2)``.

    Two generators act on a 2-dimensional factor; the rest are built one step
    down and twisted by an element that anticommutes with the first two.
    """
    if not isinstance(m, int) or not 1 <= m <= MAX_DIMENSION:
        raise ValueError(f"dimension must be an integer in [1, {MAX_DIMENSION}], got {m!r}")
    if m == 1:
        return CliffordModel(1, (GaussMatrix.from_rows([[1j]]),))
    if m == 2:
        return CliffordModel(2, (_J, _K))
    rest = clifford_model(m - 2)
    eye = GaussMatrix.identity(rest.module_dimension)
    gens = (_J.kron(eye), _K.kron(eye)) + tuple(_TWIST.kron(g) for g in rest.gamma)
    return CliffordModel(m, gens)


def monomial(model: CliffordModel, indices) -> GaussMatrix:
    out = GaussMatrix.identity(model.module_dimension)
    for a in indices:
        out = out @ model.gamma[a]
    return out


def _all_monomials(model: CliffordModel) -> dict:
    """Products ``g_S`` for every subset ``S`` (as a sorted tuple), built incrementally."""
    mons = {(): GaussMatrix.identity(model.module_dimension)}
    for size in range(1, model.m + 1):
        for S in [s for s in mons if len(s) == size - 1]:
            last = S[-1] if S else -1
            for a in range(last + 1, model.m):
                mons[S + (a,)] = mons[S] @ model.gamma[a]
    return mons


def rank_mod_p(matrices, p: int = GF_PRIME) -> int:
    """Rank over GF(p) of the span of the given Gaussian-integer matrices, with ``i`` sent to a root of -1."""
    if not matrices:
        return 0
    # a^((p-1)/4) squares to -1 exactly when a is a quadratic non-residue
    sqrt_m1 = next(x for x in (pow(a, (p - 1) // 4, p) for a in range(2, p)) if x * x % p == p - 1)
    rows = np.array([((M.re + sqrt_m1 * M.im) % p).ravel() for M in matrices], dtype=np.int64)
    rows %= p
    r = 0
    ncols = rows.shape[1]
    for c in range(ncols):
        piv = next((i for i in range(r, rows.shape[0]) if rows[i, c] != 0), None)
        if piv is None:
            continue
        rows[[r, piv]] = rows[[piv, r]]
        inv = pow(int(rows[r, c]), p - 2, p)
        rows[r] = (rows[r] * inv) % p
        others = np.nonzero(rows[:, c])[0]
        for i in others:
            if i != r:
                f = int(rows[i, c])
                rows[i] = (rows[i] - f * rows[r]) % p
        r += 1
        if r == rows.shape[0]:
            break
    return r


@dataclass
class CliffordReport:
    m: int
    checks: dict = field(default_factory=dict)
    torus_weights: list = field(default_factory=list)
    failures: list = field(default_factory=list)

    def record(self, name: str, ok: bool, detail: str = "") -> None:
        self.checks[name] = ok
        if not ok:
            self.failures.append(f"{name}: {detail}" if detail else name)

    @property
    def ok(self) -> bool:
        return not self.failures


def clifford_structure_checks(model: CliffordModel, irreducibility_limit: int = 8) -> CliffordReport:
    """Exact checks of the relations, dimension, volume element, torus weights and irreducibility."""
    m = model.m
    r = m // 2
    g = model.gamma
    n = model.module_dimension
    rep = CliffordReport(m)
    ident = GaussMatrix.identity(n)

    ok = True
    for a in range(m):
        for b in range(a, m):
            anti = g[a] @ g[b] + g[b] @ g[a]
            want = ident.scale(-2) if a == b else GaussMatrix(np.zeros((n, n), np.int64), np.zeros((n, n), np.int64))
            if not anti.equals(want):
                ok = False
    rep.record("relations", ok)
    rep.record("skew_adjoint", all(x.adjoint().equals(-x) for x in g))
    rep.record("dimension", n == 2**r, f"{n} != {2**r}")

    if m % 2 == 0:
        vol = monomial(model, range(m))
        rep.record("volume_anticommutes", all((vol @ x).equals(-(x @ vol)) for x in g))
        rep.record(
            "volume_commutes_with_even",
            all((vol @ g[a] @ g[b]).equals(g[a] @ g[b] @ vol) for a in range(m) for b in range(m)),
        )
        sq = (vol @ vol).scalar_value()
        rep.record("volume_square", sq == ((-1) ** r, 0), f"got {sq}")

    # torus weights: J_i = g_{2i-1} g_{2i} acts by +-i on a common eigenbasis
    if r:
        js = [g[2 * i] @ g[2 * i + 1] for i in range(r)]
        diag_ok = all(J.is_diagonal() for J in js)
        rep.record("torus_diagonal", diag_ok)
        if diag_ok:
            patterns = []
            for v in range(n):
                signs = []
                for J in js:
                    re, im = int(J.re[v, v]), int(J.im[v, v])
                    signs.append(im if re == 0 and im in (1, -1) else 0)
                patterns.append(tuple(signs))
            rep.torus_weights = sorted(tuple(Fraction(s, 2) for s in p) for p in patterns)
            expected = sorted(tuple(Fraction(s, 2) for s in p) for p in product((1, -1), repeat=r))
            rep.record("torus_weights", rep.torus_weights == expected, "sign patterns do not each occur once")
    else:
        rep.torus_weights = [()]

    if m <= irreducibility_limit:
        mons = _all_monomials(model)
        even = [M for S, M in mons.items() if len(S) % 2 == 0]
        if m % 2:
            rep.record("even_part_full_matrix_algebra", rank_mod_p(even) == 4**r)
        else:
            rep.record("full_algebra_irreducible", rank_mod_p(list(mons.values())) == 4**r)
            rep.record("even_part_two_blocks", rank_mod_p(even) == 2 * 4 ** (r - 1))
    return rep
