"""Root systems, positive systems, fundamental weights and Weyl groups in exact coordinates."""
from __future__ import annotations

import re
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Iterable, Optional, Sequence

from .exact import (
    GramForm,
    WeightVector,
    inner,
    invert,
    nullspace,
    solve_in_span,
    vsum,
)

WEYL_CAP = 10**6


class RootSystemError(ValueError):
    pass


class WeylCapExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class WeylElement:
    """A Weyl group element as an exact matrix acting on column vectors, with a word in simple reflections."""

    matrix: tuple
    word: tuple = field(default=(), compare=False)

    def apply(self, v: Sequence) -> WeightVector:
        return WeightVector(sum((m * x for m, x in zip(row, v)), Fraction(0)) for row in self.matrix)

    def __matmul__(self, other: "WeylElement") -> "WeylElement":
        n = len(self.matrix)
        prod = tuple(
            tuple(sum((self.matrix[i][k] * other.matrix[k][j] for k in range(n)), Fraction(0)) for j in range(n))
            for i in range(n)
        )
        return WeylElement(prod, self.word + other.word)

    def is_identity(self) -> bool:
        return all(self.matrix[i][j] == (1 if i == j else 0) for i in range(len(self.matrix)) for j in range(len(self.matrix)))


def identity_element(n: int) -> WeylElement:
    return WeylElement(tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)))


def coroot_pairing(form: GramForm, v: Sequence, alpha: Sequence) -> Fraction:
    """``2<v, alpha>/<alpha, alpha>``."""
    return 2 * inner(form, v, alpha) / inner(form, alpha, alpha)


def reflect(form: GramForm, v: WeightVector, alpha: WeightVector) -> WeightVector:
    return v - coroot_pairing(form, v, alpha) * alpha


def reflection_matrix(form: GramForm, alpha: WeightVector) -> tuple:
    n = form.rank
    a_low = form.lower(alpha)
    c = Fraction(2) / inner(form, alpha, alpha)
    return tuple(tuple(Fraction(int(i == j)) - c * alpha[i] * a_low[j] for j in range(n)) for i in range(n))


@dataclass(frozen=True, eq=False)
class RootSystemData:
    """A reduced root system in an ambient space, with a chosen positive system.

    ``simple``, ``fundamental`` and ``rho`` refer to the chosen positive system;
    ``central_basis`` spans the orthogonal complement of the root span.
    """

    form: GramForm
    roots: tuple
    positive: tuple
    simple: tuple
    fundamental: tuple
    rho: WeightVector
    central_basis: tuple
    weyl_cap: int = WEYL_CAP

    @property
    def rank(self) -> int:
        return self.form.rank

    @property
    def semisimple_rank(self) -> int:
        return len(self.simple)

    @cached_property
    def root_set(self) -> frozenset:
        return frozenset(self.roots)

    @cached_property
    def positive_set(self) -> frozenset:
        return frozenset(self.positive)

    @cached_property
    def simple_gram(self) -> list[list[Fraction]]:
        return [[inner(self.form, a, b) for b in self.simple] for a in self.simple]

    @cached_property
    def simple_lowered(self) -> tuple:
        return tuple(self.form.lower(a) for a in self.simple)

    @cached_property
    def _simple_gram_inverse(self):
        return invert(self.simple_gram) if self.simple else []

    def simple_pairings(self, v: Sequence) -> list[Fraction]:
        """``<v, alpha_i>`` for the simple roots."""
        return [sum((x * y for x, y in zip(low, v)), Fraction(0)) for low in self.simple_lowered]

    def is_dominant(self, v: Sequence) -> bool:
        return all(p >= 0 for p in self.simple_pairings(v))

    def simple_coordinates(self, v: Sequence) -> Optional[tuple]:
        """Coefficients of ``v`` over the simple roots, or None if ``v`` is outside the root span."""
        return solve_in_span(self.simple, WeightVector(v))

    def semisimple_part(self, v: Sequence) -> WeightVector:
        """Orthogonal projection onto the span of the roots."""
        if not self.simple:
            return WeightVector.zero(self.rank)
        pair = self.simple_pairings(v)
        inv = self._simple_gram_inverse
        coeffs = [sum((inv[i][j] * pair[j] for j in range(len(pair))), Fraction(0)) for i in range(len(pair))]
        return vsum((c * a for c, a in zip(coeffs, self.simple)), self.rank)

    def central_part(self, v: Sequence) -> WeightVector:
        """Orthogonal projection onto the complement of the root span."""
        v = WeightVector(v)
        return v - self.semisimple_part(v)

    @cached_property
    def simple_reflections(self) -> tuple:
        return tuple(WeylElement(reflection_matrix(self.form, a), (i,)) for i, a in enumerate(self.simple))

    _weyl_lock: threading.Lock = field(default_factory=threading.Lock, init=False, repr=False, compare=False)

    @property
    def weyl_group(self) -> tuple:
        with self._weyl_lock:
            cached = self.__dict__.get("_weyl_cache")
            if cached is None:
                cached = _enumerate_weyl(self)
                self.__dict__["_weyl_cache"] = cached
            return cached

    def transformed(self, w: WeylElement) -> "RootSystemData":
        """The same root system with positive system ``w(positive)``."""
        return RootSystemData(
            form=self.form,
            roots=self.roots,
            positive=tuple(w.apply(a) for a in self.positive),
            simple=tuple(w.apply(a) for a in self.simple),
            fundamental=tuple(w.apply(x) for x in self.fundamental),
            rho=w.apply(self.rho),
            central_basis=self.central_basis,
            weyl_cap=self.weyl_cap,
        )

    @property
    def two_rho(self) -> WeightVector:
        return 2 * self.rho


def _enumerate_weyl(data: RootSystemData) -> tuple:
    ident = identity_element(data.rank)
    seen = {ident.matrix: ident}
    order = [ident]
    frontier = [ident]
    while frontier:
        nxt = []
        for w in frontier:
            for s in data.simple_reflections:
                u = s @ w
                if u.matrix not in seen:
                    seen[u.matrix] = u
                    order.append(u)
                    nxt.append(u)
                    if len(order) > data.weyl_cap:
                        raise WeylCapExceeded(f"Weyl group exceeds the cap of {data.weyl_cap} elements")
        frontier = nxt
    return tuple(order)


def weyl_group(data: RootSystemData) -> tuple:
    """All Weyl group elements, in breadth-first order of word length (identity first)."""
    return data.weyl_group


# ----------------------------------------------------------------- construction


def _find_simple(form: GramForm, positive: Sequence[WeightVector]) -> list[WeightVector]:
    pos = set(positive)
    simple = []
    for a in positive:
        if not any((a - b) in pos for b in positive if b != a):
            simple.append(a)
    return simple


def build_from_roots(
    roots: Iterable,
    form: GramForm,
    positive_choice: Iterable,
    weyl_cap: int = WEYL_CAP,
) -> RootSystemData:
    """Validate a reduced crystallographic root system and a positive system; derive the rest."""
    roots = [WeightVector(r) for r in roots]
    positive = [WeightVector(r) for r in positive_choice]
    n = form.rank
    root_set = set(roots)
    if len(root_set) != len(roots):
        raise RootSystemError("duplicate roots")
    for a in roots:
        if len(a) != n:
            raise RootSystemError("root dimension does not match the form")
        if a.is_zero():
            raise RootSystemError("zero is not a root")
        if -a not in root_set:
            raise RootSystemError(f"{a} is a root but its negative is not")
    for a in roots:
        for b in roots:
            c = coroot_pairing(form, b, a)
            if c.denominator != 1:
                raise RootSystemError(f"not crystallographic: pairing of {b} with {a} is {c}")
            if b - c * a not in root_set:
                raise RootSystemError(f"not closed under reflection in {a}")
            if b != a and b != -a and solve_in_span([a], b) is not None:
                raise RootSystemError("nonreduced root systems are not supported")
    pos_set = set(positive)
    if len(pos_set) != len(positive) or not pos_set <= root_set:
        raise RootSystemError("positive choice must be a subset of the roots without repeats")
    for a in roots:
        if (a in pos_set) == (-a in pos_set):
            raise RootSystemError(f"exactly one of +-{a} must be positive")
    # deterministic order
    roots = sorted(root_set)
    positive = sorted(pos_set)
    simple = _find_simple(form, positive)
    if simple and any(solve_in_span([s for s in simple if s != a], a) is not None for a in simple):
        raise RootSystemError("inconsistent positive choice: simple roots are dependent")
    for a in positive:
        c = solve_in_span(simple, a)
        if c is None or any(x < 0 or x.denominator != 1 for x in c):
            raise RootSystemError("inconsistent positive choice: not every positive root is a nonnegative integer combination of simple roots")
    # orthonormal complement of the root span
    low = [list(form.lower(a)) for a in simple]
    central = tuple(nullspace(low, n)) if simple else tuple(WeightVector.unit(n, i) for i in range(n))
    if simple:
        gram = [[inner(form, a, b) for b in simple] for a in simple]
        inv = invert(gram)
        fundamental = tuple(vsum((inv[i][k] * simple[k] for k in range(len(simple))), n) for i in range(len(simple)))
    else:
        fundamental = ()
    rho = vsum(positive, n) / 2
    return RootSystemData(
        form=form,
        roots=tuple(roots),
        positive=tuple(positive),
        simple=tuple(simple),
        fundamental=fundamental,
        rho=rho,
        central_basis=central,
        weyl_cap=weyl_cap,
    )


def lex_positive(roots: Iterable[WeightVector]) -> list[WeightVector]:
    """Roots whose first nonzero coordinate is positive (a positive system for any root system)."""
    out = []
    for r in roots:
        first = next(x for x in r if x != 0)
        if first > 0:
            out.append(r)
    return out


def _unit(n, i):
    return WeightVector.unit(n, i)


def _classical_roots(kind: str, l: int) -> tuple[list[WeightVector], GramForm]:
    if kind == "A":
        if l == 1:
            return [WeightVector((2,)), WeightVector((-2,))], GramForm.identity(1)
        # coordinates x_i = a_i - a_{l+1} on weights of sum-zero (l+1)-space
        ones = WeightVector((1,) * l)
        roots = []
        for i in range(l):
            for j in range(l):
                if i != j:
                    roots.append(_unit(l, i) - _unit(l, j))
            roots.append(_unit(l, i) + ones)
            roots.append(-(_unit(l, i) + ones))
        g = GramForm(tuple(tuple(Fraction(int(i == j)) - Fraction(1, l + 1) for j in range(l)) for i in range(l)))
        return roots, g
    if kind in "BCD":
        roots = []
        for i in range(l):
            for j in range(i + 1, l):
                for si in (1, -1):
                    for sj in (1, -1):
                        roots.append(si * _unit(l, i) + sj * _unit(l, j))
            if kind == "B":
                roots += [_unit(l, i), -_unit(l, i)]
            elif kind == "C":
                roots += [2 * _unit(l, i), -2 * _unit(l, i)]
        if kind == "C" and l == 1:
            roots = [WeightVector((2,)), WeightVector((-2,))]
        return roots, GramForm.identity(l)
    if kind == "G":
        # simple-root coordinates, short root first
        pos = [(1, 0), (0, 1), (1, 1), (2, 1), (3, 1), (3, 2)]
        roots = [WeightVector(p) for p in pos] + [-WeightVector(p) for p in pos]
        return roots, GramForm(((2, -3), (-3, 6)))
    if kind == "F":
        roots = _classical_roots("B", 4)[0]
        from itertools import product

        for signs in product((1, -1), repeat=4):
            roots.append(WeightVector(Fraction(s, 2) for s in signs))
        return roots, GramForm.identity(4)
    raise RootSystemError(f"unknown Cartan type {kind}")


_LABEL_RE = re.compile(r"^([ABCDGF])_?(\d+)$")


def _gl_roots(l: int) -> list[WeightVector]:
    n = l + 1
    return [_unit(n, i) - _unit(n, j) for i in range(n) for j in range(n) if i != j]


@lru_cache(maxsize=None)
def build_from_cartan_label(label: str, central_rank: int = 0) -> RootSystemData:
    """Standard root system for a label such as ``A1``, ``C2``, ``G2`` or ``A1xB2``.

    ``A_1`` alone is realized as ``{+-2}`` on a line. When ``central_rank >= 1``
    the first ``A_l`` factor uses the ``gl(l+1)`` coordinates, whose diagonal
    direction supplies one central dimension; further central dimensions are
    zero-padded. Results are memoized (the data is immutable).
    """
    if central_rank < 0:
        raise RootSystemError("central rank must be nonnegative")
    parts = [p for p in re.split(r"[x×+*]", label.replace(" ", "")) if p]
    if not parts:
        raise RootSystemError(f"unknown label {label!r}")
    blocks: list[tuple[list[WeightVector], GramForm]] = []
    remaining_central = central_rank
    for p in parts:
        m = _LABEL_RE.match(p.upper())
        if not m:
            raise RootSystemError(f"unknown label {p!r}")
        kind, l = m.group(1), int(m.group(2))
        if l < 1 or (kind == "B" and l < 2) or (kind == "D" and l < 3) or (kind == "G" and l != 2) or (kind == "F" and l != 4) or (kind == "C" and l < 1):
            raise RootSystemError(f"unsupported label {p!r}")
        if kind == "A" and remaining_central > 0:
            blocks.append((_gl_roots(l), GramForm.identity(l + 1)))
            remaining_central -= 1
        else:
            blocks.append(_classical_roots(kind, l))
    if remaining_central:
        blocks.append(([], GramForm.identity(remaining_central)))
    n = sum(g.rank for _, g in blocks)
    roots = []
    off = 0
    for rs, g in blocks:
        for r in rs:
            roots.append(WeightVector((0,) * off + tuple(r) + (0,) * (n - off - g.rank)))
        off += g.rank
    form = GramForm.block_diagonal([g for _, g in blocks])
    return build_from_roots(roots, form, lex_positive(roots))


# ----------------------------------------------------------------- chambers


def dominant_representative(data: RootSystemData, v: Sequence) -> tuple[WeightVector, WeylElement]:
    """``(v_plus, w)`` with ``v_plus`` dominant and ``w . v_plus == v``.

    Reflects in the first simple root with a negative pairing until none is left.
    """
    v = WeightVector(v)
    word: list[int] = []
    cur = v
    while True:
        pairs = data.simple_pairings(cur)
        i = next((i for i, p in enumerate(pairs) if p < 0), None)
        if i is None:
            break
        a = data.simple[i]
        cur = cur - (2 * pairs[i] / inner(data.form, a, a)) * a
        word.append(i)
    w = identity_element(data.rank)
    for i in word:
        w = w @ data.simple_reflections[i]
    return cur, w


def positive_systems_containing(data: RootSystemData, k_positive: Iterable) -> list[RootSystemData]:
    """Every positive system ``w(positive)`` containing ``k_positive``, as transformed copies of ``data``."""
    need = frozenset(WeightVector(a) for a in k_positive)
    out = []
    seen = set()
    for w in data.weyl_group:
        pos = frozenset(w.apply(a) for a in data.positive)
        if need <= pos and pos not in seen:
            seen.add(pos)
            out.append(data.transformed(w))
    return out


def chambers_containing(data: RootSystemData, v: Sequence) -> list[WeylElement]:
    """All ``w`` with ``w^{-1} v`` dominant, i.e. every closed chamber ``w C`` containing ``v``."""
    v = WeightVector(v)
    out = []
    for w in data.weyl_group:
        if all(inner(data.form, v, w.apply(a)) >= 0 for a in data.simple):
            out.append(w)
    return out


def weyl_order(label: str) -> int:
    """Classical order of the Weyl group of a product label (used in tests)."""
    from math import factorial

    total = 1
    for p in re.split(r"[x×+*]", label):
        kind, l = _LABEL_RE.match(p.upper()).groups()
        l = int(l)
        total *= {
            "A": factorial(l + 1),
            "B": 2**l * factorial(l),
            "C": 2**l * factorial(l),
            "D": 2 ** (l - 1) * factorial(l),
            "G": 12,
            "F": 1152,
        }[kind]
    return total


def lattice_coordinates(lattice: Sequence[WeightVector], v: Sequence) -> Optional[tuple]:
    """Coordinates of ``v`` in the lattice basis when they are all integers, else None."""
    c = solve_in_span(list(lattice), WeightVector(v))
    if c is None or any(x.denominator != 1 for x in c):
        return None
    return c


def is_dominant_integral(data: RootSystemData, lattice: Sequence[WeightVector], mu: Sequence) -> bool:
    """``mu`` is in the lattice and pairs with every positive coroot in a nonnegative integer."""
    if lattice_coordinates(lattice, mu) is None:
        return False
    return first_violated_root(data, mu) is None


def first_violated_root(data: RootSystemData, mu: Sequence) -> Optional[WeightVector]:
    """The first positive root whose coroot pairing with ``mu`` is not a nonnegative integer."""
    for a in data.positive:
        c = coroot_pairing(data.form, mu, a)
        if c < 0 or c.denominator != 1:
            return a
    return None
