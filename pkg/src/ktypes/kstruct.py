"""Real-form data graded into compact and noncompact roots, the lambda_a / lambda_u maps,
unitarily small K-types, theta-stable parabolics and the bottom-layer weight shift."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Optional, Sequence, Union

from .chamber import in_hull_of_orbit, t_gamma
from .exact import (
    GramForm,
    WeightVector,
    inner,
    invert,
    lp_feasible,
    norm2,
    solve_in_span,
    sqrt_sum_bound_holds,
    sqrt_upper,
    vsum,
)
from .rootsys import (
    RootSystemData,
    RootSystemError,
    build_from_roots,
    dominant_representative,
    first_violated_root,
    lattice_coordinates,
    lex_positive,
    positive_systems_containing,
)

CONDITIONS = ("b", "c", "d", "e", "f", "g")


class InvalidKType(ValueError):
    """Raised when a weight is not the highest weight of a K-type."""


class RealFormError(ValueError):
    pass


@dataclass(frozen=True)
class KType:
    """A K-type, recorded by its highest weight."""

    mu: WeightVector

    def __post_init__(self):
        object.__setattr__(self, "mu", WeightVector(self.mu))


MuLike = Union[KType, Sequence]


def _mu(mu: MuLike) -> WeightVector:
    return mu.mu if isinstance(mu, KType) else WeightVector(mu)


@dataclass(frozen=True, eq=False)
class RealFormData:
    """Roots of ``g`` relative to a compact Cartan, split into compact and noncompact ones.

    ``g`` carries the reference positive system, which always contains ``k_positive``.
    """

    g: RootSystemData
    compact: tuple
    noncompact: tuple
    k_positive: tuple
    lattice: tuple
    two_rho_c: WeightVector
    name: str = ""

    @property
    def rank(self) -> int:
        return self.g.rank

    @property
    def form(self) -> GramForm:
        return self.g.form

    @cached_property
    def compact_set(self) -> frozenset:
        return frozenset(self.compact)

    @cached_property
    def noncompact_set(self) -> frozenset:
        return frozenset(self.noncompact)

    @cached_property
    def k_data(self) -> RootSystemData:
        """The compact root system with positive system ``k_positive``."""
        return build_from_roots(self.compact, self.form, self.k_positive)

    @cached_property
    def rho_c(self) -> WeightVector:
        return self.two_rho_c / 2

    @cached_property
    def positive_systems(self) -> tuple:
        """All positive systems for ``g`` containing ``k_positive``, reference system first."""
        systems = positive_systems_containing(self.g, self.k_positive)
        ref = self.g.positive_set
        systems.sort(key=lambda d: d.positive_set != ref)
        return tuple(systems)

    def positive_noncompact(self, system: Optional[RootSystemData] = None) -> list[WeightVector]:
        system = system or self.g
        return [b for b in system.positive if b in self.noncompact_set]

    def two_rho_n(self, system: Optional[RootSystemData] = None) -> WeightVector:
        return vsum(self.positive_noncompact(system), self.rank)

    @property
    def rho(self) -> WeightVector:
        return self.g.rho

    @property
    def rho_n(self) -> WeightVector:
        return self.two_rho_n() / 2


def make_real_form(
    roots: Iterable,
    form: GramForm,
    compact: Iterable,
    k_positive: Iterable,
    lattice: Iterable,
    positive_roots: Optional[Iterable] = None,
    name: str = "",
) -> RealFormData:
    """Validate the grading and lattice data and pick a reference positive system."""
    roots = [WeightVector(r) for r in roots]
    compact = [WeightVector(r) for r in compact]
    k_positive = [WeightVector(r) for r in k_positive]
    lattice = tuple(WeightVector(b) for b in lattice)
    root_set = set(roots)
    compact_set = set(compact)
    if not compact_set <= root_set:
        raise RealFormError("compact roots must be roots")
    noncompact = sorted(root_set - compact_set)
    n = form.rank
    if len(lattice) != n:
        raise RealFormError("the lattice basis must have one vector per coordinate")
    if _rank(lattice) != n:
        raise RealFormError("the lattice basis must be linearly independent")
    for r in roots:
        if lattice_coordinates(lattice, r) is None:
            raise RealFormError(f"root {r} is not in the character lattice")
    for a in roots:
        for b in roots:
            s = a + b
            if s in root_set:
                ka, kb, ks = a in compact_set, b in compact_set, s in compact_set
                if ks != (ka == kb):
                    raise RealFormError(f"grading violated: {a} + {b} = {s}")
    try:
        k_data = build_from_roots(compact, form, k_positive)
    except RootSystemError as exc:
        raise RealFormError(f"compact roots: {exc}") from exc
    if positive_roots is not None:
        positive = [WeightVector(r) for r in positive_roots]
        if not set(k_positive) <= set(positive):
            raise RealFormError("the reference positive system must contain the compact positive roots")
        g = build_from_roots(roots, form, positive)
    else:
        base = build_from_roots(roots, form, lex_positive(roots))
        systems = positive_systems_containing(base, k_positive)
        g = systems[0]
        g = build_from_roots(roots, form, g.positive)
    two_rho_c = vsum(k_data.positive, n)
    rf = RealFormData(
        g=g,
        compact=tuple(sorted(compact_set)),
        noncompact=tuple(noncompact),
        k_positive=tuple(sorted(k_positive)),
        lattice=lattice,
        two_rho_c=two_rho_c,
        name=name,
    )
    rf.__dict__["k_data"] = k_data
    return rf


def _rank(vectors) -> int:
    from .exact import rref

    return len(rref([list(v) for v in vectors])[1]) if vectors else 0


# ----------------------------------------------------------------- basic predicates


def central_part(rf: RealFormData, mu: MuLike) -> WeightVector:
    return rf.g.central_part(_mu(mu))


def violated_compact_root(rf: RealFormData, mu: MuLike) -> Optional[WeightVector]:
    return first_violated_root(rf.k_data, _mu(mu))


def is_dominant_integral_for_k(rf: RealFormData, mu: MuLike) -> bool:
    mu = _mu(mu)
    if len(mu) != rf.rank:
        return False
    return lattice_coordinates(rf.lattice, mu) is not None and violated_compact_root(rf, mu) is None


def validate_ktype(rf: RealFormData, mu: MuLike) -> WeightVector:
    mu = _mu(mu)
    if len(mu) != rf.rank:
        raise InvalidKType(f"weight {mu} has {len(mu)} coordinates, expected {rf.rank}")
    if lattice_coordinates(rf.lattice, mu) is None:
        raise InvalidKType(f"weight {mu} is not in the character lattice")
    bad = violated_compact_root(rf, mu)
    if bad is not None:
        raise InvalidKType(f"weight {mu} is not dominant integral for the compact root {bad}")
    return mu


# ----------------------------------------------------------------- lambda maps


def _lambda_a_raw(rf: RealFormData, mu: WeightVector) -> WeightVector:
    return t_gamma(rf.g, rf.g.rho, mu + rf.two_rho_c)


def _lambda_u_raw(rf: RealFormData, mu: WeightVector) -> WeightVector:
    return t_gamma(rf.g, rf.g.two_rho, mu + rf.two_rho_c)


def lambda_a(rf: RealFormData, mu: MuLike) -> WeightVector:
    """``T_rho(mu + 2 rho_c)``."""
    return _lambda_a_raw(rf, validate_ktype(rf, mu))


def lambda_u(rf: RealFormData, mu: MuLike) -> WeightVector:
    """``T_{2 rho}(mu + 2 rho_c)``."""
    return _lambda_u_raw(rf, validate_ktype(rf, mu))


def lambda_of_infinitesimal_character(rf: RealFormData, re_phi: Sequence) -> WeightVector:
    re_phi = WeightVector(re_phi)
    if not rf.g.is_dominant(re_phi):
        raise ValueError(f"{re_phi} is not dominant for the reference positive system")
    return t_gamma(rf.g, rf.g.rho, re_phi)


def is_singularization(rf: RealFormData, lam: Sequence, lam_a: Sequence) -> bool:
    """Every root positive on ``lam`` is also positive on ``lam_a``."""
    lam, lam_a = WeightVector(lam), WeightVector(lam_a)
    return all(inner(rf.form, lam_a, a) > 0 for a in rf.g.roots if inner(rf.form, lam, a) > 0)


# ----------------------------------------------------------------- theta-stable parabolics


@dataclass(frozen=True)
class ThetaParabolic:
    lam: WeightVector
    levi_roots: tuple
    u_roots: tuple
    two_rho_u: WeightVector
    two_rho_u_cap_p: WeightVector
    S: int
    R: int


def theta_parabolic(rf: RealFormData, lam: Sequence) -> ThetaParabolic:
    lam = WeightVector(lam)
    levi, u = [], []
    for a in rf.g.roots:
        p = inner(rf.form, a, lam)
        if p == 0:
            levi.append(a)
        elif p > 0:
            u.append(a)
    u_p = [a for a in u if a in rf.noncompact_set]
    return ThetaParabolic(
        lam=lam,
        levi_roots=tuple(levi),
        u_roots=tuple(u),
        two_rho_u=vsum(u, rf.rank),
        two_rho_u_cap_p=vsum(u_p, rf.rank),
        S=len(u) - len(u_p),
        R=len(u_p),
    )


def subgroup_real_form(rf: RealFormData, lam: Sequence) -> RealFormData:
    """The real form attached to the roots orthogonal to ``lam``, with inherited grading."""
    lam = WeightVector(lam)
    levi = [a for a in rf.g.roots if inner(rf.form, a, lam) == 0]
    levi_set = set(levi)
    return make_real_form(
        roots=levi,
        form=rf.form,
        compact=[a for a in rf.compact if a in levi_set],
        k_positive=[a for a in rf.k_positive if a in levi_set],
        lattice=rf.lattice,
        positive_roots=[a for a in rf.g.positive if a in levi_set],
        name=f"{rf.name}[{lam}]" if rf.name else "",
    )


def bottom_layer_weight_shift(rf: RealFormData, lam: Sequence, mu_levi: Sequence) -> Optional[KType]:
    """``mu_levi + 2 rho(u cap p)`` when that is K-dominant integral, else None."""
    lam = WeightVector(lam)
    sub = subgroup_real_form(rf, lam)
    mu_levi = validate_ktype(sub, mu_levi)
    shifted = mu_levi + theta_parabolic(rf, lam).two_rho_u_cap_p
    return KType(shifted) if is_dominant_integral_for_k(rf, shifted) else None


# ----------------------------------------------------------------- unitarily small K-types


def _chamber_for(rf: RealFormData, mu: WeightVector) -> RootSystemData:
    """A positive system making ``mu + 2 rho_c`` dominant."""
    _, w = dominant_representative(rf.g, mu + rf.two_rho_c)
    return rf.g.transformed(w)


def _fundamental_bound(rf: RealFormData, system: RootSystemData, mu: WeightVector) -> bool:
    two_rho_n = rf.two_rho_n(system)
    return all(inner(rf.form, xi, mu) <= inner(rf.form, xi, two_rho_n) for xi in system.fundamental)


def _zonotope_witness(rf: RealFormData, gens: Sequence[WeightVector], target: WeightVector):
    k = len(gens)
    return lp_feasible(list(gens), [0] * k, [1] * k, target)


def us_condition(rf: RealFormData, mu: MuLike, which: str) -> bool:
    """One of the equivalent characterizations of a unitarily small K-type, evaluated literally."""
    mu = validate_ktype(rf, mu)
    return _condition(rf, mu, which)


def _condition(rf: RealFormData, mu: WeightVector, which: str) -> bool:
    mu_z = rf.g.central_part(mu)
    if which == "b":
        return _lambda_u_raw(rf, mu) == mu_z
    if which == "c":
        return in_hull_of_orbit(rf.g, _lambda_a_raw(rf, mu) - mu_z, rf.g.rho)
    if which == "d":
        return _fundamental_bound(rf, _chamber_for(rf, mu), mu)
    if which == "e":
        return all(_fundamental_bound(rf, s, mu) for s in rf.positive_systems)
    if which == "f":
        target = mu - mu_z
        return any(_zonotope_witness(rf, rf.positive_noncompact(s), target) is not None for s in rf.positive_systems)
    if which == "g":
        return _zonotope_witness(rf, rf.noncompact, mu - mu_z) is not None
    raise ValueError(f"unknown condition {which!r}; expected one of {', '.join(CONDITIONS)}")


class ConditionDisagreement(AssertionError):
    pass


def condition_flags(rf: RealFormData, mu: MuLike) -> dict:
    mu = validate_ktype(rf, mu)
    return {c: _condition(rf, mu, c) for c in CONDITIONS}


def is_unitarily_small(rf: RealFormData, mu: MuLike, self_check: bool = False) -> bool:
    """``lambda_u(mu)`` equals the central part of ``mu``.

    With ``self_check`` the other characterizations are evaluated too and any
    disagreement raises :class:`ConditionDisagreement`.
    """
    mu = validate_ktype(rf, mu)
    result = _condition(rf, mu, "b")
    if self_check:
        for c in CONDITIONS[1:]:
            if _condition(rf, mu, c) != result:
                raise ConditionDisagreement(f"condition ({c}) disagrees with (b) at {mu}")
    return result


def is_small(rf: RealFormData, mu: MuLike) -> bool:
    """``lambda_a(mu)`` is central."""
    la = lambda_a(rf, mu)
    return rf.g.semisimple_part(la).is_zero()


# ----------------------------------------------------------------- enumeration


def lattice_points_in_ball(rf: RealFormData, center: Sequence, radius2) -> list[WeightVector]:
    """All lattice points ``x`` with ``|x - center|^2 <= radius2``, in sorted order."""
    center = WeightVector(center)
    radius2 = Fraction(radius2)
    basis = list(rf.lattice)
    n = rf.rank
    gram = [[inner(rf.form, a, b) for b in basis] for a in basis]
    inv = invert(gram)
    c = solve_in_span(basis, center)
    ranges = []
    for j in range(n):
        half_width = sqrt_upper(radius2 * inv[j][j])
        lo = math.floor(c[j] - half_width)
        hi = math.ceil(c[j] + half_width)
        ranges.append(range(lo, hi + 1))
    out = []

    def rec(j, coords):
        if j == n:
            x = vsum((k * b for k, b in zip(coords, basis)), n)
            if norm2(rf.form, x - center) <= radius2:
                out.append(x)
            return
        for k in ranges[j]:
            rec(j + 1, coords + [k])

    rec(0, [])
    return sorted(out)


def dominant_ktypes_in_ball(rf: RealFormData, center: Sequence, radius2) -> list[WeightVector]:
    return [x for x in lattice_points_in_ball(rf, center, radius2) if violated_compact_root(rf, x) is None]


def zonotope_radius(rf: RealFormData) -> Fraction:
    """Upper bound for the length of any point of the noncompact zonotope."""
    return sum((sqrt_upper(norm2(rf.form, b)) for b in rf.positive_noncompact()), Fraction(0))


def _check_central(rf: RealFormData, mu_z: WeightVector) -> WeightVector:
    mu_z = WeightVector(mu_z)
    if len(mu_z) != rf.rank or not rf.g.semisimple_part(mu_z).is_zero():
        raise ValueError(f"{mu_z} is not central")
    return mu_z


def enumerate_unitarily_small(rf: RealFormData, mu_z: Sequence) -> list[KType]:
    """All unitarily small K-types with central part ``mu_z``, sorted by highest weight."""
    mu_z = _check_central(rf, mu_z)
    r = zonotope_radius(rf)
    out = []
    for mu in dominant_ktypes_in_ball(rf, mu_z, r * r):
        if rf.g.central_part(mu) == mu_z and _condition(rf, mu, "b"):
            out.append(KType(mu))
    return out


def enumerate_small(rf: RealFormData, mu_z: Sequence) -> list[KType]:
    """Small K-types with central part ``mu_z``; these are all unitarily small, so that set is searched."""
    return [k for k in enumerate_unitarily_small(rf, mu_z) if is_small(rf, k)]


def enumerate_B_lambda_u(rf: RealFormData, lam_u: Sequence) -> list[KType]:
    """All K-types ``mu`` with ``lambda_u(mu) == lam_u``; empty when ``lam_u`` is not a value of the map."""
    lam_u = WeightVector(lam_u)
    center = lam_u - rf.two_rho_c
    out = []
    for mu in dominant_ktypes_in_ball(rf, center, norm2(rf.form, rf.g.two_rho)):
        if _lambda_u_raw(rf, mu) == lam_u:
            out.append(KType(mu))
    return out


def seven_way_range(rf: RealFormData, central_bound=2) -> list[WeightVector]:
    """K-dominant lattice weights with ``|mu_s| <= max|2 rho_n| + |2 rho_c|`` and ``|mu_z| <= central_bound``.

    The maximum runs over positive systems containing the compact positive roots.
    """
    n2 = max(norm2(rf.form, rf.two_rho_n(s)) for s in rf.positive_systems)
    c2 = norm2(rf.form, rf.two_rho_c)
    central_bound = Fraction(central_bound)
    has_center = bool(rf.g.central_basis)
    r = sqrt_upper(n2) + sqrt_upper(c2) + (central_bound if has_center else 0)
    out = []
    for mu in dominant_ktypes_in_ball(rf, WeightVector.zero(rf.rank), r * r):
        mu_s = rf.g.semisimple_part(mu)
        if not sqrt_sum_bound_holds(norm2(rf.form, mu_s), n2, c2):
            continue
        if norm2(rf.form, mu - mu_s) > central_bound * central_bound:
            continue
        out.append(mu)
    return out


# ----------------------------------------------------------------- bottom-layer bijection


@dataclass
class BijectionReport:
    lam_u: WeightVector
    left: list
    right: list
    mapping: dict = field(default_factory=dict)
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def check_bottom_layer_bijection(rf: RealFormData, lam_u: Sequence) -> BijectionReport:
    """Compare the K-types with a given ``lambda_u`` on the subgroup and on the whole group.

    The weight shift by ``2 rho(u cap p)`` must be a well-defined bijection, and each
    member must satisfy ``T_rho(lambda_a(mu)) == lambda_u``.
    """
    lam_u = WeightVector(lam_u)
    sub = subgroup_real_form(rf, lam_u)
    left = [k.mu for k in enumerate_B_lambda_u(sub, lam_u)]
    right = [k.mu for k in enumerate_B_lambda_u(rf, lam_u)]
    report = BijectionReport(lam_u, left, right)
    shift = theta_parabolic(rf, lam_u).two_rho_u_cap_p
    right_set = set(right)
    for mu in left:
        image = mu + shift
        if not is_dominant_integral_for_k(rf, image):
            report.failures.append(f"image of {mu} is not K-dominant integral")
        elif image not in right_set:
            report.failures.append(f"image {image} of {mu} is not in the target set")
        report.mapping[mu] = image
    images = list(report.mapping.values())
    if len(set(images)) != len(images):
        report.failures.append("the weight shift is not injective")
    missing = right_set - set(images)
    if missing:
        report.failures.append(f"not onto: {sorted(missing)} have no preimage")
    for mu in right:
        if t_gamma(rf.g, rf.g.rho, _lambda_a_raw(rf, mu)) != lam_u:
            report.failures.append(f"T_rho(lambda_a({mu})) differs from lambda_u")
    if not left and not right:
        report.failures.append(f"{lam_u} is not a value of lambda_u")
    return report


def in_shifted_rho_hull(rf: RealFormData, lam_u: Sequence, re_phi: Sequence) -> bool:
    """Whether ``re_phi`` lies in ``lam_u`` plus the convex hull of the Weyl orbit of rho."""
    return in_hull_of_orbit(rf.g, WeightVector(re_phi) - WeightVector(lam_u), rf.g.rho)
