"""Property suites shared by the command line and the test suite.

Each suite returns a list of :class:`PropertyResult`; a suite passes when
every result has no failures.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Optional

from . import chamber, kstruct, spin
from .clifford import clifford_model, clifford_structure_checks
from .exact import WeightVector, inner, norm2, vsum
from .kstruct import RealFormData
from .rootsys import RootSystemData, chambers_containing, dominant_representative

SUITES = ("projections", "thm6.7", "prop3.1c", "spin", "clifford")
MAX_FAILURES_KEPT = 5


@dataclass
class PropertyResult:
    name: str
    checked: int = 0
    failures: list = field(default_factory=list)
    failed: int = 0

    def check(self, ok: bool, detail: Callable[[], str] | str = "") -> None:
        self.checked += 1
        if not ok:
            self.failed += 1
            if len(self.failures) < MAX_FAILURES_KEPT:
                self.failures.append(detail() if callable(detail) else detail)

    @property
    def ok(self) -> bool:
        return self.failed == 0 and self.checked > 0

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        out = f"{status}  {self.name}: {self.checked - self.failed}/{self.checked}"
        if self.failures:
            out += "  first failure: " + self.failures[0]
        return out


# ----------------------------------------------------------------- random data


def random_rational(rng: random.Random, bound: int = 12, max_den: int = 6) -> Fraction:
    return Fraction(rng.randint(-bound * max_den, bound * max_den), rng.randint(1, max_den))


def random_vector(rng: random.Random, n: int, **kw) -> WeightVector:
    return WeightVector(random_rational(rng, **kw) for _ in range(n))


def random_dominant(rng: random.Random, data: RootSystemData, bound: int = 4) -> WeightVector:
    """A nonnegative rational combination of fundamental weights plus a central vector."""
    v = vsum((Fraction(rng.randint(0, bound * 3), 3) * xi for xi in data.fundamental), data.rank)
    for z in data.central_basis:
        v = v + Fraction(rng.randint(-bound * 2, bound * 2), 2) * z
    return v


# ----------------------------------------------------------------- projections


def projection_suite(data: RootSystemData, samples: int = 1000, seed: int = 0) -> list[PropertyResult]:
    rng = random.Random(seed)
    n = data.rank
    cert = PropertyResult("projection certificate")
    idem = PropertyResult("projection idempotent")
    nonexp = PropertyResult("projection nonexpansive")
    wall = PropertyResult("P(s_a v - gamma) lies on the wall of a")
    assoc = PropertyResult("P(v-g-d) = P(P(v-g)-d)")
    compose = PropertyResult("T_(g+d) = T_g o T_d")
    indep = PropertyResult("T_gamma chamber independent")
    box = PropertyResult("rho box agrees with rho hull")
    prev = None
    for _ in range(samples):
        v = random_vector(rng, n)
        c = chamber.project_onto_chamber(data, v)
        cert.check(c.validate(data), lambda: f"certificate rejected at {v}")
        idem.check(chamber.project(data, c.c0) == c.c0, lambda: f"not idempotent at {v}")
        if prev is not None:
            pv, pc = prev
            lhs = norm2(data.form, c.c0 - pc)
            nonexp.check(lhs <= norm2(data.form, v - pv), lambda: f"expands the pair {v}, {pv}")
        prev = (v, c.c0)

        gamma = random_dominant(rng, data)
        delta = random_dominant(rng, data)
        for i, a in enumerate(data.simple):
            u = v if inner(data.form, v, a) <= 0 else v - (2 * inner(data.form, v, a) / inner(data.form, a, a)) * a
            wall.check(
                inner(data.form, chamber.project(data, u - gamma), a) == 0,
                lambda: f"<P({u} - {gamma}), {a}> != 0",
            )
        vd, _ = dominant_representative(data, v)
        lhs = chamber.project(data, vd - gamma - delta)
        rhs = chamber.project(data, chamber.project(data, vd - gamma) - delta)
        assoc.check(lhs == rhs, lambda: f"fails for v={vd}, gamma={gamma}, delta={delta}")
        compose.check(
            chamber.t_gamma(data, gamma + delta, v) == chamber.t_gamma(data, gamma, chamber.t_gamma(data, delta, v)),
            lambda: f"fails for v={v}, gamma={gamma}, delta={delta}",
        )
        # a weight on walls: project, then move by a random Weyl element
        w = rng.choice(data.weyl_group)
        on_walls = w.apply(chamber.project(data, v - gamma))
        values = {chamber.t_gamma_in_chamber(data, delta, on_walls, x) for x in chambers_containing(data, on_walls)}
        indep.check(len(values) == 1, lambda: f"{len(values)} different values at {on_walls}")
        r = data.semisimple_part(v) / 4
        r_plus, _ = dominant_representative(data, r)
        box.check(
            chamber.rho_box_membership(data, r) == chamber.in_hull_of_orbit(data, r_plus, data.rho),
            lambda: f"disagree at {r}",
        )
    return [cert, idem, nonexp, wall, assoc, compose, indep, box]


# ----------------------------------------------------------------- unitarily small K-types


def seven_way_suite(rf: RealFormData, weights: Optional[Iterable] = None) -> list[PropertyResult]:
    agree = PropertyResult(f"{rf.name}: conditions b-g agree")
    lam = PropertyResult(f"{rf.name}: lambda_u = T_rho(lambda_a)")
    sing = PropertyResult(f"{rf.name}: lambda_u singularizes lambda_a")
    factor = PropertyResult(f"{rf.name}: lambda_u - mu_z from the semisimple part")
    weights = kstruct.seven_way_range(rf) if weights is None else [WeightVector(w) for w in weights]
    for mu in weights:
        flags = kstruct.condition_flags(rf, mu)
        agree.check(len(set(flags.values())) == 1, lambda: f"{mu}: {flags}")
        la = kstruct.lambda_a(rf, mu)
        lu = kstruct.lambda_u(rf, mu)
        lam.check(chamber.t_gamma(rf.g, rf.g.rho, la) == lu, lambda: f"at {mu}")
        sing.check(kstruct.is_singularization(rf, lu, la), lambda: f"at {mu}")
        mu_z = rf.g.central_part(mu)
        factor.check(
            lu - mu_z == kstruct._lambda_u_raw(rf, mu - mu_z),
            lambda: f"at {mu}",
        )
    return [agree, lam, sing, factor]


def default_lambda_u_values(rf: RealFormData, limit: int = 4) -> list[WeightVector]:
    """A few nonzero values of lambda_u, taken from K-types just outside the unitarily small range."""
    seen = []
    r = kstruct.zonotope_radius(rf) + 2
    for mu in kstruct.dominant_ktypes_in_ball(rf, WeightVector.zero(rf.rank), r * r):
        lu = kstruct.lambda_u(rf, mu)
        if not lu.is_zero() and lu not in seen:
            seen.append(lu)
    seen.sort(key=lambda v: (norm2(rf.form, v), tuple(v)))
    return seen[:limit]


def bijection_suite(rf: RealFormData, values: Optional[Iterable] = None) -> list[PropertyResult]:
    res = PropertyResult(f"{rf.name}: weight shift is a bijection")
    values = default_lambda_u_values(rf) if values is None else [WeightVector(v) for v in values]
    for lu in values:
        report = kstruct.check_bottom_layer_bijection(rf, lu)
        res.check(
            report.ok,
            lambda: f"lambda_u={lu}: {'; '.join(report.failures)}",
        )
    return [res]


# ----------------------------------------------------------------- spin


def spin_suite(rf: RealFormData) -> list[PropertyResult]:
    out = []
    sq = PropertyResult(f"{rf.name}: wedge p = spin x spin")
    sq.check(spin.wedge_equals_spin_square(rf))
    out.append(sq)

    hw = PropertyResult(f"{rf.name}: spin highest weights are the rho_n")
    try:
        spin.spin_highest_weights(rf)
        hw.check(True)
    except RuntimeError as exc:
        hw.check(False, str(exc))
    out.append(hw)

    half = PropertyResult(f"{rf.name}: spin weights in the half zonotope")
    for w in spin.spin_weights(rf):
        half.check(spin.in_half_zonotope(rf, w), lambda: str(w))
    out.append(half)

    wedge = PropertyResult(f"{rf.name}: K-types in wedge p are unitarily small")
    for w in spin.wedge_p_weights(rf):
        if kstruct.is_dominant_integral_for_k(rf, w):
            wedge.check(kstruct.is_unitarily_small(rf, w), lambda: str(w))
    out.append(wedge)

    hull = PropertyResult(f"{rf.name}: mu_2 + rho_c in the rho hull")
    for mu2 in spin.half_zonotope_dominant_weights(rf):
        hull.check(spin.rho_hull_step_holds(rf, mu2), lambda: str(mu2))
    out.append(hull)

    dirac = PropertyResult(f"{rf.name}: Dirac equality at (rho_n, rho)")
    for s in rf.positive_systems:
        rho_n = rf.two_rho_n(s) / 2
        dirac.check(spin.dirac_square_eigenvalue(rf, rho_n, s.rho) == 0, lambda: f"system {s.positive}")
    out.append(dirac)

    if not rf.g.central_basis:
        agree = PropertyResult(f"{rf.name}: spin constituent test = unitarily small")
        for mu in kstruct.seven_way_range(rf):
            agree.check(
                spin.spin_constituent_test(rf, mu) == kstruct.is_unitarily_small(rf, mu),
                lambda: str(mu),
            )
        out.append(agree)
    return out


def clifford_suite(dims: Iterable[int] = range(1, 9)) -> list[PropertyResult]:
    out = []
    for m in dims:
        rep = clifford_structure_checks(clifford_model(m))
        res = PropertyResult(f"Clifford model m={m}")
        for name, ok in rep.checks.items():
            res.check(ok, name)
        out.append(res)
    return out


def run_suite(name: str, rf: Optional[RealFormData], **kw) -> list[PropertyResult]:
    if name == "projections":
        return projection_suite(rf.g, samples=kw.get("samples", 1000), seed=kw.get("seed", 0))
    if name == "thm6.7":
        return seven_way_suite(rf)
    if name == "prop3.1c":
        return bijection_suite(rf, kw.get("lambda_u"))
    if name == "spin":
        return spin_suite(rf)
    if name == "clifford":
        return clifford_suite(kw.get("dims", range(1, 9)))
    raise ValueError(f"unknown suite {name!r}")
