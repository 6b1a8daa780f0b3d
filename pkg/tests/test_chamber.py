from fractions import Fraction as F
from itertools import combinations

import pytest
from hypothesis import given, strategies as st

from ktypes.chamber import (
    in_hull_of_orbit,
    project,
    project_onto_chamber,
    rho_box_membership,
    t_gamma,
    t_gamma_in_chamber,
)
from ktypes.exact import WeightVector, inner, lp_feasible, norm2, solve_linear, vec, vsum
from ktypes.rootsys import build_from_cartan_label, build_from_roots, chambers_containing, weyl_group
from strategies import vectors

LABELS = ["A1", "A2", "B2", "G2", "A3", "B3", "A1xA1"]


def c2_ref():
    c2 = build_from_cartan_label("C2")
    return build_from_roots(c2.roots, c2.form, [vec(2, 0), vec(0, 2), vec(1, 1), vec(1, -1)])


def nearest_by_generators(data, v):
    """Closest point of the chamber, searched over faces spanned by fundamental weights and the center.

    For each subset of fundamental weights, project orthogonally onto the span of
    that subset together with the central directions; keep candidates whose
    fundamental-weight coefficients are nonnegative and return the nearest one.
    """
    v = WeightVector(v)
    best = None
    for size in range(len(data.fundamental) + 1):
        for subset in combinations(range(len(data.fundamental)), size):
            gens = [data.fundamental[i] for i in subset] + list(data.central_basis)
            if gens:
                gram = [[inner(data.form, a, b) for b in gens] for a in gens]
                rhs = [inner(data.form, a, v) for a in gens]
                c = solve_linear(gram, rhs)
                if any(x < 0 for x in c[: len(subset)]):
                    continue
                cand = vsum((x * g for x, g in zip(c, gens)), data.rank)
            else:
                cand = WeightVector.zero(data.rank)
            d = norm2(data.form, v - cand)
            if best is None or d < best[0]:
                best = (d, cand)
    return best[1]


def hull_by_lp(data, v, gamma):
    """Convex-combination LP over the explicit orbit of gamma."""
    orbit = sorted({w.apply(gamma) for w in weyl_group(data)})
    gens = [WeightVector(tuple(p) + (1,)) for p in orbit]
    k = len(gens)
    return lp_feasible(gens, [0] * k, [None] * k, WeightVector(tuple(v) + (1,))) is not None


def test_projection_examples():
    a1 = build_from_cartan_label("A1")
    assert project(a1, vec(-3)) == vec(0)
    assert project_onto_chamber(a1, vec(5)).active == ()
    c = project_onto_chamber(c2_ref(), vec(4, -1))
    assert c.c0 == vec(4, 0)
    data = c2_ref()
    e = vsum((s * a for s, a in zip(c.slack, data.simple)), 2)
    assert e == vec(0, 1) and e == F(1, 2) * vec(0, 2)


def test_t_gamma_examples():
    a1 = build_from_cartan_label("A1")
    assert t_gamma(a1, vec(2), vec(3)) == vec(1)
    assert t_gamma(a1, vec(1), vec(2)) == vec(1)
    assert t_gamma(a1, vec(2), vec(-5)) == vec(-3)
    with pytest.raises(ValueError):
        t_gamma(a1, vec(-1), vec(3))
    b2 = build_from_cartan_label("B2")
    assert t_gamma(b2, b2.rho, b2.rho).is_zero()


def test_hull_examples():
    a1 = build_from_cartan_label("A1")
    assert in_hull_of_orbit(a1, vec(1), vec(1))
    assert not in_hull_of_orbit(a1, vec(2), vec(1))
    assert rho_box_membership(a1, vec(0))
    assert not rho_box_membership(a1, vec(F(3, 2)))
    data = c2_ref()
    assert rho_box_membership(data, data.rho)


def test_central_parts_never_share_hulls():
    u = build_from_cartan_label("A1", central_rank=1)
    assert not in_hull_of_orbit(u, vec(1, 0), vec(1, 1))
    assert in_hull_of_orbit(u, vec(0, 1), vec(1, 0))


@pytest.mark.parametrize("label", LABELS)
@given(data=st.data())
def test_projection_matches_generator_oracle(label, data):
    rs = build_from_cartan_label(label)
    v = data.draw(vectors(rs.rank))
    cert = project_onto_chamber(rs, v)
    assert cert.validate(rs)
    assert cert.c0 == nearest_by_generators(rs, v)


@pytest.mark.parametrize("label", ["A1", "A2", "B2", "G2"])
@given(data=st.data())
def test_hull_matches_orbit_lp(label, data):
    rs = build_from_cartan_label(label)
    gamma = vsum((F(data.draw(st.integers(0, 3))) * xi for xi in rs.fundamental), rs.rank)
    v = data.draw(vectors(rs.rank, st.builds(F, st.integers(-8, 8), st.integers(1, 2))))
    assert in_hull_of_orbit(rs, v, gamma) == hull_by_lp(rs, v, gamma)


@pytest.mark.parametrize("label", ["A2", "B2", "G2", "A3"])
@given(data=st.data())
def test_projection_properties(label, data):
    rs = build_from_cartan_label(label)
    v = data.draw(vectors(rs.rank))
    w = data.draw(vectors(rs.rank))
    pv, pw = project(rs, v), project(rs, w)
    assert project(rs, pv) == pv
    assert norm2(rs.form, pv - pw) <= norm2(rs.form, v - w)


@pytest.mark.parametrize("label", ["A2", "B2", "G2"])
@given(data=st.data())
def test_reflected_wall_and_composition(label, data):
    rs = build_from_cartan_label(label)
    coef = st.integers(0, 4).map(F)
    gamma = vsum((data.draw(coef) * xi for xi in rs.fundamental), rs.rank)
    delta = vsum((data.draw(coef) * xi for xi in rs.fundamental), rs.rank)
    v = data.draw(vectors(rs.rank))
    for a in rs.simple:
        if inner(rs.form, v, a) <= 0:
            assert inner(rs.form, project(rs, v - gamma), a) == 0
    vd = vsum((data.draw(coef) * xi for xi in rs.fundamental), rs.rank)
    assert project(rs, vd - gamma - delta) == project(rs, project(rs, vd - gamma) - delta)
    assert t_gamma(rs, gamma + delta, v) == t_gamma(rs, gamma, t_gamma(rs, delta, v))


@pytest.mark.parametrize("label", ["A2", "B2", "G2"])
def test_t_gamma_independent_of_chamber_on_walls(label):
    rs = build_from_cartan_label(label)
    gamma = rs.rho
    for xi in list(rs.fundamental) + [WeightVector.zero(rs.rank)]:
        for w in weyl_group(rs):
            v = w.apply(3 * xi)
            values = {t_gamma_in_chamber(rs, gamma, v, x) for x in chambers_containing(rs, v)}
            assert values == {t_gamma(rs, gamma, v)}


@pytest.mark.parametrize("label", ["A2", "B2", "G2"])
@given(data=st.data())
def test_rho_box_equals_rho_hull(label, data):
    rs = build_from_cartan_label(label)
    r = data.draw(vectors(rs.rank, st.builds(F, st.integers(-9, 9), st.integers(1, 4))))
    assert rho_box_membership(rs, r) == in_hull_of_orbit(rs, r, rs.rho)
