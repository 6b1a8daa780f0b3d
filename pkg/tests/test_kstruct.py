from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from ktypes import kstruct
from ktypes.chamber import t_gamma
from ktypes.config import BUNDLED, bundled_real_form
from ktypes.exact import WeightVector, lp_feasible, norm2, vec
from ktypes.kstruct import (
    InvalidKType,
    bottom_layer_weight_shift,
    central_part,
    check_bottom_layer_bijection,
    enumerate_B_lambda_u,
    enumerate_small,
    enumerate_unitarily_small,
    in_shifted_rho_hull,
    is_dominant_integral_for_k,
    is_singularization,
    is_small,
    is_unitarily_small,
    lambda_a,
    lambda_of_infinitesimal_character,
    lambda_u,
    subgroup_real_form,
    theta_parabolic,
    us_condition,
)
from oracles import sp4_unitarily_small, u11_lambda_u

sl2 = bundled_real_form("sl2")
sp4 = bundled_real_form("sp4")
u11 = bundled_real_form("u11")
su21 = bundled_real_form("su21")


def mus(ks):
    return sorted(k.mu for k in ks)


def test_k_dominance():
    assert all(is_dominant_integral_for_k(sl2, [n]) for n in range(-5, 6))
    assert not is_dominant_integral_for_k(sl2, [F(1, 2)])
    assert not is_dominant_integral_for_k(sp4, [1, 2])
    assert is_dominant_integral_for_k(sp4, [3, -3])
    with pytest.raises(InvalidKType, match=r"\(1,-1\)"):
        lambda_u(sp4, [1, 2])


def test_central_part():
    assert central_part(sp4, [3, 1]).is_zero()
    assert central_part(u11, [3, 0]) == vec(F(3, 2), F(3, 2))
    assert central_part(u11, [1, -1]).is_zero()


def test_lambda_examples():
    assert lambda_a(sl2, [0]) == vec(0)
    assert lambda_a(sl2, [2]) == vec(1)
    assert lambda_a(sl2, [1]) == vec(0)
    assert lambda_u(sl2, [5]) == vec(3)
    assert lambda_u(sp4, [3, -3]) == vec(1, -1)
    assert lambda_u(sp4, [5, -1]) == vec(2, 0)
    assert lambda_u(u11, [4, 0]) == vec(3, 1)


def test_theta_parabolic():
    tp = theta_parabolic(sp4, [0, 0])
    assert len(tp.levi_roots) == 8 and tp.u_roots == () and tp.S == tp.R == 0
    tp = theta_parabolic(sp4, [4, 0])
    assert set(tp.levi_roots) == {vec(0, 2), vec(0, -2)}
    assert set(tp.u_roots) == {vec(2, 0), vec(1, 1), vec(1, -1)}
    assert tp.two_rho_u_cap_p == vec(3, 1)
    assert (tp.S, tp.R) == (1, 2)
    tp = theta_parabolic(sl2, [3])
    assert tp.u_roots == (vec(2),) and tp.levi_roots == () and (tp.R, tp.S) == (1, 0)


def test_theta_parabolic_partition():
    for lam in [vec(1, 0), vec(2, 1), vec(1, 1), vec(0, 3)]:
        tp = theta_parabolic(sp4, lam)
        neg_u = {-a for a in tp.u_roots}
        assert set(tp.levi_roots) | set(tp.u_roots) | neg_u == set(sp4.g.roots)
        assert len(tp.levi_roots) + 2 * len(tp.u_roots) == len(sp4.g.roots)


def test_singularization_examples():
    assert is_singularization(sl2, [0], [5])
    assert is_singularization(sp4, [2, 1], [2, 1])
    assert not is_singularization(sl2, [1], [0])


def test_condition_examples():
    assert us_condition(sl2, [2], "g")
    assert not us_condition(sl2, [3], "d")
    assert not us_condition(sp4, [3, -3], "b")
    with pytest.raises(ValueError):
        us_condition(sl2, [0], "z")
    with pytest.raises(InvalidKType):
        us_condition(sp4, [0, 1], "b")


def test_unitarily_small_examples():
    assert [n for n in range(-6, 7) if is_unitarily_small(sl2, [n])] == [-2, -1, 0, 1, 2]
    assert is_unitarily_small(sp4, [3, -1])
    assert not is_unitarily_small(sp4, [4, 0])


def test_small_examples():
    assert [n for n in range(-6, 7) if is_small(sl2, [n])] == [-1, 0, 1]
    assert is_small(sl2, [0])
    assert mus(enumerate_small(sp4, [0, 0])) == sorted(
        vec(p, q) for p in range(-1, 2) for q in range(-1, p + 1) if p - q <= 1
    )


def test_enumerations():
    assert mus(enumerate_unitarily_small(sl2, [0])) == [vec(n) for n in range(-2, 3)]
    expected = sorted(vec(p, q) for p in range(-3, 4) for q in range(-3, p + 1) if sp4_unitarily_small(p, q))
    assert len(expected) == 25
    assert mus(enumerate_unitarily_small(sp4, [0, 0])) == expected
    for m in range(-4, 5):
        z = vec(F(m, 2), F(m, 2))
        got = mus(enumerate_unitarily_small(u11, z))
        want = sorted(vec(p, m - p) for p in range(-10, 11) if abs(2 * p - m) <= 2)
        assert got == want
    with pytest.raises(ValueError):
        enumerate_unitarily_small(u11, [1, 0])


def test_fibers():
    assert mus(enumerate_B_lambda_u(sl2, [3])) == [vec(5)]
    assert mus(enumerate_B_lambda_u(sl2, [0])) == [vec(n) for n in range(-2, 3)]
    assert mus(enumerate_B_lambda_u(sp4, [4, 0])) == [vec(7, b) for b in range(-1, 4)]
    assert enumerate_B_lambda_u(sl2, [F(1, 2)]) == []


def test_subgroup_real_form():
    assert set(subgroup_real_form(sp4, [0, 0]).g.roots) == set(sp4.g.roots)
    sub = subgroup_real_form(sp4, [4, 0])
    assert set(sub.g.roots) == {vec(0, 2), vec(0, -2)}
    assert set(sub.noncompact) == {vec(0, 2), vec(0, -2)}
    assert len(sub.g.central_basis) == 1
    assert subgroup_real_form(sl2, [1]).g.roots == ()


def test_bottom_layer_weight_shift():
    assert bottom_layer_weight_shift(sp4, [0, 0], [2, 1]).mu == vec(2, 1)
    assert bottom_layer_weight_shift(sp4, [4, 0], [4, 2]).mu == vec(7, 3)
    assert bottom_layer_weight_shift(sp4, [4, 0], [4, -2]).mu == vec(7, -1)
    # a shift that leaves the K-dominant cone vanishes
    assert bottom_layer_weight_shift(sp4, [0, 4], [-3, 4]) is None


@pytest.mark.parametrize("rf, lam, size", [(sp4, (4, 0), 5), (sl2, (3,), 1), (sl2, (-3,), 1), (sp4, (0, 0), 25)])
def test_bijection(rf, lam, size):
    rep = check_bottom_layer_bijection(rf, lam)
    assert rep.ok, rep.failures
    assert len(rep.left) == len(rep.right) == size


def test_bijection_reports_non_values():
    rep = check_bottom_layer_bijection(sl2, [F(1, 2)])
    assert not rep.ok


def test_shifted_rho_hull():
    assert in_shifted_rho_hull(sp4, [4, 0], vec(4, 0) + sp4.rho)
    assert in_shifted_rho_hull(sp4, [4, 0], [4, 0])
    assert not in_shifted_rho_hull(sl2, [0], [2])


def test_lambda_of_infinitesimal_character():
    assert lambda_of_infinitesimal_character(sp4, sp4.rho).is_zero()
    assert lambda_of_infinitesimal_character(sl2, [4]) == vec(3)
    with pytest.raises(ValueError):
        lambda_of_infinitesimal_character(sl2, [-4])
    # phi = lambda_u + rho(u) + w0 with w0 in the Levi rho-hull
    lam = vec(4, 0)
    rho_u = theta_parabolic(sp4, lam).two_rho_u / 2
    # the dominant half of the Levi segment {(0, t) : |t| <= 1}
    for t in [F(-1), F(-1, 2), F(0)]:
        phi = lam + rho_u + vec(0, t)
        assert lambda_of_infinitesimal_character(sp4, phi) == lam


@pytest.mark.parametrize("name", BUNDLED)
def test_wider_range_agreement(name):
    # twice the acceptance radius, so every form has K-types on both sides
    rf = bundled_real_form(name)
    r = 2 * (kstruct.zonotope_radius(rf) + 1)
    weights = kstruct.dominant_ktypes_in_ball(rf, WeightVector.zero(rf.rank), r * r)
    flags = [is_unitarily_small(rf, mu, self_check=True) for mu in weights]
    assert any(flags) and not all(flags)


def test_u11_formula_and_small_set():
    for p in range(-6, 7):
        for q in range(-6, 7):
            assert tuple(lambda_u(u11, [p, q])) == u11_lambda_u(p, q)
            assert is_unitarily_small(u11, [p, q]) == (abs(p - q) <= 2)


@pytest.mark.parametrize("name", ["sl2", "sp4", "su21"])
def test_semisimple_unitarily_small_nonempty(name):
    rf = bundled_real_form(name)
    ks = enumerate_unitarily_small(rf, WeightVector.zero(rf.rank))
    assert ks and all(lambda_u(rf, k).is_zero() for k in ks)


@pytest.mark.parametrize("name", ["sl2", "sp4"])
def test_trivial_ktype_minimizes_norm_in_zero_fiber(name):
    rf = bundled_real_form(name)
    fiber = enumerate_B_lambda_u(rf, WeightVector.zero(rf.rank))
    norms = {k.mu: norm2(rf.form, k.mu + rf.two_rho_c) for k in fiber}
    assert min(norms.values()) == norms[WeightVector.zero(rf.rank)]


def _sp4_weights():
    return st.tuples(st.integers(-9, 9), st.integers(-9, 9)).map(lambda t: vec(max(t), min(t)))


@given(_sp4_weights())
def test_lambda_relations_sp4(mu):
    la, lu = lambda_a(sp4, mu), lambda_u(sp4, mu)
    assert t_gamma(sp4.g, sp4.rho, la) == lu
    assert is_singularization(sp4, lu, la)
    is_unitarily_small(sp4, mu, self_check=True)


@given(st.tuples(st.integers(-9, 9), st.integers(-9, 9)))
def test_lambda_relations_su21(t):
    mu = vec(*t)
    if not is_dominant_integral_for_k(su21, mu):
        mu = vec(t[1], t[0])
    la, lu = lambda_a(su21, mu), lambda_u(su21, mu)
    assert t_gamma(su21.g, su21.rho, la) == lu
    assert is_singularization(su21, lu, la)
    is_unitarily_small(su21, mu, self_check=True)


@given(st.tuples(st.integers(-9, 9), st.integers(-9, 9)))
def test_central_factorization_u11(t):
    mu = vec(*t)
    mu_z = central_part(u11, mu)
    assert lambda_u(u11, mu) - mu_z == kstruct._lambda_u_raw(u11, mu - mu_z)


def test_norm_decreases_along_u_roots():
    # if lambda_u(mu) = lambda' + (nonnegative combination of u(lambda')-roots) then |lambda_u(mu)| >= |lambda'|
    for mu in [vec(7, 1), vec(6, -2), vec(8, 3), vec(5, 5)]:
        lu = lambda_u(sp4, mu)
        for k in enumerate_B_lambda_u(sp4, lu):
            assert lambda_u(sp4, k) == lu
        for lam_p in [vec(4, 0), vec(3, 0), vec(2, 2)]:
            tp = theta_parabolic(sp4, lam_p)

            n = len(tp.u_roots)
            if n and lp_feasible(list(tp.u_roots), [0] * n, [None] * n, lu - lam_p) is not None:
                assert norm2(sp4.form, lu) >= norm2(sp4.form, lam_p)
