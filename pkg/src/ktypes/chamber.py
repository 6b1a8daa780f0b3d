"""Nearest-point projection onto a closed Weyl chamber, the T_gamma maps, and orbit-hull tests."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .exact import WeightVector, inner, invert, lp_feasible, solve_linear, vsum
from .rootsys import RootSystemData, dominant_representative


class ProjectionError(RuntimeError):
    pass


@dataclass(frozen=True)
class ProjectionCertificate:
    """Result of projecting ``v`` onto the closed chamber.

    ``slack`` holds the nonnegative simple-root coefficients of ``c0 - v``;
    ``active`` lists the simple-root indices of the walls containing ``c0``
    that were used in the solve.
    """

    v: WeightVector
    c0: WeightVector
    slack: tuple
    active: tuple

    def validate(self, data: RootSystemData) -> bool:
        if any(s < 0 for s in self.slack):
            return False
        if not data.is_dominant(self.c0):
            return False
        e = vsum((s * a for s, a in zip(self.slack, data.simple)), data.rank)
        if self.c0 - self.v != e:
            return False
        return inner(data.form, e, self.c0) == 0


def _subset_inverse(data: RootSystemData, subset: tuple) -> list:
    cache = data.__dict__.setdefault("_proj_inverse_cache", {})
    inv = cache.get(subset)
    if inv is None:
        g = data.simple_gram
        inv = invert([[g[i][j] for j in subset] for i in subset])
        cache[subset] = inv
    return inv


def project_onto_chamber(data: RootSystemData, v: Sequence) -> ProjectionCertificate:
    """Exact closest point of the closed dominant chamber to ``v``, with its optimality certificate.

    Tries active wall sets in order of size; for a set ``S`` the candidate is
    ``v + sum_{i in S} s_i alpha_i`` lying on the walls in ``S``. The first
    candidate with ``s >= 0`` that is dominant is accepted; by uniqueness of the
    nearest point it is the answer.
    """
    v = WeightVector(v)
    l = data.semisimple_rank
    pair = data.simple_pairings(v)
    g = data.simple_gram
    for size in range(l + 1):
        for subset in combinations(range(l), size):
            if size == 0:
                if all(p >= 0 for p in pair):
                    cert = ProjectionCertificate(v, v, (Fraction(0),) * l, ())
                    if cert.validate(data):
                        return cert
                continue
            inv = _subset_inverse(data, subset)
            # want <v + sum s_j a_j, a_i> = 0 for i in S  =>  G_S s = -pair_S
            s = [-sum((inv[a][b] * pair[subset[b]] for b in range(size)), Fraction(0)) for a in range(size)]
            if any(x < 0 for x in s):
                continue
            ok = True
            for i in range(l):
                if i in subset:
                    continue
                val = pair[i] + sum((s[a] * g[i][subset[a]] for a in range(size)), Fraction(0))
                if val < 0:
                    ok = False
                    break
            if not ok:
                continue
            slack = [Fraction(0)] * l
            for a, i in enumerate(subset):
                slack[i] = s[a]
            c0 = v + vsum((x * data.simple[i] for i, x in zip(subset, s)), data.rank)
            cert = ProjectionCertificate(v, c0, tuple(slack), subset)
            if cert.validate(data):
                return cert
    raise ProjectionError(f"no active set produced a valid projection certificate for {v}")


def project(data: RootSystemData, v: Sequence) -> WeightVector:
    return project_onto_chamber(data, v).c0


def t_gamma(data: RootSystemData, gamma: Sequence, v: Sequence) -> WeightVector:
    """``w . P(v_plus - gamma)`` where ``w . v_plus = v`` with ``v_plus`` dominant."""
    gamma = WeightVector(gamma)
    if not data.is_dominant(gamma):
        raise ValueError(f"gamma = {gamma} is not dominant")
    v_plus, w = dominant_representative(data, v)
    return w.apply(project(data, v_plus - gamma))


def t_gamma_in_chamber(data: RootSystemData, gamma: Sequence, v: Sequence, w) -> WeightVector:
    """``w . P(w^{-1} v - gamma)`` for a chosen chamber ``w`` with ``w^{-1} v`` dominant."""
    winv_v = _apply_inverse(w, WeightVector(v))
    if not data.is_dominant(winv_v):
        raise ValueError("the chosen chamber does not contain v")
    return w.apply(project(data, winv_v - WeightVector(gamma)))


def _apply_inverse(w, v: WeightVector) -> WeightVector:
    # Weyl matrices are orthogonal for the form, but not necessarily in coordinates; solve directly.
    x = solve_linear([list(r) for r in w.matrix], list(v))
    return WeightVector(x)


def in_hull_of_orbit(data: RootSystemData, v: Sequence, gamma: Sequence) -> bool:
    """Whether ``v`` lies in the convex hull of the Weyl orbit of the dominant weight ``gamma``.

    Equivalent to: ``gamma - v_plus`` is a nonnegative combination of simple roots
    (so in particular has zero central part).
    """
    gamma = WeightVector(gamma)
    if not data.is_dominant(gamma):
        raise ValueError(f"gamma = {gamma} is not dominant")
    v_plus, _ = dominant_representative(data, v)
    diff = gamma - v_plus
    if not data.central_part(diff).is_zero():
        return False
    coeffs = data.simple_coordinates(diff)
    return coeffs is not None and all(c >= 0 for c in coeffs)


def rho_box_membership(data: RootSystemData, r: Sequence) -> bool:
    """Whether ``r = sum c_alpha alpha`` over positive roots with every ``|c_alpha| <= 1/2``."""
    half = Fraction(1, 2)
    k = len(data.positive)
    return lp_feasible(list(data.positive), [-half] * k, [half] * k, WeightVector(r)) is not None
