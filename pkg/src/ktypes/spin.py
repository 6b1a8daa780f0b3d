"""Spin and exterior-algebra weights, K-characters, and Dirac-type predicates."""
from __future__ import annotations

from collections import Counter
from fractions import Fraction
from itertools import product
from typing import Iterable, Sequence

from .chamber import in_hull_of_orbit
from .clifford import CliffordModel, clifford_model, clifford_structure_checks  # noqa: F401 (re-exported)
from .exact import WeightVector, inner, lp_feasible, norm2, vsum
from .kstruct import (
    MuLike,
    RealFormData,
    validate_ktype,
)
from .rootsys import RootSystemData, coroot_pairing, dominant_representative

WEDGE_CAP = 24


class WeightMultiset(Counter):
    """Weights with positive integer multiplicities."""

    @property
    def size(self) -> int:
        return sum(self.values())

    def tensor(self, other: "WeightMultiset") -> "WeightMultiset":
        out = WeightMultiset()
        for a, m in self.items():
            for b, k in other.items():
                out[a + b] += m * k
        return out

    def scaled(self, k: int) -> "WeightMultiset":
        return WeightMultiset({w: m * k for w, m in self.items()})

    def cleaned(self) -> "WeightMultiset":
        return WeightMultiset({w: m for w, m in self.items() if m})


class InvalidCharacter(ValueError):
    pass


# ----------------------------------------------------------------- spin and wedge weights


def spin_weights(rf: RealFormData) -> WeightMultiset:
    """``1/2 sum eps_beta beta`` over the positive noncompact roots, for all sign choices."""
    pos = rf.positive_noncompact()
    out = WeightMultiset()
    for signs in product((1, -1), repeat=len(pos)):
        out[vsum((s * b for s, b in zip(signs, pos)), rf.rank) / 2] += 1
    return out


def wedge_p_weights(rf: RealFormData) -> WeightMultiset:
    """Subset sums of the noncompact roots, with multiplicity."""
    if len(rf.noncompact) > WEDGE_CAP:
        raise ValueError(f"too many noncompact roots ({len(rf.noncompact)} > {WEDGE_CAP})")
    out = WeightMultiset({WeightVector.zero(rf.rank): 1})
    for b in rf.noncompact:
        nxt = WeightMultiset(out)
        for w, m in out.items():
            nxt[w + b] += m
        out = nxt
    return out


def wedge_equals_spin_square(rf: RealFormData) -> bool:
    """The weights of the exterior algebra of p are those of spin tensor spin (doubled in odd dimension)."""
    s = spin_weights(rf)
    square = s.tensor(s)
    if len(rf.noncompact) % 2:
        square = square.scaled(2)
    return wedge_p_weights(rf) == square


def spin_highest_weights(rf: RealFormData) -> set:
    """``rho_n`` for every positive system containing the compact positive roots.

    Cross-checked against the extreme K-dominant weights of :func:`spin_weights`.
    """
    result = {rf.two_rho_n(s) / 2 for s in rf.positive_systems}
    weights = spin_weights(rf)
    extreme = {
        w
        for w in weights
        if rf.k_data.is_dominant(w) and all((w + a) not in weights for a in rf.k_positive)
    }
    if extreme != result:
        raise RuntimeError(f"highest weights {sorted(result)} differ from extreme spin weights {sorted(extreme)}")
    return result


# ----------------------------------------------------------------- zonotope types


def _is_w_invariant(k: RootSystemData, S: set) -> bool:
    return all(w - coroot_pairing(k.form, w, a) * a in S for w in S for a in k.simple)


def is_type_S(rf: RealFormData, mu: MuLike, S: Iterable) -> bool:
    """Whether the highest weight lies in ``{sum b_s s : 0 <= b_s <= 1}``.

    ``S`` must be stable under the compact Weyl group; then every weight of the
    K-type lies in that zonotope exactly when the highest weight does.
    """
    S = [WeightVector(s) for s in S]
    if not _is_w_invariant(rf.k_data, set(S)):
        raise ValueError("S is not invariant under the compact Weyl group")
    mu = validate_ktype(rf, mu)
    return _in_zonotope(S, mu)


def _in_zonotope(S, target) -> bool:
    k = len(S)
    if k == 0:
        return WeightVector(target).is_zero()
    return lp_feasible(list(S), [0] * k, [1] * k, WeightVector(target)) is not None


def half_noncompact(rf: RealFormData) -> list:
    return [b / 2 for b in rf.noncompact]


def in_half_zonotope(rf: RealFormData, weight: Sequence) -> bool:
    """``weight = sum c_beta beta`` over the noncompact roots with ``0 <= c_beta <= 1/2``."""
    return _in_zonotope(half_noncompact(rf), weight)


# ----------------------------------------------------------------- characters of K


def weyl_dimension(k: RootSystemData, mu: Sequence) -> Fraction:
    mu = WeightVector(mu)
    d = Fraction(1)
    for a in k.positive:
        d *= inner(k.form, mu + k.rho, a) / inner(k.form, k.rho, a)
    return d


def _check_dominant_integral(k: RootSystemData, mu: WeightVector) -> None:
    for a in k.positive:
        c = coroot_pairing(k.form, mu, a)
        if c < 0 or c.denominator != 1:
            raise ValueError(f"{mu} is not dominant integral for the root {a}")


def freudenthal_weights(k: RootSystemData, mu: Sequence) -> WeightMultiset:
    """Weights of the irreducible representation with highest weight ``mu``, with multiplicities."""
    mu = WeightVector(mu)
    _check_dominant_integral(k, mu)
    if not k.simple:
        return WeightMultiset({mu: 1})
    # collect candidate weights layer by layer below mu, staying inside the orbit hull
    layers = [[mu]]
    seen = {mu}
    while True:
        nxt = []
        for lam in layers[-1]:
            for a in k.simple:
                cand = lam - a
                if cand not in seen and in_hull_of_orbit(k, cand, mu):
                    seen.add(cand)
                    nxt.append(cand)
        if not nxt:
            break
        layers.append(nxt)
    mult = {mu: 1}
    top = norm2(k.form, mu + k.rho)
    for layer in layers[1:]:
        for lam in layer:
            acc = Fraction(0)
            for a in k.positive:
                j = 1
                while True:
                    up = lam + j * a
                    if up not in seen:
                        break
                    acc += mult.get(up, 0) * inner(k.form, up, a)
                    j += 1
            denom = top - norm2(k.form, lam + k.rho)
            value = 2 * acc / denom
            if value.denominator != 1 or value < 0:
                raise RuntimeError(f"non-integral multiplicity {value} at {lam}")
            mult[lam] = int(value)
    out = WeightMultiset({w: m for w, m in mult.items() if m})
    if out.size != weyl_dimension(k, mu):
        raise RuntimeError("multiplicities do not add up to the Weyl dimension")
    return out


def _is_character_invariant(k: RootSystemData, chi: WeightMultiset) -> bool:
    for w, m in chi.items():
        for a in k.simple:
            if chi.get(w - coroot_pairing(k.form, w, a) * a, 0) != m:
                return False
    return True


def decompose_character(k: RootSystemData, chi: WeightMultiset) -> list:
    """Irreducible constituents ``[(highest weight, multiplicity), ...]`` of a K-character.

    The next weight peeled off is a dominant weight maximizing the pairing with
    ``rho`` of ``k`` (ties broken lexicographically); such a weight is always a
    highest weight of the remaining character.
    """
    chi = WeightMultiset(chi).cleaned()
    if any(m < 0 for m in chi.values()):
        raise InvalidCharacter("negative multiplicity in input")
    if not _is_character_invariant(k, chi):
        raise InvalidCharacter("character is not invariant under the compact Weyl group")
    out = []
    while chi:
        dominant = [w for w in chi if k.is_dominant(w)]
        if not dominant:
            raise InvalidCharacter("no dominant weight left to peel off")
        top = max(dominant, key=lambda w: (inner(k.form, w, k.rho), tuple(w)))
        m = chi[top]
        if m < 0:
            raise InvalidCharacter(f"negative multiplicity at {top}")
        try:
            block = freudenthal_weights(k, top)
        except ValueError as exc:
            raise InvalidCharacter(str(exc)) from exc
        for w, k_ in block.items():
            chi[w] -= m * k_
            if chi[w] < 0:
                raise InvalidCharacter(f"peeling {top} leaves a negative multiplicity at {w}")
        chi = chi.cleaned()
        out.append((top, m))
    return out


def character_of(k: RootSystemData, decomposition: Iterable) -> WeightMultiset:
    out = WeightMultiset()
    for w, m in decomposition:
        out.update(freudenthal_weights(k, w).scaled(m))
    return out


def spin_constituent_test(rf: RealFormData, mu: MuLike) -> bool:
    """Whether some constituent of (K-type ``mu``) tensor (spin) has highest weight in the half zonotope.

    Defined for K-types with zero central part.
    """
    mu = validate_ktype(rf, mu)
    if not rf.g.central_part(mu).is_zero():
        raise ValueError("the spin constituent test needs a weight with zero central part")
    chi = freudenthal_weights(rf.k_data, mu).tensor(spin_weights(rf))
    return any(in_half_zonotope(rf, nu) for nu, _ in decompose_character(rf.k_data, chi))


# ----------------------------------------------------------------- Dirac predicates


def dirac_square_eigenvalue(rf: RealFormData, mu_tilde: Sequence, phi: Sequence) -> Fraction:
    """``|mu_tilde + rho_c|^2 - |phi|^2``."""
    return norm2(rf.form, WeightVector(mu_tilde) + rf.rho_c) - norm2(rf.form, WeightVector(phi))


def dirac_inequality(rf: RealFormData, mu_tilde: Sequence, re_phi: Sequence) -> bool:
    return dirac_square_eigenvalue(rf, mu_tilde, re_phi) >= 0


def in_spin_hull(rf: RealFormData, mu_tilde: Sequence, re_phi: Sequence) -> bool:
    """Whether ``re_phi`` lies in the convex hull of the Weyl orbit of ``mu_tilde + rho_c``."""
    gamma, _ = dominant_representative(rf.g, WeightVector(mu_tilde) + rf.rho_c)
    return in_hull_of_orbit(rf.g, re_phi, gamma)


def half_zonotope_dominant_weights(rf: RealFormData) -> list:
    """K-dominant points of the half lattice lying in the half zonotope, sorted."""
    from .kstruct import lattice_points_in_ball, zonotope_radius

    half = rf.__class__(
        g=rf.g,
        compact=rf.compact,
        noncompact=rf.noncompact,
        k_positive=rf.k_positive,
        lattice=tuple(b / 2 for b in rf.lattice),
        two_rho_c=rf.two_rho_c,
        name=rf.name,
    )
    r = zonotope_radius(rf) / 2
    return [
        w
        for w in lattice_points_in_ball(half, WeightVector.zero(rf.rank), r * r)
        if rf.k_data.is_dominant(w) and in_half_zonotope(rf, w)
    ]


def rho_hull_step_holds(rf: RealFormData, mu2: Sequence) -> bool:
    return in_hull_of_orbit(rf.g, WeightVector(mu2) + rf.rho_c, rf.g.rho)


__all__ = [
    "WeightMultiset",
    "spin_weights",
    "wedge_p_weights",
    "wedge_equals_spin_square",
    "is_type_S",
    "freudenthal_weights",
    "decompose_character",
    "spin_constituent_test",
    "spin_highest_weights",
    "dirac_square_eigenvalue",
    "dirac_inequality",
    "in_spin_hull",
    "clifford_model",
    "clifford_structure_checks",
    "CliffordModel",
]
