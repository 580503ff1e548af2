"""Mixing criteria: the central-polynomial test and the sufficient conditions of Hayes."""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd

from .laurent import (LaurentPoly1, LaurentPolyN, divisible_by_generalized_cyclotomic, euler_phi,
                      has_root_of_unity_root)
from .ring import GroupRingElement, abelianize, content, convex_hull


@dataclass
class MixingVerdict:
    status: str  # mixing | not-mixing | undetermined
    condition: str | None = None
    witness: object = None
    diagnostics: dict = field(default_factory=dict)


def mixing_central(g: LaurentPoly1) -> MixingVerdict:
    """alpha_g for g in Z[z^+-] is mixing iff g has no root-of-unity root."""
    hit, d = has_root_of_unity_root(g)
    if hit:
        return MixingVerdict("not-mixing", "central", d)
    return MixingVerdict("mixing", "central")


def _edge_directions(f: LaurentPolyN):
    """(primitive direction, lattice length) for each edge of the Newton polygon of f."""
    hull = convex_hull(f.terms.keys())
    if len(hull) < 2:
        return []
    pairs = [(hull[0], hull[1])] if len(hull) == 2 else \
        [(hull[i], hull[(i + 1) % len(hull)]) for i in range(len(hull))]
    out = {}
    for P, Q in pairs:
        dx, dy = Q[0] - P[0], Q[1] - P[1]
        L = gcd(abs(dx), abs(dy))
        d = (dx // L, dy // L)
        if d[0] < 0 or (d[0] == 0 and d[1] < 0):
            d = (-d[0], -d[1])
        out[d] = max(out.get(d, 0), L)
    return sorted(out.items())


def generalized_cyclotomic_divisor(f: LaurentPolyN):
    """First (k, n1, n2) with cyclotomic(k)(u1^n1 u2^n2) dividing f, or None.

    The search is complete: a divisor Phi_k(u^n) with n primitive contributes a
    Minkowski summand of lattice length phi(k) in direction n, so n must be an
    edge direction of the Newton polygon and phi(k) at most that edge's length.
    Non-primitive n reduce to primitive ones since Phi_k(w^m) factors into
    cyclotomic polynomials in w.
    """
    if f.is_zero():
        raise ValueError("zero polynomial")
    for (n1, n2), L in _edge_directions(f):
        for k in range(1, 2 * L * L + 3):
            if euler_phi(k) > L:
                continue
            if divisible_by_generalized_cyclotomic(f, k, n1, n2):
                return k, n1, n2
    return None


def _is_in_xz(f: GroupRingElement):
    return all(l == 0 for _, l, _ in f.terms)


def _is_in_yz(f: GroupRingElement):
    return all(k == 0 for k, _, _ in f.terms)


def hayes_check(f: GroupRingElement) -> MixingVerdict:
    """Test the three sufficient conditions; 'undetermined' when none applies."""
    if f.is_zero():
        raise ValueError("zero element")
    diag = {}
    if _is_in_xz(f):
        p = LaurentPolyN({(k, m): c for (k, _, m), c in f.terms.items()}, 2)
        hit = generalized_cyclotomic_divisor(p)
        diag["condition1_divisor"] = hit
        if hit is None:
            return MixingVerdict("mixing", "1", None, diag)
    if _is_in_yz(f):
        p = LaurentPolyN({(l, m): c for (_, l, m), c in f.terms.items()}, 2)
        hit = generalized_cyclotomic_divisor(p)
        diag["condition2_divisor"] = hit
        if hit is None:
            return MixingVerdict("mixing", "2", None, diag)
    c = content(f)
    ok_c, d = has_root_of_unity_root(c)
    diag["content"] = str(c)
    diag["content_cyclotomic_order"] = d if ok_c else None
    fbar = abelianize(f)
    hit = None if fbar.is_zero() else generalized_cyclotomic_divisor(fbar)
    diag["abelianized_divisor"] = hit
    if not ok_c and not fbar.is_zero() and hit is None:
        return MixingVerdict("mixing", "3", None, diag)
    return MixingVerdict("undetermined", None, None, diag)
