"""Fundamental homoclinic points and the symbolic cover for lopsided f."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
import math

from .expansive import invert_l1, word_length
from .ring import GroupRingElement, gaussian_binomial
from .laurent import LaurentPoly1


@dataclass
class HomoclinicWindow:
    window: list  # monomials
    values: dict  # monomial -> float in [0, 1)
    exact: GroupRingElement  # truncated w with rational coefficients
    tail_bound: float
    decay_rate: float
    decay_constant: float
    diagnostics: dict = field(default_factory=dict)


def _frac(v):
    return float(v - math.floor(v))


def fundamental_homoclinic(f: GroupRingElement, eps=1e-6) -> HomoclinicWindow:
    """w = (f*)^-1 truncated so that the l1 mass outside the window is at most eps; t = w mod 1."""
    fs = f.star()
    # tail <= s^(N+1) / (c (1 - s)) <= eps once the residual target is eps (1 - s) c
    first = invert_l1(fs, 0.5)
    c = first.diagnostics["c"]
    s = first.s
    target = Fraction(eps) * (1 - s) * c if s else Fraction(eps)
    approx = invert_l1(fs, min(target, Fraction(1, 2)))
    w = approx.element
    values = {p: _frac(v) for p, v in w.terms.items()}
    return HomoclinicWindow(sorted(w.terms), values, w, approx.tail_bound, approx.decay_rate,
                            approx.decay_constant, {"terms": approx.terms, "s": str(s), "c": c})


def decay_certificate(w: HomoclinicWindow):
    """Check |w_delta| <= C r^|delta| on the window; report the largest ratio to the bound."""
    r, C = w.decay_rate, w.decay_constant
    worst = 0.0
    max_len = 0
    for p, v in w.exact.terms.items():
        L = word_length(p, max_radius=256)
        max_len = max(max_len, L)
        bound = C * r ** L if r > 0 else (C if L == 0 else 0.0)
        ratio = abs(float(v)) / bound if bound > 0 else math.inf
        worst = max(worst, ratio)
    return {"C": C, "r": r, "max_ratio": worst, "violations": int(worst > 1 + 1e-12),
            "max_violation": max(0.0, worst - 1), "window_radius": max_len}


def decay_profile(w: HomoclinicWindow):
    """{word length: max |w_delta|} for fitting the observed decay slope."""
    prof = {}
    for p, v in w.exact.terms.items():
        L = word_length(p, max_radius=256)
        prof[L] = max(prof.get(L, 0.0), abs(float(v)))
    return dict(sorted(prof.items()))


def symbolic_cover_sample(w: HomoclinicWindow, u: GroupRingElement, window=None):
    """pi(u) = (u * w) mod 1 restricted to the window (default: the window of w)."""
    prod = u * w.exact if not u.is_zero() else GroupRingElement()
    keys = w.window if window is None else window
    return {p: _frac(prod.coefficient(p)) for p in keys}


def circle_distance(v):
    return min(v % 1.0, 1.0 - v % 1.0)


def annihilation_defect(w: HomoclinicWindow, f: GroupRingElement, interior=None):
    """max over interior points of the circle distance of (t * f*) to 0.

    t * f* = w * f* mod 1 and w * f* = 1 up to the tail, so every value is near 0 mod 1.
    """
    t = GroupRingElement({p: v - math.floor(v) for p, v in w.exact.terms.items()})
    prod = t * f.star()
    keys = interior if interior is not None else interior_window(w, f)
    return max((circle_distance(float(prod.coefficient(p))) for p in keys), default=0.0)


def interior_window(w: HomoclinicWindow, f: GroupRingElement, radius=None):
    """Window monomials whose word length is at most radius (default: half the window radius)."""
    lens = {p: word_length(p, max_radius=256) for p in w.window}
    R = max(lens.values()) // 2 if radius is None else radius
    return [p for p, L in lens.items() if L <= R]


def multiplier_stub(n_max=8, power=2):
    """Partial data for the (z - 1)^power multiplier on ((x + y)/2)^n.

    Returns per n the l1 norm of (z - 1)^power [n; k]_z summed over k and divided
    by 2^n. Only the data is produced; no summability claim is made.
    """
    zm1 = LaurentPoly1([-1, 1]) ** power
    rows = []
    for n in range(1, n_max + 1):
        tot = 0
        for k in range(n + 1):
            tot += sum(abs(c) for _, c in (zm1 * gaussian_binomial(n, k)).items())
        rows.append({"n": n, "l1_over_2n": tot / 2 ** n})
    return rows
