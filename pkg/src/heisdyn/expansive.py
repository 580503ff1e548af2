"""Expansiveness of principal Heisenberg actions.

A principal action alpha_f is expansive iff f is invertible in l1. This module
gives constructive inverses for lopsided f, the geometric criterion for
f = h(x, z) y - g(x, z), finite-dimensional checks at rational zeta, and the
degree-48 worked example.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd
import cmath
import math

import numpy as np
from scipy import optimize

from .entropy import build_a_matrix, dominant_monomial, normalize_lopsided, slice_mahler
from .laurent import LaurentPoly1, LaurentPolyN, sturm_expansive_z
from .numeric import TAU, Sqrt5Number, mahler1_exact, poly_roots, sqrt5_poly_conj, sqrt5_poly_mul
from .ring import (ONE, SWAP_XY, DenseElement, GroupRingElement, inverse_monomial, mul_monomial)


def is_lopsided(f: GroupRingElement):
    """The dominant monomial of f, or None."""
    return dominant_monomial(f)


# ---------------------------------------------------------------- word lengths

@lru_cache(maxsize=4)
def word_length_ball(radius: int):
    """{monomial: word length} for the ball of the given radius, generators x^+-, y^+-."""
    dist = {(0, 0, 0): 0}
    frontier = deque([(0, 0, 0)])
    while frontier:
        p = frontier.popleft()
        d = dist[p]
        if d == radius:
            continue
        k, l, m = p
        for nb in ((k + 1, l, m + l), (k - 1, l, m - l), (k, l + 1, m), (k, l - 1, m)):
            if nb not in dist:
                dist[nb] = d + 1
                frontier.append(nb)
    return dist


def word_length(mono, max_radius=64):
    r = 4
    while r <= max_radius:
        ball = word_length_ball(r)
        if mono in ball:
            return ball[mono]
        r *= 2
    raise ValueError("monomial outside the searched ball")


# ---------------------------------------------------------------- l1 inversion

@dataclass
class L1Approx:
    element: GroupRingElement  # rational coefficients
    tail_bound: float
    residual_l1: Fraction
    terms: int
    s: Fraction
    decay_rate: float
    decay_constant: float
    diagnostics: dict = field(default_factory=dict)


def invert_l1(f: GroupRingElement, eps=1e-6) -> L1Approx:
    """Truncated geometric series for f^-1 with ||f * approx - 1||_1 <= eps checked exactly.

    With u f = c - h (u a signed monomial, ||h||_1 < c), the truncation is
    (1/c^(N+1)) sum_{n<=N} h^n c^(N-n) u. The numerator is built by Horner steps
    on integer arrays.
    """
    c, h, (sign, dom) = normalize_lopsided(f)
    s = Fraction(h.l1_norm(), c)
    eps = Fraction(eps)
    N = 0
    while s ** (N + 1) > eps:
        N += 1
    B = DenseElement.from_sparse(ONE)
    if not h.is_zero():
        for k in range(1, N + 1):
            B = B.times(h).plus(DenseElement.from_sparse(GroupRingElement.const(c ** k)))
    else:
        B = B.scaled(c ** N)
    den = c ** (N + 1)
    # exact residual: f * B must equal sign * c^(N+1) * dom up to the discarded tail
    E = B.times_left(f).to_sparse() - GroupRingElement({dom: sign * den})
    residual = Fraction(E.l1_norm(), den)
    if residual > eps:
        raise ArithmeticError("residual exceeds eps")
    uinv = inverse_monomial(dom)
    Bs = B.to_sparse()
    elem = GroupRingElement({mul_monomial(p, uinv): Fraction(sign * v, den) for p, v in Bs.terms.items()})
    tail = float(s) ** (N + 1) / (c * (1 - float(s))) if s else 0.0
    tau_supp = max((word_length(p) for p in h.terms), default=1)
    r = float(s) ** (1.0 / tau_supp) if s else 0.0
    # coefficient bound for (c - h)^-1 at delta, moved through the unit u
    C = 1.0 / (c * (1 - float(s)))
    if r > 0:
        C *= r ** (-word_length(dom))
    return L1Approx(elem, tail, residual, N, s, r, C, {
        "dominant": list(dom), "sign": sign, "c": c, "tau_supp": tau_supp,
    })


# ---------------------------------------------------------------- lopsidize

def _support_ball(f: GroupRingElement, radius: int, cap: int):
    gens = set(f.terms) | {inverse_monomial(p) for p in f.terms}
    S = {(0, 0, 0)}
    frontier = {(0, 0, 0)}
    for _ in range(radius):
        new = set()
        for p in frontier:
            for g in gens:
                q = mul_monomial(p, g)
                if q not in S:
                    new.add(q)
        S |= new
        frontier = new
        if len(S) > cap:
            return None
    return sorted(S)


def lopsidize(f: GroupRingElement, max_radius=4, max_support=3000, scales=(10, 100, 1000, 10 ** 4, 10 ** 5)):
    """Search for g in ZGamma with f g lopsided, or None.

    A least squares approximate right inverse is fitted on a ball around the
    identity, scaled and rounded to integers; every candidate is verified exactly.
    """
    if f.is_zero():
        return None
    if dominant_monomial(f) is not None:
        return ONE
    for R in range(1, max_radius + 1):
        S = _support_ball(f, R, max_support)
        if S is None:
            return None
        rows = {}
        cols = []
        for s in S:
            col = {}
            for p, v in f.terms.items():
                q = mul_monomial(p, s)
                col[q] = col.get(q, 0) + v
            cols.append(col)
            for q in col:
                rows.setdefault(q, len(rows))
        A = np.zeros((len(rows), len(S)))
        for j, col in enumerate(cols):
            for q, v in col.items():
                A[rows[q], j] = v
        b = np.zeros(len(rows))
        if (0, 0, 0) not in rows:
            continue
        b[rows[(0, 0, 0)]] = 1.0
        w, *_ = np.linalg.lstsq(A, b, rcond=None)
        for K in scales:
            coeffs = np.rint(K * w).astype(np.int64)
            g = GroupRingElement({s: int(v) for s, v in zip(S, coeffs) if v})
            if g.is_zero():
                continue
            if dominant_monomial(f * g) is not None:
                return g
    return None


# ---------------------------------------------------------------- verdicts

@dataclass
class ExpansivenessVerdict:
    status: str  # expansive | nonexpansive | undetermined
    witness: dict | None = None
    diagnostics: dict = field(default_factory=dict)

    def to_dict(self):
        return {"status": self.status, "witness": self.witness, "diagnostics": self.diagnostics}


def _cx(z):
    z = complex(z)
    return [z.real, z.imag]


@dataclass
class CocycleTrace:
    zeta: complex
    xi: complex
    ns: list
    values: list  # psi_zeta(n, xi)
    sup_above: float
    ratios: list  # |c_(n+1) / c_n| for n >= 0 in the window


def _unit(theta):
    return np.exp(1j * np.asarray(theta, dtype=float))


def cocycle_phi(g: LaurentPolyN, h: LaurentPolyN, xi, zeta):
    """log|g(xi, zeta) / h(xi, zeta)|."""
    return np.log(np.abs(g(xi, zeta))) - np.log(np.abs(h(xi, zeta)))


def bounded_cocycle_scan(g: LaurentPolyN, h: LaurentPolyN, zeta, xi, N=100) -> CocycleTrace:
    """psi_zeta(n, xi) for |n| <= N by the cocycle recursion."""
    a, b = cmath.phase(zeta), cmath.phase(xi)
    js = np.arange(-N, N)
    pts = _unit(b + a * js)
    hv = np.abs(np.broadcast_to(h(pts, zeta), pts.shape))
    if np.any(hv == 0):
        raise ZeroDivisionError("h vanishes on the orbit window")
    phi = np.log(np.abs(np.broadcast_to(g(pts, zeta), pts.shape))) - np.log(hv)
    fwd = np.concatenate([[0.0], np.cumsum(phi[N:])])           # psi(0..N)
    bwd = -np.cumsum(phi[:N][::-1])                              # psi(-1..-N)
    ns = list(range(-N, N + 1))
    vals = list(bwd[::-1]) + list(fwd)
    return CocycleTrace(complex(zeta), complex(xi), ns, [float(v) for v in vals], float(max(vals)),
                        [float(v) for v in np.exp(phi[N:])])


def orbit_sum(g, h, zeta, q, theta):
    """sum_{j<q} phi_zeta(xi zeta^j) at xi = e^(i theta), vectorized over theta."""
    theta = np.asarray(theta, dtype=float)
    a = cmath.phase(zeta)
    tot = np.zeros(theta.shape)
    for j in range(q):
        tot = tot + cocycle_phi(g, h, _unit(theta + a * j), zeta)
    return tot


def rational_witness_scan(g, h, q_max=12, n_theta=720, tol=1e-10, nonzero=1e-8):
    """Solutions of condition (2) failing: zeta of order q <= q_max and xi with zero orbit sum.

    Returns witnesses sorted by (q, p, theta); each has g, h nonzero along the orbit.
    """
    out = []
    for q in range(1, q_max + 1):
        for p in range(q):
            if gcd(p, q) != 1:
                continue
            zeta = cmath.exp(2j * math.pi * p / q)
            period = 2 * math.pi / q
            th = (np.arange(n_theta) + 0.5) * period / n_theta
            with np.errstate(divide="ignore"):
                S = orbit_sum(g, h, zeta, q, th)
            found = []
            for i in range(n_theta):
                s0, s1 = S[i], S[(i + 1) % n_theta]
                t0 = th[i]
                t1 = th[i + 1] if i + 1 < n_theta else th[0] + period
                if not (np.isfinite(s0) and np.isfinite(s1)) or s0 * s1 > 0:
                    continue
                fn = lambda t: float(orbit_sum(g, h, zeta, q, t))
                t = optimize.brentq(fn, t0, t1, xtol=1e-15) if s0 * s1 < 0 else t0
                t = t % period
                orbit = _unit(t + cmath.phase(zeta) * np.arange(q))
                if abs(fn(t)) > tol:
                    continue
                if min(np.min(np.abs(g(orbit, zeta))), np.min(np.abs(h(orbit, zeta)))) < nonzero:
                    continue
                found.append(t)
            for t in sorted(found):
                out.append({"kind": "rational", "q": q, "p": p, "zeta": _cx(zeta), "xi": _cx(cmath.exp(1j * t)),
                            "xi_angle": t, "orbit_sum": float(orbit_sum(g, h, zeta, q, t))})
        if out:
            break
    return out


def torus_min_abs(p: LaurentPolyN, n=256):
    """Grid minimum of |p| on S^2 refined by a local optimizer; returns (min, (s, t))."""
    th = (np.arange(n) + 0.5) / n
    U, V = np.meshgrid(_unit(2 * np.pi * th), _unit(2 * np.pi * th), indexing="ij")
    A = np.abs(np.broadcast_to(p(U, V), U.shape))
    i, j = np.unravel_index(np.argmin(A), A.shape)
    fn = lambda v: float(abs(p(cmath.exp(2j * math.pi * v[0]), cmath.exp(2j * math.pi * v[1]))))
    res = optimize.minimize(fn, [th[i], th[j]], method="Nelder-Mead",
                            options={"xatol": 1e-12, "fatol": 1e-14, "maxiter": 2000})
    if res.fun < A[i, j]:
        return float(res.fun), (float(res.x[0] % 1), float(res.x[1] % 1))
    return float(A[i, j]), (float(th[i]), float(th[j]))


def mahler_gap(g, h, s):
    """D(zeta) = m(g(., zeta)) - m(h(., zeta)) at zeta = e^(2 pi i s)."""
    z = np.exp(2j * np.pi * np.atleast_1d(np.asarray(s, dtype=float)))
    return slice_mahler(g, z) - slice_mahler(h, z)


def check_linear_y_expansive(h: LaurentPolyN, g: LaurentPolyN, n_zeta=4096, margin=1e-6, q_max=12,
                             torus_grid=256, scan_window=200) -> ExpansivenessVerdict:
    """Verdict for f = h(x, z) y - g(x, z)."""
    if g.is_zero() or h.is_zero():
        raise ValueError("g and h must be nonzero")
    diag = {"n_zeta": n_zeta, "margin": margin, "q_max": q_max}
    wit = rational_witness_scan(g, h, q_max)
    if wit:
        w = wit[0]
        tr = bounded_cocycle_scan(g, h, complex(*w["zeta"]), complex(*w["xi"]), min(scan_window, 50))
        diag["rational_witnesses"] = wit
        diag["cocycle_sup_above"] = tr.sup_above
        return ExpansivenessVerdict("nonexpansive", w, diag)
    for name, p in (("g", g), ("h", h)):
        mn, loc = torus_min_abs(p, torus_grid)
        diag[f"min_abs_{name}"] = mn
        if mn < margin:
            diag["blocking"] = f"{name} vanishes near (x, z) = e^(2 pi i {loc})"
            return ExpansivenessVerdict("undetermined", None, diag)
    s = (np.arange(n_zeta) + 0.5) / n_zeta
    D = mahler_gap(g, h, s)
    diag["D_min"] = float(D.min())
    diag["D_max"] = float(D.max())
    crossings = []
    for i in range(n_zeta):
        a, b = D[i], D[(i + 1) % n_zeta]
        if a * b < 0:
            s0, s1 = s[i], s[i + 1] if i + 1 < n_zeta else s[0] + 1
            crossings.append(optimize.brentq(lambda t: float(mahler_gap(g, h, t)[0]), s0, s1, xtol=1e-15) % 1)
    if crossings:
        crossings.sort()
        zs = cmath.exp(2j * math.pi * crossings[0])
        tr = bounded_cocycle_scan(g, h, zs, 1.0, scan_window)
        diag["crossings"] = crossings
        diag["cocycle_sup_above"] = tr.sup_above
        diag["cocycle_final"] = tr.values[-1]
        return ExpansivenessVerdict("nonexpansive", {
            "kind": "crossing", "zeta": _cx(zs), "zeta_angle": crossings[0], "xi": _cx(1.0)}, diag)
    if np.min(np.abs(D)) > margin:
        diag["sign"] = int(np.sign(D[0]))
        return ExpansivenessVerdict("expansive", None, diag)
    diag["blocking"] = "D(zeta) touches zero without changing sign"
    return ExpansivenessVerdict("undetermined", None, diag)


def linear_y_parts(f: GroupRingElement):
    """(h, g) in (x, z) with y^-l0 f = h y - g, if f has y-degree span 1."""
    ls = sorted({l for _, l, _ in f.terms})
    if len(ls) != 2 or ls[1] - ls[0] != 1:
        return None
    l0 = ls[0]
    g, h = {}, {}
    for (k, l, m), c in f.terms.items():
        # y^-l0 x^k y^l z^m = x^k y^(l - l0) z^(m - l0 k)
        key = (k, m - l0 * k)
        if l == l0:
            g[key] = g.get(key, 0) - c
        else:
            h[key] = h.get(key, 0) + c
    return LaurentPolyN(h, 2), LaurentPolyN(g, 2)


def expansive_verdict(f: GroupRingElement, **kw) -> ExpansivenessVerdict:
    """Dispatch: lopsided certificate, central Sturm test, or the linear criterion."""
    if f.is_zero():
        raise ValueError("zero element")
    dom = dominant_monomial(f)
    if dom is not None:
        return ExpansivenessVerdict("expansive", None, {"method": "lopsided", "dominant": list(dom)})
    if all(k == 0 and l == 0 for k, l, _ in f.terms):
        p = LaurentPoly1.from_dict({m: c for (_, _, m), c in f.terms.items()})
        ok = sturm_expansive_z(p)
        return ExpansivenessVerdict("expansive" if ok else "nonexpansive", None, {"method": "sturm"})
    for label, ff in (("y-linear", f), ("x-linear via swap", SWAP_XY(f))):
        parts = linear_y_parts(ff)
        if parts is not None:
            v = check_linear_y_expansive(*parts, **kw)
            v.diagnostics["method"] = label
            return v
    g = lopsidize(f)
    if g is not None:
        return ExpansivenessVerdict("expansive", None, {"method": "lopsidize", "multiplier": str(g)})
    return ExpansivenessVerdict("undetermined", None, {"method": "none applicable"})


# ---------------------------------------------------------------- Allan check

def allan_rational_check(f: GroupRingElement, p: int, q: int, grid=64):
    """Minimum of |det A_(zeta, f)(xi, eta)| over the torus at zeta = e^(2 pi i p / q)."""
    if q < 1 or gcd(p, q) != 1:
        raise ValueError("need q >= 1 and gcd(p, q) = 1")
    zeta = cmath.exp(2j * math.pi * p / q)
    th = (np.arange(grid) + 0.5) / grid
    U, V = np.meshgrid(_unit(2 * np.pi * th), _unit(2 * np.pi * th), indexing="ij")
    dets = np.linalg.det(build_a_matrix(f, zeta, q, U, V).entries)
    A = np.abs(dets)
    order = np.argsort(A, axis=None)[:8]
    best, arg = float(A.min()), np.unravel_index(order[0], A.shape)
    best_pt = (float(th[arg[0]]), float(th[arg[1]]))

    def det_at(v):
        xi, eta = cmath.exp(2j * math.pi * v[0]), cmath.exp(2j * math.pi * v[1])
        return complex(np.linalg.det(build_a_matrix(f, zeta, q, xi, eta).entries))

    for flat in order:
        i, j = np.unravel_index(flat, A.shape)
        x0 = [th[i], th[j]]
        sol = optimize.root(lambda v: [det_at(v).real, det_at(v).imag], x0, method="hybr")
        cand = [sol.x] if sol.success else []
        nm = optimize.minimize(lambda v: abs(det_at(v)), x0, method="Nelder-Mead",
                               options={"xatol": 1e-12, "fatol": 1e-15, "maxiter": 4000})
        cand.append(nm.x)
        for v in cand:
            val = abs(det_at(v))
            if val < best:
                best, best_pt = val, (float(v[0] % 1), float(v[1] % 1))
    return {"zeta": _cx(zeta), "p": p, "q": q, "grid": grid, "min_abs_det": best,
            "argmin": {"xi": _cx(cmath.exp(2j * math.pi * best_pt[0])),
                       "eta": _cx(cmath.exp(2j * math.pi * best_pt[1])), "angles": list(best_pt)}}


# ---------------------------------------------------------------- degree-48 example

C_POLY = LaurentPoly1([1, 0, 1] + [0] * 9 + [1])  # z^12 + z^2 + 1
A_POLY = LaurentPoly1([-1, -1, 1])  # x^2 - x - 1
DIOPHANTINE_C = 2.0 ** -18 / math.sqrt(40)


def degree48_polynomials():
    """F(z) = z^12 (c(z) c(1/z) - tau^-2) over Q(sqrt 5) and G = F * conj(F) over Z."""
    cz = [Sqrt5Number(v) for v in C_POLY.coeffs]
    cc = sqrt5_poly_mul(cz, cz[::-1])  # z^12 c(z) c(1/z), degree 24
    cc[12] = cc[12] - TAU ** -2
    G = sqrt5_poly_mul(cc, sqrt5_poly_conj(cc))
    if not all(c.is_rational() and c.a.denominator == 1 for c in G):
        raise ArithmeticError("G is not an integer polynomial")
    return cc, [int(c.a) for c in G]


def rational_exclusion_threshold(C, M, n_max=100000):
    """Least N0 with C M^(-n/2) / (2 pi n) > 5 tau^-n for every n >= N0 (checked to n_max)."""
    lt = math.log((1 + math.sqrt(5)) / 2)
    last_fail = 0
    for n in range(1, n_max + 1):
        lhs = math.log(C) - n * math.log(M) / 2 - math.log(2 * math.pi * n)
        rhs = math.log(5) - n * lt
        if lhs <= rhs:
            last_fail = n
    return last_fail + 1


def epsilon_threshold(eps0=0.01, n_max=1000):
    """Least n0 with n eps0 > 5 tau^-n for all n >= n0."""
    tau = (1 + math.sqrt(5)) / 2
    last = 0
    for n in range(1, n_max + 1):
        if not n * eps0 > 5 * tau ** -n:
            last = n
    return last + 1


def example48_suite(n_check=500, n_grid=200000, eps0=0.01):
    F, G = degree48_polynomials()
    tau = (1 + math.sqrt(5)) / 2
    mG = mahler1_exact(G)
    M = math.exp(mG.log_value)
    Ff = np.array([float(c) for c in F], dtype=complex)
    rootsF = poly_roots(Ff)
    rootsG = poly_roots(np.array(G, dtype=complex))
    on = rootsF[np.abs(np.abs(rootsF) - 1) < 1e-8]
    on_G = rootsG[np.abs(np.abs(rootsG) - 1) < 1e-8]
    outside_G = int(np.sum(np.abs(rootsG) > 1 + 1e-8))
    # diophantine bound |zeta^n - 1| >= C M^(-n/2)
    worst = math.inf
    for z in on:
        a = cmath.phase(z)
        for n in range(1, n_check + 1):
            lhs = abs(cmath.exp(1j * a * n) - 1)
            bound = DIOPHANTINE_C * M ** (-n / 2)
            worst = min(worst, lhs / bound)
    N0 = rational_exclusion_threshold(DIOPHANTINE_C, M)
    # grid check of L(s) = log|c(e^(2 pi i s)) tau|
    s = (np.arange(n_grid) + 0.5) / n_grid
    w = np.exp(2j * np.pi * s)
    cw = C_POLY(w)
    dc = 12 * w ** 11 + 2 * w
    L = np.log(np.abs(cw)) + math.log(tau)
    dL = np.real(dc * 2j * np.pi * w / cw)
    near = np.abs(L) < eps0
    roots_s = np.sort(np.angle(on) / (2 * np.pi) % 1)
    return {
        "G_coefficients_high_first": G[::-1],
        "G_degree": len(G) - 1,
        "mahler_G": M,
        "sqrt_mahler_G": math.sqrt(M),
        "tau": tau,
        "sqrt_mahler_below_tau": math.sqrt(M) < tau,
        "roots_F_on_circle": len(on),
        "roots_G_on_circle": len(on_G),
        "roots_G_outside": outside_G,
        "crossing_angles": roots_s.tolist(),
        "diophantine_constant": DIOPHANTINE_C,
        "diophantine_min_ratio": worst,
        "diophantine_holds": worst >= 1.0,
        "N0": N0,
        "epsilon0": eps0,
        "epsilon_threshold": epsilon_threshold(eps0),
        "grid_min_abs_L_away": float(np.min(np.abs(L[~near]))) if np.any(~near) else None,
        "grid_min_abs_dL_near": float(np.min(np.abs(dL[near]))) if np.any(near) else None,
        "grid_points": n_grid,
    }
