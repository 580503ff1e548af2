"""Entropy of principal Heisenberg actions by several independent routes.

* trace series: log det via the power series of log(1 - g) for lopsided f
* periodic determinants: twisted q x q matrices at q-th roots of unity
* linear formula: integral of max of slice Mahler measures
* Lyapunov exponents (see lyapunov.py)
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
import cmath
import math

import numpy as np

from .laurent import LaurentPoly1, LaurentPolyN, generalized_cyclotomic_divisor_search, \
    divide_generalized_cyclotomic
from .numeric import QuadratureGrid, batch_mahler, mahler1_exact, mahler_n, torus_quad, MahlerValue
from .ring import (GroupRingElement, DenseElement, ONE, SWAP_XY, X, Y, inverse_monomial, mul_monomial,
                   newton_polygon, trace_of_product)


@dataclass
class EntropyEstimate:
    value: float
    method: str  # trace-series | periodic-determinant | linear-formula | lyapunov | closed-form
    error_bound: float | None = None
    heuristic: bool = False
    diagnostics: dict = field(default_factory=dict)


# ---------------------------------------------------------------- lopsided normalization

def dominant_monomial(f: GroupRingElement):
    """Monomial whose coefficient strictly dominates the l1 mass of the rest, if any."""
    if f.is_zero():
        return None
    total = f.l1_norm()
    mono, c = max(f.terms.items(), key=lambda t: abs(t[1]))
    return mono if 2 * abs(c) > total else None


def normalize_lopsided(f: GroupRingElement):
    """Write u*f = c - h with u a unit, c > 0 the identity coefficient and ||h||_1 < c.

    Returns (c, h, unit) with unit = (sign, monomial) so that u = sign * monomial^-1.
    """
    dom = dominant_monomial(f)
    if dom is None:
        raise ValueError("element is not lopsided")
    sign = 1 if f.terms[dom] > 0 else -1
    inv = inverse_monomial(dom)
    g = GroupRingElement({mul_monomial(inv, p): sign * v for p, v in f.terms.items()})
    c = g.constant_term()
    h = GroupRingElement.const(c) - g
    return c, h, (sign, dom)


def _parity_obstruction(h: GroupRingElement):
    """True if some homomorphism to Z/2 sends every support element of h to 1.

    Then tr(h^n) = 0 for odd n.
    """
    for a, b in ((1, 0), (0, 1), (1, 1)):
        if h.terms and all((a * k + b * l) % 2 == 1 for (k, l, _) in h.terms):
            return True
    return False


def trace_tail_bound(s, N, even_only=False):
    """Bound on sum_{n > N} s^n / n, optionally over even n only."""
    if s == 0:
        return 0.0
    if even_only:
        n0 = N + 1 if (N + 1) % 2 == 0 else N + 2
        return s ** n0 / (n0 * (1 - s * s))
    return s ** (N + 1) / ((N + 1) * (1 - s))


def entropy_trace_series(f: GroupRingElement, tol=1e-6, n_terms=None) -> EntropyEstimate:
    """log det of a lopsided f as log c - sum_{n<=N} tr(g^n)/n with g = h/c.

    The traces are exact integers tr(h^n), obtained by pairing dense powers
    h^j and h^(j or j+1); the partial sum is an exact rational.
    """
    c, h, unit = normalize_lopsided(f)
    s = h.l1_norm() / c
    even = _parity_obstruction(h)
    if n_terms is None:
        N = 0
        while trace_tail_bound(s, N, even) > tol:
            N += 1
    else:
        N = n_terms
    tail = trace_tail_bound(s, N, even)
    traces = {}
    if N and not h.is_zero():
        prev = DenseElement.from_sparse(ONE)
        for j in range(1, N // 2 + 2):
            cur = prev.times(h)
            if 2 * j - 1 <= N:
                traces[2 * j - 1] = trace_of_product(cur, prev)
            if 2 * j <= N:
                traces[2 * j] = trace_of_product(cur, cur)
            if 2 * j >= N:
                break
            prev = cur
    S = sum((Fraction(t, n * c ** n) for n, t in traces.items()), Fraction(0))
    value = math.log(c) - float(S)
    return EntropyEstimate(value, "trace-series", tail + 1e-15 * max(1.0, abs(value)), False, {
        "terms": N, "s": s, "tail_bound": tail, "odd_traces_vanish": even,
        "dominant": list(unit[1]), "traces": {str(n): str(t) for n, t in sorted(traces.items())},
    })


def free_group_closed_form() -> EntropyEstimate:
    """log det of 5 - x - x^-1 - y - y^-1 over the free group on x, y."""
    v = math.log((35 + 13 * math.sqrt(13)) / 18)
    return EntropyEstimate(v, "closed-form", 1e-15)


def free_group_series_value(n_max=200):
    """Same quantity from the closed-word series log 5 - sum r(2n)/(2n 5^2n)."""
    from .words import free_group_series
    ser = free_group_series(n_max)
    return math.log(5) - float(sum(ser[n] / (2 * n * Fraction(25) ** n) for n in range(1, n_max + 1)))


def laplacian_like(c=5):
    """c - x - x^-1 - y - y^-1."""
    return GroupRingElement.const(c) - X - X ** -1 - Y - Y ** -1


def z2_comparison_value(n=64) -> MahlerValue:
    f = LaurentPolyN({(0, 0): 5, (1, 0): -1, (-1, 0): -1, (0, 1): -1, (0, -1): -1}, 2)
    return mahler_n(f, n)


# ---------------------------------------------------------------- twisted matrices

def x_decomposition(f: GroupRingElement):
    """f = x^kmin * sum_{j=0}^D x^j g_j(y, z); returns (kmin, [g_0, ..., g_D]) with g_j in (y, z)."""
    if f.is_zero():
        raise ValueError("zero element")
    kmin = min(k for k, _, _ in f.terms)
    kmax = max(k for k, _, _ in f.terms)
    gs = [dict() for _ in range(kmax - kmin + 1)]
    for (k, l, m), c in f.terms.items():
        gs[k - kmin][(l, m)] = c
    return kmin, [LaurentPolyN(g, 2) for g in gs]


@dataclass
class TwistedMatrix:
    q: int
    entries: np.ndarray  # (..., q, q)


def build_a_matrix(f: GroupRingElement, zeta, q, xi, eta) -> TwistedMatrix:
    """Matrix of right multiplication by f on the q-dimensional space at zeta (zeta^q = 1).

    Row i carries xi^j g_j(eta zeta^i, zeta) in column (i + j) mod q. Broadcasts over xi, eta.
    For q = 1 this is the 1 x 1 matrix [f(xi, eta, 1)] up to the unit x^kmin.
    """
    _, gs = x_decomposition(f)
    xi = np.asarray(xi, dtype=complex)
    eta = np.asarray(eta, dtype=complex)
    shape = np.broadcast(xi, eta).shape
    A = np.zeros(shape + (q, q), dtype=complex)
    for i in range(q):
        yv = eta * zeta ** i
        for j, g in enumerate(gs):
            if g.is_zero():
                continue
            A[..., i, (i + j) % q] += xi ** j * g(yv, zeta)
    return TwistedMatrix(q, A)


def linear_det_formula(g: LaurentPolyN, h: LaurentPolyN, zeta, q, xi, eta):
    """prod g(eta zeta^j, zeta) + (-1)^(q-1) xi^q prod h(eta zeta^j, zeta)."""
    pg, ph = 1, 1
    for j in range(q):
        pg = pg * g(eta * zeta ** j, zeta)
        ph = ph * h(eta * zeta ** j, zeta)
    return pg + (-1) ** (q - 1) * xi ** q * ph


def log_abs_det(A):
    """log|det| via LU (slogdet), broadcasting over leading axes."""
    _, la = np.linalg.slogdet(A)
    return la


def is_prime(n):
    if n < 2:
        return False
    p = 2
    while p * p <= n:
        if n % p == 0:
            return False
        p += 1
    return True


def periodic_term(f: GroupRingElement, q: int, n=48, margin=1e-6):
    """(1/q^2) sum over zeta in Omega_q of the torus mean of log|det A_zeta|, with diagnostics."""
    grid = QuadratureGrid(n=n, dims=2, offset=0.5)
    total, err, flagged, minlog = 0.0, 0.0, 0, math.inf
    for p in range(q):
        zeta = cmath.exp(2j * math.pi * p / q)
        size = 1 if p == 0 else q

        def fn(xi, eta, zeta=zeta, size=size):
            nonlocal flagged, minlog
            la = log_abs_det(build_a_matrix(f, zeta, size, xi, eta).entries)
            flagged += int(np.sum(la < math.log(margin)))
            minlog = min(minlog, float(la.min()))
            return la

        r = torus_quad(fn, grid)
        total += r.value
        err += r.error
    return total / q ** 2, err / q ** 2, {"flagged_cells": flagged, "min_log_abs_det": minlog}


def richardson(qs, vals):
    """Fit v(q) = L + a/q + b/q^2 (or fewer terms) by least squares; returns L."""
    qs = np.asarray(qs, dtype=float)
    k = min(3, len(qs))
    V = np.vstack([qs ** -i for i in range(k)]).T
    coef, *_ = np.linalg.lstsq(V, np.asarray(vals, dtype=float), rcond=None)
    return float(coef[0])


def entropy_periodic(f: GroupRingElement, qs=(7, 11, 13), n=48) -> EntropyEstimate:
    """Per-prime-q periodic-determinant values and a Richardson extrapolation in 1/q."""
    for q in qs:
        if not is_prime(q):
            raise ValueError("q must be prime")
    seq, errs, diags = [], [], []
    for q in qs:
        v, e, d = periodic_term(f, q, n)
        seq.append(v)
        errs.append(e)
        diags.append(d)
    ext = richardson(qs, seq) if len(qs) > 1 else seq[-1]
    flagged = sum(d["flagged_cells"] for d in diags)
    return EntropyEstimate(ext, "periodic-determinant", max(errs) if errs else None, True, {
        "q": list(qs), "sequence": seq, "quad_error": errs, "grid": n,
        "flagged_cells": flagged, "per_q": diags,
    })


# ---------------------------------------------------------------- linear formula

def slice_mahler(p: LaurentPolyN, zetas, var=0):
    """m(p(., zeta)) in variable `var` for each zeta (two-variable p)."""
    other = 1 - var
    lo, hi = p.exponent_range(var)
    zetas = np.asarray(zetas, dtype=complex)
    C = np.zeros((zetas.size, hi - lo + 1), dtype=complex)
    for e, c in p.terms.items():
        C[:, e[var] - lo] += c * zetas ** e[other]
    vals, _ = batch_mahler(C)
    return vals


def linear_parts(f: GroupRingElement):
    """(g, h) in (y, z) with f = unit * (g + x h), applying the x <-> y swap when f is linear in y."""
    ks = {k for k, _, _ in f.terms}
    if max(ks) - min(ks) <= 1:
        _, gs = x_decomposition(f)
        if len(gs) == 1:
            return gs[0], LaurentPolyN({}, 2)
        return gs[0], gs[1]
    ls = {l for _, l, _ in f.terms}
    if max(ls) - min(ls) <= 1:
        return linear_parts(SWAP_XY(f))
    raise ValueError("element is not linear in x or y")


def entropy_linear_formula(g: LaurentPolyN, h: LaurentPolyN, n=1024) -> EntropyEstimate:
    """Integral over zeta of max(m(g(., zeta)), m(h(., zeta))) for f = g(y, z) + x h(y, z)."""
    grid = QuadratureGrid(n=n, dims=1, offset=0.5)

    def fn(zeta):
        mg = slice_mahler(g, zeta)
        mh = slice_mahler(h, zeta) if not h.is_zero() else np.full(zeta.shape, -np.inf)
        return np.maximum(mg, mh)

    r = torus_quad(fn, grid)
    return EntropyEstimate(r.value, "linear-formula", r.error, True, {"grid": n})


def entropy_linear_element(f: GroupRingElement, n=1024) -> EntropyEstimate:
    g, h = linear_parts(f)
    return entropy_linear_formula(g, h, n)


def slice_curve(p: LaurentPolyN, n=512, shift=0.0):
    """Rows (s, m(p(., e^(2 pi i s))) + shift) for plotting."""
    s = (np.arange(n) + 0.5) / n
    vals = slice_mahler(p, np.exp(2j * np.pi * s)) + shift
    return list(zip(s.tolist(), vals.tolist()))


# ---------------------------------------------------------------- face entropy

def face_polynomial(f: GroupRingElement, P, Q):
    """F(w, z) with f_F = x^kP y^lP F(x^p y^q, z) along the lattice segment P -> Q."""
    dk, dl = Q[0] - P[0], Q[1] - P[1]
    L = gcd(abs(dk), abs(dl))
    p, q = dk // L, dl // L
    polys = f.coefficient_polys()
    d = {}
    for j in range(L + 1):
        pt = (P[0] + j * p, P[1] + j * q)
        if pt not in polys:
            continue
        twist = -p * q * j * (j - 1) // 2 - P[1] * p * j
        for m, c in polys[pt].items():
            d[(j, m + twist)] = c
    return LaurentPolyN(d, 2)


def face_entropy_lower_bound(f: GroupRingElement, n=128):
    """Entropy of f restricted to each Newton-polygon face; returns (faces, bound)."""
    poly = newton_polygon(f)
    polys = f.coefficient_polys()
    faces = {}
    for v in poly.vertices:
        faces[f"vertex{v}"] = mahler1_exact(polys[v]).log_value
    for P, Q in poly.edges():
        F = face_polynomial(f, P, Q)
        faces[f"edge{P}-{Q}"] = mahler_n(F, n).log_value
    bound = max(faces.values()) if faces else -math.inf
    return faces, bound


# ---------------------------------------------------------------- determinant formulas

def tri_circulant_dense(a, b, c):
    q = len(a)
    M = np.zeros((q, q), dtype=complex)
    for j in range(q):
        M[j, j] += a[j]
        M[j, (j + 1) % q] += b[j]
        M[j, (j + 2) % q] += c[j]
    return M


def tri_circulant_det(a, b, c):
    """prod a - tr(M_0 M_1 ... M_(q-1)) + prod c with M_j = [[-b_j, c_j], [-a_j, 0]]."""
    q = len(a)
    if q < 3:
        raise ValueError("q must be at least 3")
    P = np.eye(2, dtype=complex)
    for j in range(q):
        P = P @ np.array([[-b[j], c[j]], [-a[j], 0]], dtype=complex)
    return complex(np.prod(a) - np.trace(P) + np.prod(c))


def golden_mean_count(q):
    """tr [[1, 1], [1, 0]]^q, the number of closed golden-mean paths of length q (exact)."""
    a, b, c, d = 1, 0, 0, 1
    for _ in range(q):
        a, b, c, d = a + b, a, c + d, c
    return a + d


def simple_tri_circulant_det(a, b, c):
    """Value under c_j a_(j+1) = -b_j b_(j+1): prod a - (-1)^q L_q prod b + prod c."""
    q = len(a)
    return complex(np.prod(a) - (-1) ** q * golden_mean_count(q) * np.prod(b) + np.prod(c))


def quadratic_det_formula(g0, g1, g2, zeta, xi, eta, q):
    """det A for f = g0 + x g1 + x^2 g2 at zeta of order q.

    Equals prod g0 - tr prod [[-g1 xi, g2 xi^2], [-g0, 0]] + xi^(2q) prod g2.
    """
    ys = [eta * zeta ** j for j in range(q)]
    a = [g0(y, zeta) for y in ys]
    b = [g1(y, zeta) * xi for y in ys]
    c = [g2(y, zeta) * xi ** 2 for y in ys]
    return tri_circulant_det(a, b, c)


def simple_det_condition(g0, g1, g2):
    """g1(y, z) g1(yz, z) == -g2(y, z) g0(yz, z) as Laurent polynomials."""
    sh = [[1, 1], [0, 1]]  # y -> yz
    return g1 * g1.unimodular_substitute(sh) == -(g2 * g0.unimodular_substitute(sh))


# ---------------------------------------------------------------- circulants over Z

def circulant_matrix(p: LaurentPoly1, n: int):
    """Matrix of multiplication by p on Z[u]/(u^n - 1) in the basis 1, u, ..., u^(n-1), row form."""
    M = [[0] * n for _ in range(n)]
    for i in range(n):
        for e, c in p.items():
            M[i][(i + e) % n] += c
    return M


def exact_det(M):
    """Bareiss fraction-free determinant of an integer matrix."""
    A = [list(r) for r in M]
    n = len(A)
    sign, prev = 1, 1
    for k in range(n - 1):
        if A[k][k] == 0:
            sw = next((i for i in range(k + 1, n) if A[i][k] != 0), None)
            if sw is None:
                return 0
            A[k], A[sw] = A[sw], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1]


def golden_mean_periodic_counts(n_max=20):
    """{n: |det C_n(u^2 - u - 1)|} exactly."""
    p = LaurentPoly1([-1, -1, 1])
    return {n: abs(exact_det(circulant_matrix(p, n))) for n in range(1, n_max + 1)}


# ---------------------------------------------------------------- Riemann sums, zero entropy

def riemann_sum_check(phi, n, zeta):
    """R_n(log|phi|)(zeta) against m(phi) + D log 2 / n for phi given lowest-first."""
    phi = np.asarray(phi, dtype=complex)
    nzs = np.nonzero(phi)[0]
    D = int(nzs[-1] - nzs[0])
    pts = zeta * np.exp(2j * np.pi * np.arange(n) / n)
    vals = np.polyval(phi[::-1], pts)
    with np.errstate(divide="ignore"):
        R = float(np.mean(np.log(np.abs(vals))))
    m = mahler1_exact(phi).log_value
    bound = m + D * math.log(2) / n
    return {"riemann_sum": R, "mahler": m, "bound": bound, "degree": D, "holds": R <= bound + 1e-12}


def zero_entropy_heuristic(f: LaurentPolyN, margin=1e-6, n=256, k_max=24, n_max=6, max_factors=16):
    """Classify a two-variable f as 'positive', 'zero-candidate' or 'undetermined'."""
    m = mahler_n(f, n)
    # a log singularity biases the grid sum by up to D log 2 / n (D = degree span of the gridded
    # variable), which the grid-halving estimate does not see
    lo, hi = f.exponent_range(0)
    bias = (hi - lo) * math.log(2) / n
    if m.log_value > margin + m.error_bound + bias:
        return "positive", {"mahler": m.log_value}
    rest, factors = f, []
    for _ in range(max_factors):
        if len(rest.terms) == 1:
            (c,) = rest.terms.values()
            if abs(c) == 1:
                return "zero-candidate", {"mahler": m.log_value, "factors": factors}
            break
        hit = generalized_cyclotomic_divisor_search(rest, k_max, n_max)
        if hit is None:
            break
        factors.append(list(hit))
        rest = divide_generalized_cyclotomic(rest, *hit)
    return "undetermined", {"mahler": m.log_value, "factors": factors, "remainder": str(rest)}


# ---------------------------------------------------------------- quadratic conjecture experiment

def quadratic_conjecture_rhs(g0, g1, g2, n=1024):
    """Integral of max(m(g0), log tau + m(g1), m(g2)) over zeta (a conjectural value)."""
    tau = (1 + math.sqrt(5)) / 2
    grid = QuadratureGrid(n=n, dims=1, offset=0.5)

    def fn(zeta):
        return np.maximum.reduce([slice_mahler(g0, zeta), math.log(tau) + slice_mahler(g1, zeta),
                                  slice_mahler(g2, zeta)])

    return torus_quad(fn, grid)


def quadratic_experiment(g: LaurentPolyN, qs=(7, 11, 13), n=48, nz=1024):
    """Compare the conjectural quadratic formula with periodic determinants for
    g0 = -g(y/z, z) g(y, z), g1 = g, g2 = 1."""
    g_shift = g.unimodular_substitute([[1, -1], [0, 1]])  # y -> y z^-1
    g0 = -(g_shift * g)
    g1 = g
    g2 = LaurentPolyN.const(1, 2)
    f = GroupRingElement({(0, l, m): c for (l, m), c in g0.terms.items()}) + \
        GroupRingElement({(1, l, m): c for (l, m), c in g1.terms.items()}) + X ** 2
    rhs = quadratic_conjecture_rhs(g0, g1, g2, nz)
    per = entropy_periodic(f, qs, n)
    return {"element": str(f), "simple_det_condition": simple_det_condition(g0, g1, g2),
            "conjectural_rhs": rhs.value, "periodic": per.value, "periodic_sequence": per.diagnostics["sequence"],
            "label": "conjectural"}
