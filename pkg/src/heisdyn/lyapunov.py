"""Companion cocycles over circle rotations and their Lyapunov exponents.

For f = y^D - g_(D-1)(x, z) y^(D-1) - ... - g_0(x, z) the kernel recurrence is
driven by the companion matrix A(xi, zeta) with last row (g_0, ..., g_(D-1)),
and the entropy is the zeta-integral of the sum of positive exponents.

Randomness: every function takes an integer seed. The master stream is
numpy's default_rng (PCG64) seeded with SeedSequence(seed); per-zeta and
per-trial streams are SeedSequence(seed).spawn(count)[i], so results do not
depend on batching or thread count.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
import cmath
import math

import numpy as np

from .entropy import EntropyEstimate, slice_mahler
from .laurent import LaurentPolyN
from .numeric import QuadratureGrid, torus_quad
from .ring import SWAP_XY, GroupRingElement

GOLDEN = (math.sqrt(5) - 1) / 2


# ---------------------------------------------------------------- cocycle

@dataclass
class CompanionCocycle:
    D: int
    rows: list  # g_0, ..., g_(D-1) as LaurentPolyN in (x, z)
    zeta: complex = 1.0

    def matrix(self, xi, zeta=None):
        """A(xi, zeta), broadcasting over xi: shape xi.shape + (D, D)."""
        zeta = self.zeta if zeta is None else zeta
        xi = np.asarray(xi, dtype=complex)
        A = np.zeros(xi.shape + (self.D, self.D), dtype=complex)
        for i in range(self.D - 1):
            A[..., i, i + 1] = 1
        for j, g in enumerate(self.rows):
            if not g.is_zero():
                A[..., self.D - 1, j] = g(xi, zeta)
        return A


def monic_in_y(f: GroupRingElement):
    """(rows, D) with unit * f = y^D - sum g_j(x, z) y^j, or None if f is not monic in y."""
    ls = sorted({l for _, l, _ in f.terms})
    l0, l1 = ls[0], ls[-1]
    D = l1 - l0
    if D < 1:
        return None
    # left multiplication by y^-l0: x^k y^l z^m -> x^k y^(l - l0) z^(m - l0 k)
    t = {(k, l - l0, m - l0 * k): c for (k, l, m), c in f.terms.items()}
    lead = [(p, c) for p, c in t.items() if p[1] == D]
    if len(lead) != 1 or abs(lead[0][1]) != 1:
        return None
    (a, _, cz), sign = lead[0]
    rows = [dict() for _ in range(D)]
    for (k, l, m), c in t.items():
        if l == D:
            continue
        rows[l][(k - a, m - cz)] = -sign * c
    return [LaurentPolyN(r, 2) for r in rows], D


def companion_from_element(f: GroupRingElement, zeta=1.0):
    """Companion cocycle of f, applying the x <-> y swap (z -> z^-1) when f is monic in x only."""
    r = monic_in_y(f)
    label = "y"
    if r is None:
        r = monic_in_y(SWAP_XY(f))
        label = "x via swap"
    if r is None:
        raise ValueError("element is not monic in x or y")
    rows, D = r
    if rows[0].is_zero():
        raise ValueError("g_0 must be nonzero")
    return CompanionCocycle(D, rows, zeta), label


def cocycle_product(c: CompanionCocycle, xi, n: int):
    """A(xi zeta^(n-1), zeta) ... A(xi, zeta), newest factor on the left."""
    if n < 1:
        raise ValueError("n must be >= 1")
    P = np.eye(c.D, dtype=complex)
    a = np.angle(c.zeta)
    b = np.angle(xi)
    r = abs(xi)
    for j in range(n):
        P = c.matrix(r * np.exp(1j * (b + a * j))) @ P
    return P


# ---------------------------------------------------------------- spectrum

@dataclass
class LyapunovSpectrum:
    exponents: list  # distinct values, ascending
    multiplicities: list
    raw: list  # all D exponents, ascending
    n_steps: int
    n_samples: int
    stderr: list
    diagnostics: dict = field(default_factory=dict)


def _mgs_step(M):
    """Modified Gram-Schmidt on the columns of a batch of D x D matrices; returns (Q, |diag R|)."""
    D = M.shape[-1]
    Q = M.copy()
    diag = np.empty(M.shape[:-1], dtype=float)
    for j in range(D):
        v = Q[..., :, j]
        for i in range(j):
            qi = Q[..., :, i]
            r = np.sum(np.conj(qi) * v, axis=-1)
            v = v - r[..., None] * qi
        nv = np.linalg.norm(v, axis=-1)
        diag[..., j] = nv
        Q[..., :, j] = v / np.where(nv > 0, nv, 1.0)[..., None]
    return Q, diag


def _finite_exponents(c: CompanionCocycle, zetas, xis, n_steps, with_half=False):
    """Time-averaged log|R_jj| for every (zeta, xi) pair; returns sorted exponents (..., D).

    With with_half, also returns the averages after n_steps // 2 steps.
    """
    zetas = np.asarray(zetas, dtype=complex)[:, None]
    a = np.angle(zetas)
    b = np.angle(xis)
    Q = np.broadcast_to(np.eye(c.D, dtype=complex), xis.shape + (c.D, c.D)).copy()
    acc = np.zeros(xis.shape + (c.D,))
    half = None
    for t in range(n_steps):
        A = c.matrix(np.exp(1j * (b + a * t)), zetas)
        Q, d = _mgs_step(A @ Q)
        with np.errstate(divide="ignore"):
            acc += np.log(d)
        if t + 1 == n_steps // 2:
            half = np.sort(acc / (t + 1), axis=-1)
    full = np.sort(acc / n_steps, axis=-1)
    return (full, half) if with_half else full


def _cluster(means, errs, factor=10.0, floor=1e-3):
    ex, mult = [], []
    for m, e in zip(means, errs):
        if ex and abs(m - ex[-1]) <= max(factor * e, floor):
            k = mult[-1]
            ex[-1] = (ex[-1] * k + m) / (k + 1)
            mult[-1] += 1
        else:
            ex.append(float(m))
            mult.append(1)
    return ex, mult


def lyapunov_spectrum(f, zeta, n_steps=4000, n_samples=32, seed=0, allow_rational=False) -> LyapunovSpectrum:
    """Exponents of the companion cocycle of f over rotation by zeta, averaged over random xi.

    zeta must not be a root of unity of order <= 10^6 unless allow_rational is set.
    """
    if not allow_rational and near_rational(cmath.phase(zeta) / (2 * math.pi)):
        raise ValueError("zeta is (numerically) a root of unity; pass allow_rational=True to override")
    c = f if isinstance(f, CompanionCocycle) else companion_from_element(f, zeta)[0]
    rng = np.random.default_rng(np.random.SeedSequence(seed))
    xis = np.exp(2j * np.pi * rng.random((1, n_samples)))
    ex = _finite_exponents(c, [zeta], xis, n_steps)[0]
    means = ex.mean(axis=0)
    errs = ex.std(axis=0, ddof=1) / math.sqrt(n_samples) if n_samples > 1 else np.zeros(c.D)
    distinct, mult = _cluster(means, errs)
    return LyapunovSpectrum(distinct, mult, means.tolist(), n_steps, n_samples, errs.tolist(),
                            {"zeta": [complex(zeta).real, complex(zeta).imag], "seed": seed})


def irrational_zetas(n, offset=0.5, max_den=10 ** 6):
    """Angles frac(offset/n + k * golden), skipping any that near_rational flags."""
    out = []
    k = 0
    while len(out) < n:
        th = (offset / n + k * GOLDEN) % 1.0
        k += 1
        if near_rational(th, max_den):
            continue
        out.append(th)
    return np.array(out)


def near_rational(theta, max_den=10 ** 6, tol=1e-15):
    """True if theta is within tol of p/q with q <= max_den.

    Fractions with q <= 10^6 are ~1e-12 apart, so tol must sit near float precision.
    """
    fr = Fraction(theta % 1.0).limit_denominator(max_den)
    return abs(float(fr) - theta % 1.0) < tol


def entropy_via_lyapunov(f: GroupRingElement, n_zeta=256, n_steps=2000, n_samples=4, seed=0) -> EntropyEstimate:
    """Mean over a Kronecker zeta sequence of the sum of positive exponents.

    The spread across zeta (spikes of the finite-time exponent near roots of unity)
    dominates the spread across xi, so the sample budget goes to zeta.
    """
    c, label = companion_from_element(f)
    th = irrational_zetas(n_zeta)
    zetas = np.exp(2j * np.pi * th)
    children = np.random.SeedSequence(seed).spawn(n_zeta)
    xis = np.stack([np.exp(2j * np.pi * np.random.default_rng(ch).random(n_samples)) for ch in children])
    ex, half = _finite_exponents(c, zetas, xis, n_steps, with_half=True)  # (n_zeta, n_samples, D)
    pos = np.maximum(ex, 0).sum(axis=-1)
    per_zeta = pos.mean(axis=1)
    se_zeta = pos.std(axis=1, ddof=1) / math.sqrt(n_samples) if n_samples > 1 else np.zeros(n_zeta)
    value = float(per_zeta.mean())
    stderr = float(math.sqrt(np.sum(se_zeta ** 2)) / n_zeta)
    spread = float(per_zeta.std(ddof=1) / math.sqrt(n_zeta)) if n_zeta > 1 else 0.0
    # finite-time bias is O(1/n); the gap to the half-length run estimates it
    bias = abs(value - float(np.maximum(half, 0).sum(axis=-1).mean())) if half is not None else 0.0
    return EntropyEstimate(value, "lyapunov", stderr + spread + bias, True, {
        "monic_in": label, "n_zeta": n_zeta, "n_steps": n_steps, "n_samples": n_samples, "seed": seed,
        "stderr": stderr, "zeta_spread": spread, "time_bias": bias, "zeta_angles": th.tolist(), "per_zeta": per_zeta.tolist(),
        "exponent_sums": ex.sum(axis=-1).mean(axis=1).tolist(),
    })


def sum_rule_reference(c: CompanionCocycle, zetas):
    """m(g_0(., zeta)): the expected sum of all exponents at each zeta."""
    return slice_mahler(c.rows[0], np.asarray(zetas, dtype=complex))


# ---------------------------------------------------------------- Herman bound

def herman_lower_bound(f: GroupRingElement, n=1024):
    """Integral over zeta of log+ spr A(0, zeta); requires nonnegative x-powers."""
    c, _ = companion_from_element(f)
    for g in c.rows:
        if any(e[0] < 0 for e in g.terms):
            raise ValueError("negative powers of x are not allowed")
    grid = QuadratureGrid(n=n, dims=1, offset=0.5)

    def fn(zeta):
        A = np.zeros(zeta.shape + (c.D, c.D), dtype=complex)
        for i in range(c.D - 1):
            A[..., i, i + 1] = 1
        for j, g in enumerate(c.rows):
            g0 = LaurentPolyN({(0, m): v for (k, m), v in g.terms.items() if k == 0}, 2)
            if not g0.is_zero():
                A[..., c.D - 1, j] = g0(0, zeta)
        spr = np.max(np.abs(np.linalg.eigvals(A)), axis=-1)
        with np.errstate(divide="ignore"):
            return np.maximum(np.log(spr), 0.0)

    return torus_quad(fn, grid).value


# ---------------------------------------------------------------- kappa surface

def kappa_surface(f: GroupRingElement, n_xi=64, n_zeta=64, burn_in=400):
    """log|kappa(xi, zeta)| on a grid: growth of the pulled-forward top direction in one step."""
    c, _ = companion_from_element(f)
    s = (np.arange(n_xi) + 0.5) / n_xi
    t = irrational_zetas(n_zeta)
    a = 2 * np.pi * t[:, None]
    b = 2 * np.pi * s[None, :]
    v = np.zeros((n_zeta, n_xi, c.D), dtype=complex)
    v[..., 0] = 1
    v[..., -1] = 0.3
    zetas = np.exp(1j * a)
    for j in range(-burn_in, 0):
        A = c.matrix(np.exp(1j * (b + a * j)), zetas)
        v = np.einsum("...ij,...j->...i", A, v)
        v /= np.linalg.norm(v, axis=-1, keepdims=True)
    A = c.matrix(np.exp(1j * b), zetas)
    w = np.einsum("...ij,...j->...i", A, v)
    return t, s, np.log(np.linalg.norm(w, axis=-1))


# ---------------------------------------------------------------- random products

def _block_product(a, b, k0, k1):
    """Product M_(k1-1) ... M_k0 for each trial by pairwise reduction; returns (mats, log scale)."""
    ks = np.arange(k0, k1)
    e = np.exp(2j * np.pi * (np.outer(a, ks) + b[:, None]))
    T = len(a)
    M = np.zeros((T, len(ks), 2, 2), dtype=complex)
    M[..., 0, 1] = 1
    M[..., 1, 0] = 1
    M[..., 1, 1] = e
    logs = np.zeros(T)
    while M.shape[1] > 1:
        if M.shape[1] % 2:
            pad = np.broadcast_to(np.eye(2, dtype=complex), (T, 1, 2, 2))
            M = np.concatenate([M, pad], axis=1)
        M = M[:, 1::2] @ M[:, 0::2]
        sc = np.max(np.abs(M), axis=(-2, -1))
        M = M / sc[..., None, None]
        logs += np.log(sc).sum(axis=1)
    return M[:, 0], logs


def random_product_values(a, b, n, block=4096):
    """(1/n) log ||prod_{k<n} [[0, 1], [1, e^(2 pi i (k a + b))]]|| for arrays a, b."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    T = len(a)
    P = np.broadcast_to(np.eye(2, dtype=complex), (T, 2, 2)).copy()
    logs = np.zeros(T)
    max_raw = 0.0
    for k0 in range(0, n, block):
        B, lb = _block_product(a, b, k0, min(n, k0 + block))
        P = B @ P
        sc = np.max(np.abs(P), axis=(-2, -1))
        max_raw = max(max_raw, float(sc.max()))
        P = P / sc[:, None, None]
        logs += lb + np.log(sc)
    norms = np.linalg.norm(P, ord=2, axis=(-2, -1))
    return (logs + np.log(norms)) / n, max_raw


def random_product_experiment(n=10 ** 5, trials=20, seed=0, forced=None):
    """Normalized log norms for (a, b) drawn per trial from SeedSequence(seed).spawn(trials)."""
    if n < 1000:
        raise ValueError("n must be at least 1000")
    if forced is not None:
        a = np.full(trials, float(forced[0]))
        b = np.full(trials, float(forced[1]))
    else:
        ab = np.array([np.random.default_rng(ch).random(2) for ch in np.random.SeedSequence(seed).spawn(trials)])
        a, b = ab[:, 0], ab[:, 1]
    vals, max_raw = random_product_values(a, b, n)
    return {"n": n, "trials": trials, "seed": seed, "a": a.tolist(), "b": b.tolist(),
            "values": vals.tolist(), "mean": float(vals.mean()), "std": float(vals.std(ddof=1)) if trials > 1 else 0.0,
            "mean_abs": float(np.abs(vals).mean()), "max_raw_norm": max_raw}
