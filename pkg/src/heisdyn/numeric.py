"""Root finding, Mahler measures, torus quadrature and exact arithmetic in Q(sqrt 5)."""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
import math

import numpy as np

from .laurent import LaurentPoly1, LaurentPolyN

BACKWARD_TOL = 1e-12


class RootFindingError(RuntimeError):
    def __init__(self, msg, residuals):
        super().__init__(msg)
        self.residuals = residuals


@dataclass(frozen=True)
class MahlerValue:
    log_value: float
    error_bound: float
    method: str  # "exact-roots" | "quadrature"
    diagnostics: dict = field(default_factory=dict, compare=False)

    @property
    def value(self):
        return self.log_value

    @property
    def measure(self):
        return math.exp(self.log_value) if self.log_value > -math.inf else 0.0


@dataclass(frozen=True)
class QuadratureGrid:
    n: int = 64
    dims: int = 1
    parallel_chunk: int = 1 << 16
    offset: float = 0.0
    workers: int = 1

    def __post_init__(self):
        if self.n < 4 or self.n % 2:
            raise ValueError("grid size must be even and at least 4")
        if not 1 <= self.dims <= 3:
            raise ValueError("dims must be 1, 2 or 3")


@dataclass(frozen=True)
class QuadResult:
    value: float
    error: float
    n: int
    diagnostics: dict = field(default_factory=dict, compare=False)


# ---------------------------------------------------------------- roots

def _trim_high(c):
    c = np.asarray(c, dtype=complex)
    hi = len(c)
    while hi > 0 and c[hi - 1] == 0:
        hi -= 1
    return c[:hi]


def backward_errors(c, roots):
    """Normwise backward error |p(r)| / sum |c_i||r|^i per root (c lowest first)."""
    c = np.asarray(c, dtype=complex)
    roots = np.asarray(roots, dtype=complex)
    if roots.size == 0:
        return np.zeros(0)
    hf = c[::-1]
    num = np.abs(np.polyval(hf, roots))
    den = np.polyval(np.abs(hf), np.abs(roots))
    return num / np.where(den > 0, den, 1.0)


def poly_roots(c, tol=BACKWARD_TOL, polish=3):
    """Roots of sum c_i u^i (lowest first); leading coefficient must be nonzero.

    Companion eigenvalues followed by guarded Newton polishing; raises
    RootFindingError when some backward error exceeds tol.
    """
    c = np.asarray(c, dtype=complex)
    if c.size == 0 or c[-1] == 0:
        raise ValueError("leading coefficient must be nonzero")
    nz = 0
    while nz < len(c) - 1 and c[nz] == 0:
        nz += 1
    core = c[nz:]
    roots = np.roots(core[::-1]) if len(core) > 1 else np.zeros(0, dtype=complex)
    hf = core[::-1]
    dhf = np.polyder(hf) if len(hf) > 1 else np.zeros(1)
    for _ in range(polish):
        if roots.size == 0:
            break
        pv = np.polyval(hf, roots)
        dv = np.polyval(dhf, roots)
        step = np.where(dv != 0, pv / np.where(dv != 0, dv, 1), 0)
        cand = roots - step
        better = np.abs(np.polyval(hf, cand)) < np.abs(pv)
        roots = np.where(better, cand, roots)
    roots = np.concatenate([np.zeros(nz, dtype=complex), roots])
    be = backward_errors(c, roots)
    if be.size and be.max() > tol:
        raise RootFindingError(f"backward error {be.max():.3e} exceeds {tol:.1e}", be)
    return roots


def mahler1_exact(f) -> MahlerValue:
    """log|c_n| + sum log+|root| for a univariate polynomial.

    Accepts a LaurentPoly1 or a coefficient sequence (lowest first).
    """
    if isinstance(f, LaurentPoly1):
        c = np.array(f.coeffs, dtype=complex)
    else:
        c = _trim_high(f)
    if c.size == 0 or not np.any(c):
        raise ValueError("zero polynomial")
    lo = 0
    while c[lo] == 0:
        lo += 1
    c = c[lo:]
    if len(c) == 1:
        return MahlerValue(float(np.log(abs(c[0]))), 0.0, "exact-roots")
    roots = poly_roots(c)
    hf = c[::-1]
    dv = np.abs(np.polyval(np.polyder(hf), roots))
    pv = np.abs(np.polyval(hf, roots))
    delta = np.where(dv > 0, pv / np.where(dv > 0, dv, 1), np.inf)
    a = np.abs(roots)
    val = float(np.log(abs(c[-1])) + np.sum(np.log(np.maximum(a, 1.0))))
    near = a + delta > 1.0
    err = float(np.sum(np.minimum(delta[near] / np.maximum(a[near] - delta[near], 1e-300), 1.0)))
    err += 4 * np.finfo(float).eps * len(c) * (1 + abs(val))
    return MahlerValue(val, err, "exact-roots", {"roots": roots})


def batch_mahler(C, rel=1e-14):
    """Row-wise Mahler measures of polynomials with coefficient rows C (lowest first).

    Degree drops (leading coefficient below rel * max) are handled per row.
    Returns (values, max backward error).
    """
    C = np.asarray(C, dtype=complex)
    N, W = C.shape
    out = np.empty(N)
    absC = np.abs(C)
    scale = absC.max(axis=1)
    if np.any(scale == 0):
        raise ValueError("zero polynomial in batch")
    mask = absC > rel * scale[:, None]
    deg = W - 1 - np.argmax(mask[:, ::-1], axis=1)
    low = np.argmax(mask, axis=1)
    worst = 0.0
    for d in np.unique(deg):
        for lo in np.unique(low[deg == d]):
            rows = np.nonzero((deg == d) & (low == lo))[0]
            c = C[rows, lo:d + 1]
            k = d - lo
            lead = c[:, -1]
            if k == 0:
                out[rows] = np.log(np.abs(lead))
                continue
            comp = np.zeros((len(rows), k, k), dtype=complex)
            comp[:, 0, :] = -(c[:, :-1] / lead[:, None])[:, ::-1]
            if k > 1:
                comp[:, np.arange(1, k), np.arange(0, k - 1)] = 1.0
            roots = np.linalg.eigvals(comp)
            hf = c[:, ::-1]
            # one Newton step, kept only where it reduces the residual
            pv = _horner(hf, roots)
            dhf = hf[:, :-1] * np.arange(k, 0, -1)[None, :]
            dv = _horner(dhf, roots)
            ok = dv != 0
            cand = roots - np.where(ok, pv / np.where(ok, dv, 1), 0)
            pc = _horner(hf, cand)
            roots = np.where(np.abs(pc) < np.abs(pv), cand, roots)
            pv = np.abs(_horner(hf, roots))
            den = _horner(np.abs(hf), np.abs(roots)).real
            worst = max(worst, float(np.max(pv / np.where(den > 0, den, 1))))
            out[rows] = np.log(np.abs(lead)) + np.sum(np.log(np.maximum(np.abs(roots), 1.0)), axis=1)
    return out, worst


def _horner(hf, x):
    """Evaluate rows of highest-first coefficients hf at points x (rows x roots)."""
    v = np.zeros_like(x, dtype=complex) + hf[:, :1]
    for j in range(1, hf.shape[1]):
        v = v * x + hf[:, j:j + 1]
    return v


# ---------------------------------------------------------------- quadrature

def _grid_points(n, dims, offset):
    th = (np.arange(n) + offset) / n
    return th


def torus_quad(fn, grid: QuadratureGrid) -> QuadResult:
    """Uniform mean of fn over an n^dims grid on the torus, with a grid-halving error estimate.

    fn receives dims arrays of unit complex numbers (same shape) and returns real values.
    The coarse estimate reuses the even-index subgrid, so no extra evaluations are made.
    """
    n, dims = grid.n, grid.dims
    th = _grid_points(n, dims, grid.offset)
    u = np.exp(2j * np.pi * th)
    # chunk along the first axis; deterministic order of partial sums
    rows_per_chunk = max(1, grid.parallel_chunk // (n ** (dims - 1)))
    chunks = [np.arange(i, min(i + rows_per_chunk, n)) for i in range(0, n, rows_per_chunk)]

    def work(idx):
        axes = [u[idx]] + [u] * (dims - 1)
        mesh = np.meshgrid(*axes, indexing="ij")
        vals = np.asarray(fn(*mesh), dtype=float)
        even = (idx % 2 == 0)
        sub = vals[even]
        for ax in range(1, dims):
            sub = np.take(sub, np.arange(0, n, 2), axis=ax)
        return float(vals.sum()), float(sub.sum())

    if grid.workers > 1:
        with ThreadPoolExecutor(grid.workers) as ex:
            parts = list(ex.map(work, chunks))
    else:
        parts = [work(c) for c in chunks]
    fine = math.fsum(p[0] for p in parts) / n ** dims
    coarse = math.fsum(p[1] for p in parts) / (n // 2) ** dims
    return QuadResult(fine, abs(fine - coarse), n)


def torus_log_abs_mean(F, grid: QuadratureGrid, margin=1e-6, refine=8) -> QuadResult:
    """Mean of log|F| over the torus grid.

    Cells where |F| falls below margin are re-integrated on a refine^dims subgrid
    of the cell and reported in the diagnostics instead of being clipped.
    """
    n, dims = grid.n, grid.dims
    flagged = []
    minabs = [math.inf]

    def fn(*us):
        a = np.abs(F(*us))
        minabs[0] = min(minabs[0], float(a.min()))
        bad = a < margin
        out = np.log(np.where(bad, 1.0, a))
        if np.any(bad):
            idx = np.argwhere(bad)
            sub = (np.arange(refine) + 0.5) / refine - 0.5
            for i in idx:
                centre = [np.angle(us[d][tuple(i)]) / (2 * np.pi) for d in range(dims)]
                axes = [np.exp(2j * np.pi * (c + sub / n)) for c in centre]
                mesh = np.meshgrid(*axes, indexing="ij")
                s = np.abs(F(*mesh))
                with np.errstate(divide="ignore"):
                    out[tuple(i)] = float(np.mean(np.log(s)))
                flagged.append(tuple(float(c) for c in centre))
        return out

    r = torus_quad(fn, grid)
    diag = {"flagged_cells": len(flagged), "min_abs": minabs[0], "flag_locations": flagged[:20]}
    return QuadResult(r.value, r.error, r.n, diag)


def mahler_n(f: LaurentPolyN, grid: QuadratureGrid | int = 64, inner=None) -> MahlerValue:
    """Mahler measure of a Laurent polynomial in up to 3 commuting variables.

    The innermost variable is integrated exactly by Jensen's formula on each
    slice; the remaining variables use the uniform grid.
    """
    if f.is_zero():
        raise ValueError("zero polynomial")
    d = f.nvars
    if d > 3:
        raise ValueError("at most 3 variables")
    if len(f.terms) == 1:
        (c,) = f.terms.values()
        return MahlerValue(math.log(abs(c)), 0.0, "exact-roots")
    used = [i for i in range(d) if any(e[i] for e in f.terms)]
    if len(used) < d:
        # drop variables that do not occur; otherwise the grid can sit on a zero set
        g = LaurentPolyN({tuple(e[i] for i in used): c for e, c in f.terms.items()}, len(used))
        return mahler_n(g, grid if isinstance(grid, int) else grid.n,
                        used.index(inner) if inner in used else None)
    if inner is None:
        inner = d - 1
    if d == 1:
        from .laurent import univariate
        return mahler1_exact(univariate(f, 0))
    if isinstance(grid, int):
        # midpoints keep the grid off roots of unity, where cyclotomic factors vanish
        grid = QuadratureGrid(n=grid, dims=d - 1, offset=0.5)
    elif grid.dims != d - 1:
        grid = QuadratureGrid(grid.n, d - 1, grid.parallel_chunk, grid.offset, grid.workers)
    outer = [i for i in range(d) if i != inner]
    lo, hi = f.exponent_range(inner)
    worst = [0.0]

    def fn(*us):
        shape = us[0].shape
        C = np.zeros((us[0].size, hi - lo + 1), dtype=complex)
        flat = [u.ravel() for u in us]
        for e, c in f.terms.items():
            t = np.full(us[0].size, complex(c))
            for u, i in zip(flat, outer):
                if e[i]:
                    t = t * u ** e[i]
            C[:, e[inner] - lo] += t
        vals, be = batch_mahler(C)
        worst[0] = max(worst[0], be)
        return vals.reshape(shape)

    r = torus_quad(fn, grid)
    return MahlerValue(r.value, r.error, "quadrature", {"n": grid.n, "backward_error": worst[0]})


# ---------------------------------------------------------------- Q(sqrt 5)

@dataclass(frozen=True)
class Sqrt5Number:
    """a + b sqrt(5) with rational a, b."""

    a: Fraction = Fraction(0)
    b: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "b", Fraction(self.b))

    @staticmethod
    def coerce(v):
        return v if isinstance(v, Sqrt5Number) else Sqrt5Number(Fraction(v), 0)

    def __add__(self, o):
        o = Sqrt5Number.coerce(o)
        return Sqrt5Number(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __neg__(self):
        return Sqrt5Number(-self.a, -self.b)

    def __sub__(self, o):
        return self + (-Sqrt5Number.coerce(o))

    def __rsub__(self, o):
        return Sqrt5Number.coerce(o) - self

    def __mul__(self, o):
        o = Sqrt5Number.coerce(o)
        return Sqrt5Number(self.a * o.a + 5 * self.b * o.b, self.a * o.b + self.b * o.a)

    __rmul__ = __mul__

    def conj(self):
        return Sqrt5Number(self.a, -self.b)

    def norm(self):
        return self.a * self.a - 5 * self.b * self.b

    def inv(self):
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("zero in Q(sqrt 5)")
        c = self.conj()
        return Sqrt5Number(c.a / n, c.b / n)

    def __truediv__(self, o):
        return self * Sqrt5Number.coerce(o).inv()

    def __pow__(self, n):
        if n < 0:
            return self.inv() ** (-n)
        out, base = Sqrt5Number(1), self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def is_rational(self):
        return self.b == 0

    def __float__(self):
        if self.a * self.b < 0:
            # a + b sqrt 5 = (a^2 - 5 b^2) / (a - b sqrt 5) avoids cancellation
            return float(self.norm()) / (float(self.a) - float(self.b) * math.sqrt(5))
        return float(self.a) + float(self.b) * math.sqrt(5)

    def __bool__(self):
        return bool(self.a) or bool(self.b)


TAU = Sqrt5Number(Fraction(1, 2), Fraction(1, 2))
SIGMA = Sqrt5Number(Fraction(1, 2), Fraction(-1, 2))


def sqrt5_poly_mul(p, q):
    """Product of polynomials over Q(sqrt 5) given as coefficient lists (lowest first)."""
    if not p or not q:
        return []
    out = [Sqrt5Number() for _ in range(len(p) + len(q) - 1)]
    for i, a in enumerate(p):
        if not a:
            continue
        for j, b in enumerate(q):
            out[i + j] = out[i + j] + a * b
    return out


def sqrt5_poly_conj(p):
    return [c.conj() for c in p]
