"""Integer group ring of the discrete Heisenberg group.

Group elements are stored in normal form x^k y^l z^m with z central and
yx = xyz, so that

    (x^a y^b z^c)(x^d y^e z^f) = x^(a+d) y^(b+e) z^(c+f+b*d).

Coefficients are Python integers, hence arbitrary precision.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

import numpy as np

from .laurent import LaurentPoly1, LaurentPolyN, poly_gcd

Monomial = tuple  # (k, l, m)

IDENTITY = (0, 0, 0)


def mul_monomial(p, q):
    a, b, c = p
    d, e, f = q
    return (a + d, b + e, c + f + b * d)


def inverse_monomial(p):
    k, l, m = p
    return (-k, -l, l * k - m)


def pow_monomial(p, n):
    """p^n via (x^a y^b z^c)^n = x^(na) y^(nb) z^(nc + ab n(n-1)/2)."""
    if n < 0:
        return pow_monomial(inverse_monomial(p), -n)
    a, b, c = p
    return (n * a, n * b, n * c + a * b * n * (n - 1) // 2)


def format_monomial(p):
    parts = []
    for name, e in zip("xyz", p):
        if e == 1:
            parts.append(name)
        elif e != 0:
            parts.append(f"{name}^{e}")
    return "*".join(parts) if parts else "1"


class GroupRingElement:
    """Finite sum of Heisenberg group elements with integer (or rational) coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        d = {}
        for mono, c in (terms or {}).items():
            if c:
                mono = tuple(int(v) for v in mono)
                d[mono] = d.get(mono, 0) + c
        self.terms = {k: v for k, v in d.items() if v != 0}

    # -- constructors
    @classmethod
    def const(cls, c):
        return cls({IDENTITY: c})

    @classmethod
    def monomial(cls, k=0, l=0, m=0, c=1):
        return cls({(k, l, m): c})

    @classmethod
    def coerce(cls, v):
        if isinstance(v, GroupRingElement):
            return v
        if isinstance(v, (int, Rational)):
            return cls.const(v)
        raise TypeError(f"cannot coerce {type(v).__name__}")

    # -- basic protocol
    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        try:
            other = GroupRingElement.coerce(other)
        except TypeError:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other):
        other = GroupRingElement.coerce(other)
        d = dict(self.terms)
        for mono, c in other.terms.items():
            d[mono] = d.get(mono, 0) + c
        return GroupRingElement(d)

    __radd__ = __add__

    def __neg__(self):
        return GroupRingElement({k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-GroupRingElement.coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Rational)):
            return GroupRingElement({k: v * other for k, v in self.terms.items()})
        other = GroupRingElement.coerce(other)
        d = {}
        for p, a in self.terms.items():
            for q, b in other.terms.items():
                r = mul_monomial(p, q)
                d[r] = d.get(r, 0) + a * b
        return GroupRingElement(d)

    def __rmul__(self, other):
        if isinstance(other, (int, Rational)):
            return self * other
        return GroupRingElement.coerce(other) * self

    def __pow__(self, n):
        if n < 0:
            unit = self.as_unit()
            if unit is None:
                raise ValueError("negative power of a non-unit")
            sign, mono = unit
            return GroupRingElement({pow_monomial(mono, n): sign ** (-n)})
        out = GroupRingElement.const(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            n >>= 1
            if n:
                base = base * base
        return out

    def as_unit(self):
        """(sign, monomial) if self is +-monomial, else None."""
        if len(self.terms) != 1:
            return None
        (mono, c), = self.terms.items()
        if c in (1, -1):
            return c, mono
        return None

    # -- structure
    def support(self):
        return sorted(self.terms)

    def coefficient(self, mono):
        return self.terms.get(tuple(mono), 0)

    def constant_term(self):
        return self.terms.get(IDENTITY, 0)

    def l1_norm(self):
        return sum(abs(c) for c in self.terms.values())

    def star(self):
        return GroupRingElement({inverse_monomial(p): c for p, c in self.terms.items()})

    def coefficient_polys(self):
        """{(k, l): g_kl(z)} with g_kl in Z[z^+-]."""
        d = {}
        for (k, l, m), c in self.terms.items():
            d.setdefault((k, l), {})[m] = c
        return {kl: LaurentPoly1.from_dict(v) for kl, v in d.items()}

    def newton_polygon(self):
        return newton_polygon(self)

    def content(self):
        return content(self)

    def abelianize(self):
        return abelianize(self)

    def box(self):
        ks = [p[0] for p in self.terms]
        ls = [p[1] for p in self.terms]
        ms = [p[2] for p in self.terms]
        return (min(ks), max(ks)), (min(ls), max(ls)), (min(ms), max(ms))

    def evaluate_commutative(self, xi, eta, zeta):
        """Sum c x^k y^l z^m at commuting complex values (used when zeta = 1 or on slices)."""
        out = 0
        for (k, l, m), c in self.terms.items():
            out = out + c * xi ** k * eta ** l * zeta ** m
        return out

    def __repr__(self):
        return f"GroupRingElement({self})"

    def __str__(self):
        return format_element(self)


def format_element(f):
    if f.is_zero():
        return "0"
    out = ""
    for mono in sorted(f.terms):
        c = f.terms[mono]
        s = format_monomial(mono)
        neg = c < 0
        a = -c if neg else c
        if s == "1":
            term = str(a)
        elif a == 1:
            term = s
        else:
            term = f"{a}*{s}"
        if not out:
            out = ("-" if neg else "") + term
        else:
            out += ("-" if neg else "+") + term
    return out


X = GroupRingElement.monomial(1, 0, 0)
Y = GroupRingElement.monomial(0, 1, 0)
Z = GroupRingElement.monomial(0, 0, 1)
ONE = GroupRingElement.const(1)


# ---------------------------------------------------------------- Newton polygon

@dataclass(frozen=True)
class NewtonPolygon:
    """Counterclockwise lattice vertices of a convex hull; empty for the zero element."""

    vertices: tuple

    def edges(self):
        v = self.vertices
        if len(v) < 2:
            return []
        if len(v) == 2:
            return [(v[0], v[1])]
        return [(v[i], v[(i + 1) % len(v)]) for i in range(len(v))]

    def __len__(self):
        return len(self.vertices)


def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def convex_hull(points):
    pts = sorted(set(points))
    if len(pts) <= 2:
        return tuple(pts)
    lower, upper = [], []
    for p in pts:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    for p in reversed(pts):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    hull = lower[:-1] + upper[:-1]
    return tuple(hull)


def newton_polygon(f: GroupRingElement) -> NewtonPolygon:
    return NewtonPolygon(convex_hull(f.coefficient_polys().keys()))


def minkowski_sum(P: NewtonPolygon, Q: NewtonPolygon) -> NewtonPolygon:
    if not P.vertices or not Q.vertices:
        return NewtonPolygon(())
    return NewtonPolygon(convex_hull([(a[0] + b[0], a[1] + b[1]) for a in P.vertices for b in Q.vertices]))


# ---------------------------------------------------------------- content, abelianization

def content(f: GroupRingElement) -> LaurentPoly1:
    """gcd in Z[z^+-] of the coefficient polynomials, primitive with positive leading coefficient."""
    g = LaurentPoly1()
    for p in f.coefficient_polys().values():
        g = poly_gcd(g, p)
    return g


def abelianize(f: GroupRingElement) -> LaurentPolyN:
    """Image under x -> u1, y -> u2, z -> 1."""
    d = {}
    for (k, l, _), c in f.terms.items():
        d[(k, l)] = d.get((k, l), 0) + c
    return LaurentPolyN(d, 2)


def from_xz(p: LaurentPolyN, linear_y=0) -> GroupRingElement:
    """Element sum c x^i z^j y^linear_y from a polynomial in (x, z)."""
    return GroupRingElement({(i, linear_y, j): c for (i, j), c in p.terms.items()})


def from_yz_times_x(p: LaurentPolyN, xpow=0) -> GroupRingElement:
    """Element x^xpow * sum c y^i z^j from a polynomial in (y, z)."""
    return GroupRingElement({(xpow, i, j): c for (i, j), c in p.terms.items()})


# ---------------------------------------------------------------- automorphisms

@dataclass(frozen=True)
class GroupAutomorphism:
    """x -> x^a y^b z^r, y -> x^c y^d z^s, z -> z^(ad - bc)."""

    a: int = 1
    b: int = 0
    c: int = 0
    d: int = 1
    r: int = 0
    s: int = 0

    def __post_init__(self):
        if self.det not in (1, -1):
            raise ValueError("ad - bc must be +-1")

    @property
    def det(self):
        return self.a * self.d - self.b * self.c

    def image(self, mono):
        k, l, m = mono
        px = (self.a, self.b, self.r)
        py = (self.c, self.d, self.s)
        out = mul_monomial(pow_monomial(px, k), pow_monomial(py, l))
        return mul_monomial(out, (0, 0, self.det * m))

    def __call__(self, f: GroupRingElement) -> GroupRingElement:
        d = {}
        for mono, c in f.terms.items():
            t = self.image(mono)
            d[t] = d.get(t, 0) + c
        return GroupRingElement(d)


SWAP_XY = GroupAutomorphism(a=0, b=1, c=1, d=0)


def apply_automorphism(phi: GroupAutomorphism, f: GroupRingElement) -> GroupRingElement:
    return phi(f)


# ---------------------------------------------------------------- q-binomials

def q_binomial_expand(n: int):
    """Coefficients [n; k]_z of x^k y^(n-k) in (x + y)^n, read off from the actual power."""
    if n < 1:
        raise ValueError("n must be positive")
    p = (X + Y) ** n
    out = []
    for k in range(n + 1):
        d = {m: c for (a, b, m), c in p.terms.items() if a == k and b == n - k}
        out.append(LaurentPoly1.from_dict(d))
    return out


def gaussian_binomial(n: int, k: int) -> LaurentPoly1:
    """prod_{j=0}^{k-1} (z^(n-j) - 1)/(z^(j+1) - 1)."""
    from .laurent import exact_quotient
    num = LaurentPoly1([1])
    den = LaurentPoly1([1])
    for j in range(k):
        num = num * LaurentPoly1([-1] + [0] * (n - j - 1) + [1])
        den = den * LaurentPoly1([-1] + [0] * j + [1])
    return exact_quotient(num, den)


# ---------------------------------------------------------------- dense fast path

_INT64_SAFE = 2 ** 62


class DenseElement:
    """Dense coefficient array over a box [k0..] x [l0..] x [m0..].

    Used for long products by a sparse factor, where the sparse map would be slow.
    Integer dtype is int64 while a running l1 bound guarantees no overflow, else object.
    """

    def __init__(self, arr, offset, l1_bound=None):
        self.arr = arr
        self.offset = tuple(offset)
        if l1_bound is None:
            l1_bound = int(np.abs(arr.astype(object)).sum()) if arr.size else 0
        self.l1_bound = l1_bound

    @classmethod
    def from_sparse(cls, f: GroupRingElement):
        if f.is_zero():
            return cls(np.zeros((1, 1, 1), dtype=np.int64), (0, 0, 0), 0)
        (k0, k1), (l0, l1), (m0, m1) = f.box()
        l1b = f.l1_norm()
        dtype = np.int64 if l1b < _INT64_SAFE else object
        arr = np.zeros((k1 - k0 + 1, l1 - l0 + 1, m1 - m0 + 1), dtype=dtype)
        for (k, l, m), c in f.terms.items():
            arr[k - k0, l - l0, m - m0] = c
        return cls(arr, (k0, l0, m0), l1b)

    def to_sparse(self):
        out = {}
        k0, l0, m0 = self.offset
        for idx in zip(*np.nonzero(self.arr)):
            i, j, t = (int(v) for v in idx)
            out[(i + k0, j + l0, t + m0)] = int(self.arr[i, j, t])
        return GroupRingElement(out)

    def coefficient(self, mono):
        k, l, m = mono
        k0, l0, m0 = self.offset
        i, j, t = k - k0, l - l0, m - m0
        K, L, M = self.arr.shape
        if 0 <= i < K and 0 <= j < L and 0 <= t < M:
            return int(self.arr[i, j, t])
        return 0

    def trim(self):
        a = self.arr
        nz = np.nonzero(a)
        if len(nz[0]) == 0:
            return DenseElement(np.zeros((1, 1, 1), dtype=a.dtype), (0, 0, 0), 0)
        lo = [int(v.min()) for v in nz]
        hi = [int(v.max()) + 1 for v in nz]
        sub = a[lo[0]:hi[0], lo[1]:hi[1], lo[2]:hi[2]]
        off = tuple(o + l for o, l in zip(self.offset, lo))
        return DenseElement(np.ascontiguousarray(sub), off, self.l1_bound)

    def times(self, h: GroupRingElement) -> "DenseElement":
        """self * h (h sparse, multiplied on the right)."""
        terms = list(h.terms.items())
        if not terms:
            return DenseElement.from_sparse(GroupRingElement())
        K, L, M = self.arr.shape
        k0, l0, m0 = self.offset
        l_lo, l_hi = l0, l0 + L - 1
        nk0 = k0 + min(t[0][0] for t in terms)
        nk1 = k0 + K - 1 + max(t[0][0] for t in terms)
        nl0 = l0 + min(t[0][1] for t in terms)
        nl1 = l_hi + max(t[0][1] for t in terms)
        shifts = [c + l * a for (a, _, c), _ in terms for l in (l_lo, l_hi)]
        nm0 = m0 + min(shifts)
        nm1 = m0 + M - 1 + max(shifts)
        l1b = self.l1_bound * h.l1_norm()
        dtype = np.int64 if l1b < _INT64_SAFE and self.arr.dtype != object else object
        src = self.arr.astype(dtype, copy=False)
        new = np.zeros((nk1 - nk0 + 1, nl1 - nl0 + 1, nm1 - nm0 + 1), dtype=dtype)
        for (a, b, c), v in terms:
            ks = k0 + a - nk0
            for j in range(L):
                l = l0 + j
                ms = m0 + c + l * a - nm0
                new[ks:ks + K, l + b - nl0, ms:ms + M] += v * src[:, j, :]
        return DenseElement(new, (nk0, nl0, nm0), l1b).trim()

    def times_left(self, h: GroupRingElement) -> "DenseElement":
        """h * self."""
        terms = list(h.terms.items())
        if not terms:
            return DenseElement.from_sparse(GroupRingElement())
        K, L, M = self.arr.shape
        k0, l0, m0 = self.offset
        k_lo, k_hi = k0, k0 + K - 1
        nk0 = k0 + min(t[0][0] for t in terms)
        nk1 = k_hi + max(t[0][0] for t in terms)
        nl0 = l0 + min(t[0][1] for t in terms)
        nl1 = l0 + L - 1 + max(t[0][1] for t in terms)
        shifts = [c + b * k for (_, b, c), _ in terms for k in (k_lo, k_hi)]
        nm0 = m0 + min(shifts)
        nm1 = m0 + M - 1 + max(shifts)
        l1b = self.l1_bound * h.l1_norm()
        dtype = np.int64 if l1b < _INT64_SAFE and self.arr.dtype != object else object
        src = self.arr.astype(dtype, copy=False)
        new = np.zeros((nk1 - nk0 + 1, nl1 - nl0 + 1, nm1 - nm0 + 1), dtype=dtype)
        for (a, b, c), v in terms:
            ls = l0 + b - nl0
            for i in range(K):
                k = k0 + i
                ms = m0 + c + b * k - nm0
                new[k + a - nk0, ls:ls + L, ms:ms + M] += v * src[i, :, :]
        return DenseElement(new, (nk0, nl0, nm0), l1b).trim()

    def scaled(self, c):
        l1b = self.l1_bound * abs(c)
        dtype = np.int64 if l1b < _INT64_SAFE and self.arr.dtype != object else object
        return DenseElement(self.arr.astype(dtype) * c, self.offset, l1b)

    def plus(self, other: "DenseElement") -> "DenseElement":
        lo = [min(a, b) for a, b in zip(self.offset, other.offset)]
        hi = [max(a + s, b + t) for a, s, b, t in zip(self.offset, self.arr.shape, other.offset, other.arr.shape)]
        l1b = self.l1_bound + other.l1_bound
        dtype = np.int64 if (l1b < _INT64_SAFE and self.arr.dtype != object
                             and other.arr.dtype != object) else object
        new = np.zeros([h - l for h, l in zip(hi, lo)], dtype=dtype)
        for e in (self, other):
            s = [o - l for o, l in zip(e.offset, lo)]
            K, L, M = e.arr.shape
            new[s[0]:s[0] + K, s[1]:s[1] + L, s[2]:s[2] + M] += e.arr.astype(dtype)
        return DenseElement(new, tuple(lo), l1b)


def trace_of_product(P: DenseElement, Q: DenseElement) -> int:
    """Constant term of P*Q, i.e. sum over g of P_g Q_(g^-1), exactly."""
    pk0, pl0, pm0 = P.offset
    qk0, ql0, qm0 = Q.offset
    PK, PL, PM = P.arr.shape
    QK, QL, QM = Q.arr.shape
    total = 0
    for i in range(PK):
        k = pk0 + i
        qi = -k - qk0
        if not 0 <= qi < QK:
            continue
        for j in range(PL):
            l = pl0 + j
            qj = -l - ql0
            if not 0 <= qj < QL:
                continue
            # inverse of (k, l, m) is (-k, -l, kl - m)
            lo = max(pm0, k * l - (qm0 + QM - 1))
            hi = min(pm0 + PM - 1, k * l - qm0)
            if lo > hi:
                continue
            a = P.arr[i, j, lo - pm0:hi - pm0 + 1]
            # Q index for m runs from kl - lo down to kl - hi
            b = Q.arr[qi, qj, k * l - hi - qm0:k * l - lo - qm0 + 1][::-1]
            total += int(np.dot(a.astype(object), b.astype(object)))
    return total


def dense_powers(h: GroupRingElement, n: int):
    """Yield h^0, h^1, ..., h^n as DenseElements."""
    P = DenseElement.from_sparse(ONE)
    yield P
    for _ in range(n):
        P = P.times(h)
        yield P


def power(f: GroupRingElement, n: int, dense=False) -> GroupRingElement:
    if n < 0:
        return f ** n
    if not dense:
        return f ** n
    P = DenseElement.from_sparse(ONE)
    for _ in range(n):
        P = P.times(f)
    return P.to_sparse()


def to_fraction_element(f: GroupRingElement, den=1):
    return GroupRingElement({k: Fraction(v, den) for k, v in f.terms.items()})
