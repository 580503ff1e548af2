"""Exact Laurent polynomials over Z in one and several commuting variables.

Also holds cyclotomic polynomials, generalized cyclotomic divisor search and
an exact Sturm-sequence test for zeros on the unit circle.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd
import cmath

import numpy as np


def _strip(coeffs):
    lo, hi = 0, len(coeffs)
    while lo < hi and coeffs[lo] == 0:
        lo += 1
    while hi > lo and coeffs[hi - 1] == 0:
        hi -= 1
    return lo, list(coeffs[lo:hi])


class LaurentPoly1:
    """Integer Laurent polynomial sum_i coeffs[i] u^(low + i)."""

    __slots__ = ("low", "coeffs")

    def __init__(self, coeffs=(), low=0):
        shift, cs = _strip(list(coeffs))
        self.low = low + shift if cs else 0
        self.coeffs = tuple(cs)

    @classmethod
    def from_dict(cls, d):
        d = {e: c for e, c in d.items() if c != 0}
        if not d:
            return cls()
        lo, hi = min(d), max(d)
        return cls([d.get(e, 0) for e in range(lo, hi + 1)], lo)

    @classmethod
    def monomial(cls, c=1, e=0):
        return cls([c], e)

    def is_zero(self):
        return not self.coeffs

    @property
    def high(self):
        return self.low + len(self.coeffs) - 1

    @property
    def degree(self):
        """Length of the Newton segment (high - low); -1 for zero."""
        return len(self.coeffs) - 1

    def items(self):
        for i, c in enumerate(self.coeffs):
            if c:
                yield self.low + i, c

    def to_dict(self):
        return dict(self.items())

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPoly1([other])
        return isinstance(other, LaurentPoly1) and self.low == other.low and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.low, self.coeffs))

    def __add__(self, other):
        if isinstance(other, int):
            other = LaurentPoly1([other])
        d = self.to_dict()
        for e, c in other.items():
            d[e] = d.get(e, 0) + c
        return LaurentPoly1.from_dict(d)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly1([-c for c in self.coeffs], self.low)

    def __sub__(self, other):
        if isinstance(other, int):
            other = LaurentPoly1([other])
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return LaurentPoly1([c * other for c in self.coeffs], self.low)
        if self.is_zero() or other.is_zero():
            return LaurentPoly1()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return LaurentPoly1(out, self.low + other.low)

    __rmul__ = __mul__

    def __pow__(self, n):
        out = LaurentPoly1([1])
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def reciprocal(self):
        """p(1/u)."""
        return LaurentPoly1(self.coeffs[::-1], -self.high) if self.coeffs else LaurentPoly1()

    def substitute_power(self, n):
        """p(u^n) for n != 0."""
        return LaurentPoly1.from_dict({e * n: c for e, c in self.items()})

    def shift(self, k):
        return LaurentPoly1(self.coeffs, self.low + k)

    def __call__(self, u):
        if not self.coeffs:
            return 0 * u
        return np.polyval(list(self.coeffs[::-1]), u) * u ** self.low

    def content(self):
        g = 0
        for c in self.coeffs:
            g = gcd(g, c)
        return g

    def primitive(self):
        """Primitive part with u-power stripped and positive leading coefficient."""
        if not self.coeffs:
            return LaurentPoly1()
        g = self.content()
        if self.coeffs[-1] < 0:
            g = -g
        return LaurentPoly1([c // g for c in self.coeffs], 0)

    def __repr__(self):
        return f"LaurentPoly1({list(self.coeffs)}, low={self.low})"

    def __str__(self):
        return format_poly1(self, "z")


def format_poly1(p, var="u"):
    if p.is_zero():
        return "0"
    out = ""
    for e, c in p.items():
        if e == 0:
            mono = ""
        elif e == 1:
            mono = var
        else:
            mono = f"{var}^{e}"
        if not mono:
            term = str(abs(c))
        elif abs(c) == 1:
            term = mono
        else:
            term = f"{abs(c)}*{mono}"
        if not out:
            out = ("-" if c < 0 else "") + term
        else:
            out += ("-" if c < 0 else "+") + term
    return out


# ---------------------------------------------------------------- rational polys
# Dense lists of Fractions, lowest degree first.

def rp_trim(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def rp_divmod(a, b):
    a = [Fraction(c) for c in rp_trim(a)]
    b = rp_trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    if len(a) < len(b):
        return [], a
    q = [Fraction(0)] * (len(a) - len(b) + 1)
    lead = Fraction(b[-1])
    for i in range(len(a) - len(b), -1, -1):
        c = a[i + len(b) - 1] / lead
        q[i] = c
        if c:
            for j, bj in enumerate(b):
                a[i + j] -= c * bj
    return rp_trim(q), rp_trim(a[: len(b) - 1])


def rp_primitive(p):
    """Scale a rational polynomial by a positive rational to a primitive integer one."""
    p = rp_trim(p)
    if not p:
        return []
    den = 1
    for c in p:
        den = den * Fraction(c).denominator // gcd(den, Fraction(c).denominator)
    ints = [int(Fraction(c) * den) for c in p]
    g = 0
    for c in ints:
        g = gcd(g, c)
    return [Fraction(c // g) for c in ints]


def rp_gcd(a, b):
    a, b = rp_primitive(a), rp_primitive(b)
    while b:
        _, r = rp_divmod(a, b)
        a, b = b, rp_primitive(r)
    if a and a[-1] < 0:
        a = [-c for c in a]
    return a


def rp_eval_sign(p, x):
    v = Fraction(0)
    for c in reversed(p):
        v = v * x + c
    return (v > 0) - (v < 0)


def rp_derivative(p):
    return [i * c for i, c in enumerate(p)][1:]


def sturm_chain(p):
    chain = [rp_primitive(p)]
    d = rp_derivative(chain[0])
    if d:
        chain.append(rp_primitive(d))
    while len(chain[-1]) > 1:
        _, r = rp_divmod(chain[-2], chain[-1])
        if not r:
            break
        # negated remainder, scaled by a positive constant only
        r = rp_primitive(r)
        chain.append([-c for c in r])
    return chain


def _sign_changes(chain, x):
    signs = [s for s in (rp_eval_sign(p, x) for p in chain) if s != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def sturm_count(p, a, b):
    """Number of distinct real roots of p in (a, b]."""
    p = rp_trim(p)
    if len(p) <= 1:
        return 0
    chain = sturm_chain(p)
    return _sign_changes(chain, Fraction(a)) - _sign_changes(chain, Fraction(b))


# ---------------------------------------------------------------- integer ops

def poly_divmod(a: LaurentPoly1, b: LaurentPoly1):
    """Exact division in Q[u] after aligning low exponents; returns (q, r) as rational lists."""
    return rp_divmod(list(a.coeffs), list(b.coeffs))


def divides(b: LaurentPoly1, a: LaurentPoly1):
    """True if b divides a in Q[u^+-] (units u^k ignored)."""
    if b.is_zero():
        return a.is_zero()
    if a.is_zero():
        return True
    _, r = poly_divmod(a, b)
    return not r


def exact_quotient(a: LaurentPoly1, b: LaurentPoly1) -> LaurentPoly1:
    q, r = poly_divmod(a, b)
    if r or any(c.denominator != 1 for c in q):
        raise ValueError("division is not exact over Z")
    return LaurentPoly1([int(c) for c in q], a.low - b.low)


def poly_gcd(a: LaurentPoly1, b: LaurentPoly1) -> LaurentPoly1:
    """gcd in Z[u^+-], normalized primitive with nonzero constant term and positive leading coefficient."""
    if a.is_zero():
        return b.primitive()
    if b.is_zero():
        return a.primitive()
    g = rp_gcd(list(a.coeffs), list(b.coeffs))
    return LaurentPoly1([int(c) for c in g]).primitive()


def euler_phi(n):
    out, m, p = n, n, 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            out -= out // p
        p += 1
    if m > 1:
        out -= out // m
    return out


@lru_cache(maxsize=None)
def cyclotomic(n: int) -> LaurentPoly1:
    """n-th cyclotomic polynomial, by dividing u^n - 1 by the lower-order ones."""
    if n < 1:
        raise ValueError("n must be positive")
    p = LaurentPoly1([-1] + [0] * (n - 1) + [1])
    for d in range(1, n):
        if n % d == 0:
            p = exact_quotient(p, cyclotomic(d))
    return p


def has_root_of_unity_root(g: LaurentPoly1):
    """Return (True, d) for the least d with cyclotomic(d) | g, else (False, None).

    Complete: phi(d) <= deg g forces d <= 2 deg(g)^2.
    """
    if g.is_zero():
        raise ValueError("zero polynomial")
    D = g.degree
    for d in range(1, 2 * D * D + 1):
        if euler_phi(d) <= D and divides(cyclotomic(d), g):
            return True, d
    return False, None


# ---------------------------------------------------------------- several variables

class LaurentPolyN:
    """Sparse integer Laurent polynomial in nvars commuting variables."""

    __slots__ = ("nvars", "terms")

    def __init__(self, terms=None, nvars=2):
        self.nvars = nvars
        self.terms = {}
        for e, c in (terms or {}).items():
            e = tuple(e)
            if len(e) != nvars:
                raise ValueError("exponent length mismatch")
            if c:
                self.terms[e] = self.terms.get(e, 0) + c
        self.terms = {e: c for e, c in self.terms.items() if c != 0}

    @classmethod
    def const(cls, c, nvars=2):
        return cls({(0,) * nvars: c}, nvars)

    @classmethod
    def var(cls, i, nvars=2, power=1):
        e = [0] * nvars
        e[i] = power
        return cls({tuple(e): 1}, nvars)

    def is_zero(self):
        return not self.terms

    def _coerce(self, other):
        if isinstance(other, int):
            return LaurentPolyN.const(other, self.nvars)
        if other.nvars != self.nvars:
            raise ValueError("variable count mismatch")
        return other

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPolyN.const(other, self.nvars)
        return isinstance(other, LaurentPolyN) and self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def __add__(self, other):
        other = self._coerce(other)
        d = dict(self.terms)
        for e, c in other.terms.items():
            d[e] = d.get(e, 0) + c
        return LaurentPolyN(d, self.nvars)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPolyN({e: -c for e, c in self.terms.items()}, self.nvars)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        d = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                d[e] = d.get(e, 0) + c1 * c2
        return LaurentPolyN(d, self.nvars)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            if len(self.terms) == 1:
                (e, c), = self.terms.items()
                if abs(c) == 1:
                    return LaurentPolyN({tuple(-a * -n for a in e): c ** -n}, self.nvars)
            raise ValueError("negative power of a non-unit")
        out = LaurentPolyN.const(1, self.nvars)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __call__(self, *vals):
        """Evaluate at complex points; broadcasting numpy arrays is supported."""
        out = 0
        for e, c in self.terms.items():
            t = c
            for v, a in zip(vals, e):
                if a:
                    t = t * v ** a
            out = out + t
        return out

    def exponent_range(self, i):
        es = [e[i] for e in self.terms]
        return (min(es), max(es)) if es else (0, -1)

    def coefficient_in(self, i):
        """Split by the power of variable i: {power: LaurentPolyN in the remaining variables}."""
        out = {}
        for e, c in self.terms.items():
            rest = e[:i] + e[i + 1:]
            out.setdefault(e[i], {})[rest] = c
        return {p: LaurentPolyN(d, self.nvars - 1) for p, d in out.items()}

    def slice(self, zeta, var=0):
        """Univariate complex polynomial in variable `var`, others set to zeta (tuple or scalar).

        Returns (low exponent, coefficient array lowest first).
        """
        if self.is_zero():
            return 0, np.zeros(0, dtype=complex)
        if self.nvars == 1:
            others = ()
        elif np.isscalar(zeta):
            others = (zeta,)
        else:
            others = tuple(zeta)
        lo, hi = self.exponent_range(var)
        c = np.zeros(hi - lo + 1, dtype=complex)
        for e, v in self.terms.items():
            rest = e[:var] + e[var + 1:]
            t = complex(v)
            for w, a in zip(others, rest):
                t *= w ** a
            c[e[var] - lo] += t
        return lo, c

    def unimodular_substitute(self, M):
        """Monomial change of variables: exponent vector e maps to e @ M (integer matrix, det +-1)."""
        M = [list(r) for r in M]
        d = {}
        for e, c in self.terms.items():
            ne = tuple(sum(e[i] * M[i][j] for i in range(self.nvars)) for j in range(self.nvars))
            d[ne] = d.get(ne, 0) + c
        return LaurentPolyN(d, self.nvars)

    def newton_box(self):
        return [self.exponent_range(i) for i in range(self.nvars)]

    def __repr__(self):
        return f"LaurentPolyN({self.terms!r}, nvars={self.nvars})"

    def __str__(self):
        names = ["u1", "u2", "u3"][: self.nvars] if self.nvars > 1 else ["u"]
        return format_polyN(self, names)


def LaurentPoly2(terms=None):
    return LaurentPolyN(terms, 2)


def format_polyN(p, names):
    if p.is_zero():
        return "0"
    out = ""
    for e in sorted(p.terms):
        c = p.terms[e]
        factors = [n if a == 1 else f"{n}^{a}" for n, a in zip(names, e) if a != 0]
        mono = "*".join(factors)
        if not mono:
            term = str(abs(c))
        elif abs(c) == 1:
            term = mono
        else:
            term = f"{abs(c)}*{mono}"
        if not out:
            out = ("-" if c < 0 else "") + term
        else:
            out += ("-" if c < 0 else "+") + term
    return out


def univariate(p: LaurentPolyN, i=0) -> LaurentPoly1:
    """View a polynomial that only involves variable i as a LaurentPoly1."""
    d = {}
    for e, c in p.terms.items():
        if any(a for j, a in enumerate(e) if j != i):
            raise ValueError("polynomial involves other variables")
        d[e[i]] = c
    return LaurentPoly1.from_dict(d)


def slice_poly(p: LaurentPolyN, zeta, var=0):
    return p.slice(zeta, var)


# ---------------------------------------------------------------- generalized cyclotomics

def _ext_gcd(a, b):
    if b == 0:
        return (a, 1, 0) if a >= 0 else (-a, -1, 0)
    g, s, t = _ext_gcd(b, a % b)
    return g, t, s - (a // b) * t


def unimodular_completion(a, b):
    """Integer matrix [[a, b], [c, d]] with determinant 1, for coprime (a, b)."""
    g, s, t = _ext_gcd(a, b)
    if g != 1:
        raise ValueError("direction must be primitive")
    return [[a, b], [-t, s]]


def divisible_by_generalized_cyclotomic(f: LaurentPolyN, k: int, n1: int, n2: int) -> bool:
    """Does cyclotomic(k)(u1^n1 u2^n2) divide f in Z[u1^+-, u2^+-]?"""
    g = gcd(abs(n1), abs(n2))
    if g == 0:
        raise ValueError("exponents not both zero")
    a, b = n1 // g, n2 // g
    M = unimodular_completion(a, b)
    # monomial u^e equals v1^p v2^r with (p, r) = e @ M^{-1}
    Minv = [[M[1][1], -M[0][1]], [-M[1][0], M[0][0]]]
    F = f.unimodular_substitute(Minv)
    phi = cyclotomic(k).substitute_power(g)
    for _, coeff in F.coefficient_in(1).items():
        if not divides(phi, univariate(coeff, 0)):
            return False
    return True


def _directions(nmax):
    out = []
    for r in range(1, nmax + 1):
        for n1 in range(0, r + 1):
            for n2 in range(-r, r + 1):
                if max(abs(n1), abs(n2)) != r:
                    continue
                if n1 == 0 and n2 <= 0:
                    continue
                out.append((n1, n2))
    return out


def generalized_cyclotomic_divisor_search(f: LaurentPolyN, k_max=24, n_max=6):
    """First (k, n1, n2) with cyclotomic(k)(u1^n1 u2^n2) | f, or None within the bounds.

    None means none was found within the bounds, not that none exists.
    Directions are taken up to sign, which only changes the divisor by a unit.
    """
    if f.is_zero():
        raise ValueError("zero polynomial")
    for k in range(1, k_max + 1):
        for n1, n2 in _directions(n_max):
            if divisible_by_generalized_cyclotomic(f, k, n1, n2):
                return k, n1, n2
    return None


def divide_generalized_cyclotomic(f: LaurentPolyN, k, n1, n2) -> LaurentPolyN:
    g = gcd(abs(n1), abs(n2))
    a, b = n1 // g, n2 // g
    M = unimodular_completion(a, b)
    Minv = [[M[1][1], -M[0][1]], [-M[1][0], M[0][0]]]
    F = f.unimodular_substitute(Minv)
    phi = cyclotomic(k).substitute_power(g)
    d = {}
    for r, coeff in F.coefficient_in(1).items():
        q = exact_quotient(univariate(coeff, 0), phi)
        for p, c in q.items():
            d[(p, r)] = c
    return LaurentPolyN(d, 2).unimodular_substitute(M)


# ---------------------------------------------------------------- Sturm test over Z

def _self_reciprocal_to_trace(g):
    """h with g(u) = u^(e/2) h(u + 1/u), for palindromic g of even degree e."""
    e = len(g) - 1
    half = e // 2
    # g(u)/u^half = a_0 + sum_{j>=1} a_j (u^j + u^-j)
    a = [Fraction(g[half])] + [Fraction(g[half + j]) for j in range(1, half + 1)]
    # D_j(w) = u^j + u^-j as a polynomial in w = u + 1/u
    D = [[Fraction(2)], [Fraction(0), Fraction(1)]]
    for j in range(2, half + 1):
        wD = [Fraction(0)] + D[j - 1]
        prev = D[j - 2] + [Fraction(0)] * (len(wD) - len(D[j - 2]))
        D.append([x - y for x, y in zip(wD, prev)])
    h = [Fraction(0)] * (half + 1)
    h[0] += a[0]
    for j in range(1, half + 1):
        for i, c in enumerate(D[j]):
            h[i] += a[j] * c
    return rp_trim(h)


def sturm_expansive_z(f: LaurentPoly1) -> bool:
    """True iff f has no zero on the unit circle, decided in exact rational arithmetic."""
    if f.is_zero():
        raise ValueError("zero polynomial")
    p = list(f.coeffs)
    if len(p) == 1:
        return True
    g = rp_gcd(p, p[::-1])
    if len(g) == 1:
        return True
    # roots of g are closed under inversion; +-1 are the only self-paired ones
    if rp_eval_sign(g, 1) == 0 or rp_eval_sign(g, -1) == 0:
        return False
    e = len(g) - 1
    if e % 2:
        return False
    h = _self_reciprocal_to_trace(g)
    # w = 2 cos(theta) in (-2, 2) <=> unimodular root
    return sturm_count(h, -2, 2) == 0


def unit_circle_margin(f: LaurentPoly1) -> float:
    """Floating distance of the closest root to the unit circle (inf if no roots)."""
    c = list(f.coeffs)
    if len(c) <= 1:
        return float("inf")
    r = np.roots(c[::-1])
    return float(np.min(np.abs(np.abs(r) - 1.0)))


def is_unit_complex(z, tol=1e-12):
    return abs(abs(z) - 1.0) <= tol


def root_of_unity(p, q):
    return cmath.exp(2j * cmath.pi * p / q)
