from fractions import Fraction
import math

from hypothesis import assume, given, strategies as st
import numpy as np
from scipy import integrate, special

from heisdyn.laurent import LaurentPoly1, LaurentPolyN
from heisdyn.numeric import (QuadratureGrid, RootFindingError, Sqrt5Number, backward_errors, batch_mahler,
                             mahler1_exact, mahler_n, poly_roots, torus_quad)

from conftest import poly1

TAU = (1 + math.sqrt(5)) / 2
# m(1 + u1 + u2) = (3 sqrt 3 / 4 pi) L(chi_-3, 2)
SMYTH2 = 0.3230659472194505


def test_mahler1_golden():
    m = mahler1_exact(LaurentPoly1([-1, -1, 1]))
    assert abs(m.value - math.log(TAU)) < 1e-14
    assert m.method == "exact-roots"


def test_mahler1_constant_and_lehmer():
    assert mahler1_exact(LaurentPoly1([-7])).value == math.log(7)
    lehmer = LaurentPoly1([1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1])
    assert abs(mahler1_exact(lehmer).measure - 1.17628081825991750654) < 1e-12


@given(poly1(8))
def test_mahler1_nonnegative_and_multiplicative(p):
    assume(p.degree >= 0 and not p.is_zero())
    q = LaurentPoly1([2, -1, 3])
    a, b = mahler1_exact(p), mahler1_exact(q)
    assert a.value >= -1e-12
    assert abs(mahler1_exact(p * q).value - a.value - b.value) < 1e-8 + a.error_bound + b.error_bound


root = st.one_of(st.just(0j), st.builds(lambda r, t: r * complex(math.cos(t), math.sin(t)),
                                         st.floats(1e-3, 3), st.floats(0, 2 * math.pi)))


@given(st.lists(root, min_size=1, max_size=8))
def test_poly_roots_backward_stable(rs):
    c = np.poly(rs)[::-1]
    r = poly_roots(c)
    assert backward_errors(c, r).max() < 1e-10


def test_poly_roots_reports_failure():
    # roots at 1e-117 are out of reach of a normwise 1e-12 backward error
    c = np.poly([1.0, 1e-117, 1e-117])[::-1]
    try:
        poly_roots(c)
    except RootFindingError as e:
        assert e.residuals.max() > 1e-12


def test_mahler1_jensen_against_quadrature():
    p = [3, -2, 1, 5]
    f = lambda t: np.log(np.abs(np.polyval(p[::-1], np.exp(1j * t))))
    v, _ = integrate.quad(f, 0, 2 * np.pi, limit=200)
    assert abs(mahler1_exact(p).value - v / (2 * np.pi)) < 1e-8


def test_mahler_two_variables_smyth():
    f = LaurentPolyN({(0, 0): 1, (1, 0): 1, (0, 1): 1})
    m = mahler_n(f, 512)
    assert abs(m.value - SMYTH2) < 1e-4


def test_mahler_three_variables_against_closed_form():
    f = LaurentPolyN({(0, 0, 0): 1, (1, 0, 0): 1, (0, 1, 0): 1, (0, 0, 1): 1}, 3)
    m = mahler_n(f, 128)
    assert abs(m.value - 7 * special.zeta(3) / (2 * math.pi ** 2)) < 1e-3


def test_mahler_drops_unused_variables():
    f = LaurentPolyN({(0, 0): 1, (1, 0): 1})
    assert abs(mahler_n(f, 16).value) < 1e-12


def test_mahler_laplacian_z2():
    f = LaurentPolyN({(0, 0): 5, (1, 0): -1, (-1, 0): -1, (0, 1): -1, (0, -1): -1})
    assert abs(mahler_n(f, 64).value - 1.507982) < 1e-4


def test_torus_quad_deterministic_across_workers():
    fn = lambda u, v: np.log(np.abs(3 + u + v))
    a = torus_quad(fn, QuadratureGrid(64, 2, parallel_chunk=256))
    b = torus_quad(fn, QuadratureGrid(64, 2, parallel_chunk=256, workers=4))
    assert a.value == b.value


def test_batch_mahler_rows():
    C = np.array([[-1, -1, 1], [2, 0, 0], [1, 0, 1]], dtype=complex)
    vals, be = batch_mahler(C)
    assert abs(vals[0] - math.log(TAU)) < 1e-12
    assert abs(vals[1] - math.log(2)) < 1e-12
    assert abs(vals[2]) < 1e-12


@given(st.integers(-20, 20), st.integers(-20, 20), st.integers(1, 25))
def test_sqrt5_field(a, b, n):
    x = Sqrt5Number(a, b)
    if x:
        assert x * x.inv() == Sqrt5Number(1)
    assert abs(float(x ** n) - float(x) ** n) <= 1e-9 * max(1.0, abs(float(x)) ** n)


def test_lucas_numbers_exact():
    tau = Sqrt5Number(Fraction(1, 2), Fraction(1, 2))
    sigma = tau.conj()
    luc = [2, 1]
    for _ in range(30):
        luc.append(luc[-1] + luc[-2])
    for q in range(0, 30):
        s = tau ** q + sigma ** q
        assert s.is_rational() and s.a == luc[q]
