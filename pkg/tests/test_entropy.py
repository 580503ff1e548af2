import cmath
from fractions import Fraction
import math

from hypothesis import given, settings, strategies as st
import numpy as np
import pytest

from heisdyn import entropy as E
from heisdyn.laurent import LaurentPoly1, LaurentPolyN
from heisdyn.numeric import Sqrt5Number
from heisdyn.parse import parse
from heisdyn.ring import GroupRingElement

from conftest import poly1

LOG3 = math.log(3)
TAU = (1 + math.sqrt(5)) / 2
SIGMA = (1 - math.sqrt(5)) / 2


def test_trace_series_laplacian():
    e = E.entropy_trace_series(parse("5-x-x^-1-y-y^-1"), n_terms=60)
    assert abs(e.value - 1.514708) < 1e-5
    assert e.diagnostics["tail_bound"] < 1e-7
    assert e.diagnostics["odd_traces_vanish"]
    assert e.diagnostics["traces"]["8"] == "2156"


def test_trace_series_tolerance_controls_terms():
    e = E.entropy_trace_series(parse("5-x-x^-1-y-y^-1"), tol=1e-4)
    assert e.error_bound <= 1e-4 + 1e-12
    assert e.diagnostics["terms"] < 40


def test_trace_series_exact_cases():
    assert abs(E.entropy_trace_series(parse("3+x")).value - LOG3) < 1e-15
    assert abs(E.entropy_trace_series(parse("-3*x*y+x+1")).value - LOG3) < 1e-6
    assert E.entropy_trace_series(parse("2")).value == math.log(2)


def test_trace_series_requires_lopsided():
    with pytest.raises(ValueError):
        E.entropy_trace_series(parse("2+x+y"))


def test_comparison_values():
    assert abs(E.free_group_closed_form().value - 1.514787) < 1e-6
    assert abs(E.free_group_series_value(300) - E.free_group_closed_form().value) < 1e-8
    z2 = E.z2_comparison_value(64).value
    assert abs(z2 - 1.507982) < 1e-4
    heis = E.entropy_trace_series(parse("5-x-x^-1-y-y^-1"), tol=1e-7).value
    assert E.free_group_closed_form().value > heis > z2


def test_three_engines_agree_on_3_plus_x_plus_y():
    f = parse("3+x+y")
    tr = E.entropy_trace_series(f, tol=1e-8).value
    lin = E.entropy_linear_element(f).value
    per = E.entropy_periodic(f, (7, 11, 13), 32).value
    assert abs(tr - LOG3) < 1e-7
    assert abs(lin - LOG3) < 1e-6
    assert abs(per - LOG3) < 1e-3


def test_linear_formula_nontrivial():
    # (y^2 + y + 1) - 2 x y: max(m(g), m(h)) integrates to log 2
    f = parse("y^2+y+1-2*x*y")
    assert abs(E.entropy_linear_element(f).value - math.log(2)) < 1e-6
    assert abs(E.entropy_periodic(f, (7, 11, 13), 32).value - math.log(2)) < 1e-3


def test_linear_parts_swap():
    g, h = E.linear_parts(parse("3+y+x*z"))
    assert g == LaurentPolyN({(0, 0): 3, (1, 0): 1}) and h == LaurentPolyN({(0, 1): 1})
    g2, h2 = E.linear_parts(parse("3+x+y*z"))
    assert not g2.is_zero() and not h2.is_zero()


def test_periodic_terms_increase_towards_limit():
    f = parse("3+x+y")
    vals = [E.periodic_term(f, q, 32)[0] for q in (5, 7, 11)]
    assert vals[0] < vals[1] < vals[2] < LOG3


def test_build_a_matrix_shape_and_broadcast():
    f = parse("x^2+y+z+3")
    xi = np.exp(2j * np.pi * np.array([0.1, 0.2]))
    A = E.build_a_matrix(f, cmath.exp(2j * math.pi / 5), 5, xi, 1.0).entries
    assert A.shape == (2, 5, 5)


@settings(max_examples=60)
@given(st.integers(3, 8), st.integers(0, 2 ** 32 - 1))
def test_tri_circulant_det_matches_dense(q, seed):
    rng = np.random.default_rng(seed)
    a, b, c = (rng.normal(size=q) + 1j * rng.normal(size=q) for _ in range(3))
    d1 = E.tri_circulant_det(a, b, c)
    d2 = np.linalg.det(E.tri_circulant_dense(a, b, c))
    assert abs(d1 - d2) <= 1e-9 * max(1.0, abs(d2))


@settings(max_examples=40)
@given(st.integers(3, 8), st.integers(0, 2 ** 32 - 1))
def test_quadratic_det_matches_matrix(q, seed):
    rng = np.random.default_rng(seed)
    def rand_poly():
        return LaurentPolyN({(int(rng.integers(-1, 2)), int(rng.integers(-1, 2))): int(rng.integers(1, 4))
                             for _ in range(3)}, 2)
    g0, g1, g2 = rand_poly(), rand_poly(), rand_poly()
    f = sum((GroupRingElement({(j, l, m): c for (l, m), c in g.terms.items()}) for j, g in enumerate((g0, g1, g2))),
            GroupRingElement())
    p = int(rng.integers(1, q))
    zeta = cmath.exp(2j * math.pi * p / q)
    xi, eta = cmath.exp(2j * math.pi * rng.random()), cmath.exp(2j * math.pi * rng.random())
    d1 = E.quadratic_det_formula(g0, g1, g2, zeta, xi, eta, q)
    d2 = np.linalg.det(E.build_a_matrix(f, zeta, q, xi, eta).entries)
    assert abs(d1 - d2) <= 1e-9 * max(1.0, abs(d2))


@pytest.mark.parametrize("q", range(3, 21))
def test_simple_det_coefficient_is_lucas(q):
    tau = Sqrt5Number(Fraction(1, 2), Fraction(1, 2))
    s = tau ** q + tau.conj() ** q
    assert s.is_rational() and s.a == E.golden_mean_count(q)


def test_simple_tri_circulant_det_under_condition():
    rng = np.random.default_rng(1)
    for q in range(3, 9):
        b = rng.normal(size=q) + 1j * rng.normal(size=q)
        a = rng.normal(size=q) + 1j * rng.normal(size=q)
        # choose c with c_j a_(j+1) = -b_j b_(j+1)
        c = np.array([-b[j] * b[(j + 1) % q] / a[(j + 1) % q] for j in range(q)])
        d = np.linalg.det(E.tri_circulant_dense(a, b, c))
        assert abs(E.simple_tri_circulant_det(a, b, c) - d) <= 1e-9 * max(1, abs(d))


def test_simple_det_condition():
    g0 = LaurentPolyN({(0, 0): -1})
    g1 = LaurentPolyN({(0, 0): 1})
    g2 = LaurentPolyN({(0, 0): 1})
    assert E.simple_det_condition(g0, g1, g2)
    assert not E.simple_det_condition(g0, g1, LaurentPolyN({(0, 0): 2}))


def test_golden_mean_counts():
    counts = E.golden_mean_periodic_counts(20)
    assert [counts[n] for n in range(1, 11)] == [1, 1, 4, 5, 11, 16, 29, 45, 76, 121]
    for n in range(2, 21):
        v = abs(TAU ** n - 1) * abs(SIGMA ** n - 1)
        assert abs(counts[n] - v) <= 1e-6 * v


def test_exact_det_against_numpy():
    rng = np.random.default_rng(3)
    for n in range(1, 8):
        M = rng.integers(-5, 6, size=(n, n)).tolist()
        assert abs(E.exact_det(M) - np.linalg.det(np.array(M, float))) < 1e-6 * max(1, abs(E.exact_det(M)))


@settings(max_examples=200)
@given(poly1(6), st.integers(1, 40), st.floats(0, 1))
def test_riemann_sum_inequality(p, n, s):
    if p.degree < 1:
        return
    r = E.riemann_sum_check(list(p.coeffs), n, cmath.exp(2j * math.pi * s))
    assert r["riemann_sum"] <= r["bound"] + 1e-9


SUITE = ["3+x+y", "5-x-x^-1-y-y^-1", "3+x+y+z", "y^2+y+1-2*x*y", "-3*x*y+x+1", "4+x*y+z*y^-1"]


@pytest.mark.parametrize("text", SUITE)
def test_face_bound_below_entropy(text):
    f = parse(text)
    _, bound = E.face_entropy_lower_bound(f)
    try:
        h = E.entropy_trace_series(f, tol=1e-8).value
    except ValueError:
        h = E.entropy_linear_element(f).value
    assert bound <= h + 1e-6


def test_face_polynomial_of_edge():
    # edge (1, 0) -> (0, 1) of 3 + x + y gives 1 + w up to a twist
    F = E.face_polynomial(parse("3+x+y"), (1, 0), (0, 1))
    assert len(F.terms) == 2


def test_zero_entropy_heuristic():
    pos, _ = E.zero_entropy_heuristic(LaurentPolyN({(0, 0): 1, (1, 0): 1, (0, 1): 1}))
    assert pos == "positive"
    f = LaurentPolyN({(0, 0): 1, (1, 0): -1}) * LaurentPolyN({(0, 0): 1, (1, 1): 1})
    label, info = E.zero_entropy_heuristic(f)
    assert label == "zero-candidate" and len(info["factors"]) == 2


def test_quadratic_experiment_is_labelled():
    r = E.quadratic_experiment(LaurentPolyN({(0, 0): 3, (1, 0): 1}), qs=(7, 11), n=16, nz=256)
    assert r["label"] == "conjectural"
    assert math.isfinite(r["conjectural_rhs"]) and math.isfinite(r["periodic"])
