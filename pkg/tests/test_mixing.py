from hypothesis import given, strategies as st

from heisdyn.laurent import LaurentPoly1, cyclotomic
from heisdyn.mixing import hayes_check, mixing_central
from heisdyn.parse import parse

from conftest import poly1


def test_central_examples():
    assert mixing_central(LaurentPoly1([-1, -1, 1])).status == "mixing"
    v = mixing_central(LaurentPoly1([1, 0, 1]))
    assert v.status == "not-mixing" and v.witness == 4


@given(poly1(4), st.integers(1, 15))
def test_central_cyclotomic_products_not_mixing(p, d):
    v = mixing_central(p * cyclotomic(d))
    assert v.status == "not-mixing" and v.witness <= d


def test_hayes_conditions():
    assert hayes_check(parse("x+z-2")).condition == "1"
    assert hayes_check(parse("y+z-2")).condition == "2"
    v = hayes_check(parse("1+x+y"))
    assert v.status == "mixing" and v.condition == "3"
    assert hayes_check(parse("(z^2+3)*x+y+1")).status == "mixing"


def test_hayes_undetermined():
    # abelianization xy - 1 is generalized cyclotomic
    v = hayes_check(parse("x*y-1"))
    assert v.status == "undetermined"
    assert v.diagnostics["abelianized_divisor"] is not None
    # cyclotomic content
    assert hayes_check(parse("(z+1)*x+(z+1)*y")).status == "undetermined"
