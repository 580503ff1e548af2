import random

from hypothesis import given
import pytest

from heisdyn.parse import ParseError, element_to_xz, format_poly, parse, parse_poly, tokenize
from heisdyn.ring import X, Y, Z, GroupRingElement

from conftest import elements


def test_examples():
    assert parse("y*x") == X * Y * Z
    assert parse("3+x+y+z") == 3 + X + Y + Z
    assert parse("y^2-x*y-1") == Y * Y - X * Y - 1
    assert parse("x^-1") == X ** -1
    assert parse("-x^2") == -(X * X)
    assert parse("2*(x+y)^3") == 2 * (X + Y) ** 3
    assert parse("(-x)^-1") == -(X ** -1)


def test_left_to_right():
    assert parse("y*x*y^-1*x^-1") == Z


def test_commutative_mode():
    p = parse("1+u1+u2+u3", "comm")
    assert p.nvars == 3 and len(p.terms) == 4
    assert parse("u1^-1-2", "comm").nvars == 1
    assert parse_poly("u1", nvars=3).nvars == 3


@pytest.mark.parametrize("text,pos", [("(x+", 3), ("x^y", 2), ("w", 0), ("x $ y", 2), ("", 0),
                                      ("2*(x+1)^-1", 7), ("x y", 2), ("x^-1^2", 4)])
def test_error_positions(text, pos):
    with pytest.raises(ParseError) as e:
        parse(text)
    assert e.value.pos == pos


def test_whitespace():
    assert parse("  3 + x *  y ") == 3 + X * Y
    assert [t.kind for t in tokenize("x^-12")] == ["var", "op", "op", "int", "end"]


@given(elements(6))
def test_print_parse_roundtrip(f):
    assert parse(str(f)) == f
    assert str(parse(str(f))) == str(f)


def _random_expr(rng, depth=0):
    r = rng.random()
    if depth > 3 or r < 0.3:
        return rng.choice(["x", "y", "z", str(rng.randint(0, 9)), "x^-1", "y^-2", "z^3"])
    op = rng.choice(["+", "-", "*", "^", "neg", "()"])
    if op == "^":
        return f"({_random_expr(rng, depth + 1)})^{rng.randint(0, 3)}"
    if op == "neg":
        return "-" + _random_expr(rng, depth + 1)
    if op == "()":
        return f"({_random_expr(rng, depth + 1)})"
    return _random_expr(rng, depth + 1) + op + _random_expr(rng, depth + 1)


def test_roundtrip_1000_random_expressions():
    rng = random.Random(2024)
    for _ in range(1000):
        text = _random_expr(rng)
        f = parse(text)
        g = parse(str(f))
        assert g == f and str(g) == str(f)


def test_comm_roundtrip():
    rng = random.Random(5)
    for _ in range(200):
        text = _random_expr(rng).replace("x", "u1").replace("y", "u2").replace("z", "u3")
        p = parse(text, "comm")
        assert parse(format_poly(p), "comm") == p


def test_element_views():
    assert element_to_xz(parse("x*z-2")).terms == {(1, 1): 1, (0, 0): -2}
    with pytest.raises(ValueError):
        element_to_xz(parse("y"))
