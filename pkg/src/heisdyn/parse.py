"""Expression parser for group-ring elements (x, y, z) and commutative polynomials (u1, u2, u3).

Grammar, one pass, no backtracking:

    expr  := term (('+' | '-') term)*
    term  := unary ('*' unary)*
    unary := '-' unary | power
    power := atom ('^' '-'? INT)?
    atom  := INT | VAR | '(' expr ')'

Unary minus binds looser than '^', so -x^2 is -(x^2). Products are evaluated
left to right with the group multiplication, so "y*x" parses to x*y*z.
Negative exponents are only allowed on +-monomials.
"""

from __future__ import annotations

from dataclasses import dataclass
import re

from .laurent import LaurentPoly1, LaurentPolyN, format_polyN
from .ring import GroupRingElement

HEIS_VARS = ("x", "y", "z")
COMM_VARS = ("u1", "u2", "u3")

_TOKEN = re.compile(r"(\d+)|(u[1-9]|[a-zA-Z_]\w*)|(\S)")


class ParseError(ValueError):
    def __init__(self, msg, text, pos):
        self.text = text
        self.pos = pos
        super().__init__(f"{msg} at position {pos}\n  {text}\n  {' ' * pos}^")


@dataclass(frozen=True)
class Token:
    kind: str  # int | var | op | end
    value: str
    pos: int


def tokenize(text: str):
    out = []
    i = 0
    n = len(text)
    while True:
        while i < n and text[i].isspace():
            i += 1
        if i == n:
            break
        m = _TOKEN.match(text, i)
        start = i
        if m.group(1):
            out.append(Token("int", m.group(1), start))
        elif m.group(2):
            out.append(Token("var", m.group(2), start))
        elif m.group(3):
            if m.group(3) not in "+-*^()":
                raise ParseError(f"unexpected character {m.group(3)!r}", text, start)
            out.append(Token("op", m.group(3), start))
        i = m.end()
    out.append(Token("end", "", len(text)))
    return out


class _Parser:
    def __init__(self, text, mode):
        self.text = text
        self.mode = mode
        self.toks = tokenize(text)
        self.i = 0
        self.names = HEIS_VARS if mode == "heis" else COMM_VARS
        self.nvars = 3

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, value):
        t = self.take()
        if t.value != value:
            raise ParseError(f"expected {value!r}", self.text, t.pos)
        return t

    def const(self, c):
        if self.mode == "heis":
            return GroupRingElement.const(c)
        return LaurentPolyN.const(c, self.nvars)

    def var(self, name, pos):
        if name not in self.names:
            raise ParseError(f"unknown variable {name!r} (expected one of {', '.join(self.names)})",
                             self.text, pos)
        i = self.names.index(name)
        if self.mode == "heis":
            e = [0, 0, 0]
            e[i] = 1
            return GroupRingElement.monomial(*e)
        return LaurentPolyN.var(i, self.nvars)

    def parse(self):
        if self.peek().kind == "end":
            raise ParseError("empty expression", self.text, 0)
        v = self.expr()
        t = self.peek()
        if t.kind != "end":
            raise ParseError(f"unexpected {t.value!r}", self.text, t.pos)
        return v

    def expr(self):
        v = self.term()
        while self.peek().value in ("+", "-") and self.peek().kind == "op":
            op = self.take().value
            w = self.term()
            v = v + w if op == "+" else v - w
        return v

    def term(self):
        v = self.unary()
        while self.peek().kind == "op" and self.peek().value == "*":
            self.take()
            v = v * self.unary()
        return v

    def unary(self):
        t = self.peek()
        if t.kind == "op" and t.value == "-":
            self.take()
            return -self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        t = self.peek()
        if not (t.kind == "op" and t.value == "^"):
            return base
        self.take()
        neg = False
        if self.peek().kind == "op" and self.peek().value == "-":
            self.take()
            neg = True
        e = self.take()
        if e.kind != "int":
            raise ParseError("expected integer exponent", self.text, e.pos)
        n = -int(e.value) if neg else int(e.value)
        try:
            return base ** n
        except ValueError:
            raise ParseError("negative exponent of a non-monomial", self.text, t.pos) from None

    def atom(self):
        t = self.take()
        if t.kind == "int":
            return self.const(int(t.value))
        if t.kind == "var":
            return self.var(t.value, t.pos)
        if t.kind == "op" and t.value == "(":
            v = self.expr()
            self.expect(")")
            return v
        what = "end of input" if t.kind == "end" else repr(t.value)
        raise ParseError(f"unexpected {what}", self.text, t.pos)


def parse(text: str, mode: str = "heis"):
    """Parse text into a GroupRingElement (mode 'heis') or a LaurentPolyN (mode 'comm').

    In 'comm' mode the polynomial has as many variables as the highest u_i used (at least 1).
    """
    if mode not in ("heis", "comm"):
        raise ValueError("mode must be 'heis' or 'comm'")
    v = _Parser(text, mode).parse()
    if mode == "comm":
        used = max((i + 1 for e in v.terms for i, a in enumerate(e) if a), default=1)
        v = LaurentPolyN({e[:used]: c for e, c in v.terms.items()}, used)
    return v


def parse_element(text: str) -> GroupRingElement:
    return parse(text, "heis")


def parse_poly(text: str, nvars: int | None = None) -> LaurentPolyN:
    p = parse(text, "comm")
    if nvars is not None and nvars != p.nvars:
        if nvars < p.nvars:
            raise ValueError(f"expression uses {p.nvars} variables, expected {nvars}")
        p = LaurentPolyN({e + (0,) * (nvars - p.nvars): c for e, c in p.terms.items()}, nvars)
    return p


def format_poly(p: LaurentPolyN) -> str:
    """Inverse of parse(., 'comm')."""
    return format_polyN(p, COMM_VARS[:p.nvars])


def element_to_xz(f: GroupRingElement) -> LaurentPolyN:
    """View f in Z[x, z] as a commutative polynomial in (x, z)."""
    if any(l for _, l, _ in f.terms):
        raise ValueError(f"{f} involves y")
    return LaurentPolyN({(k, m): c for (k, _, m), c in f.terms.items()}, 2)


def element_to_z(f: GroupRingElement) -> LaurentPoly1:
    if any(k or l for k, l, _ in f.terms):
        raise ValueError(f"{f} is not central")
    return LaurentPoly1.from_dict({m: c for (_, _, m), c in f.terms.items()})
