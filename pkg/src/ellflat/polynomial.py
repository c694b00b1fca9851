"""Bivariate polynomials in ``s`` and ``t`` with exact rational coefficients.

Also contains the recursive-descent parser for the ASCII polynomial grammar
used on the command line::

    expr   := term (("+" | "-") term)*
    term   := unary (("*" | "/") unary)*
    unary  := ("+" | "-") unary | power
    power  := atom (("^" | "**") unary)?
    atom   := NUMBER | "s" | "t" | "(" expr ")"

Division is only allowed by nonzero constants and exponents must be
non-negative integer constants.
"""
from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterator, Mapping

from .errors import ParseError, ZeroPolynomial

Monomial = tuple[int, int]
AXES = ("s", "t")


class BivariatePoly:
    """Immutable polynomial stored as ``{(exp_s, exp_t): coefficient}``."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, object] | None = None):
        clean = {}
        for (i, j), c in (terms or {}).items():
            if i < 0 or j < 0:
                raise ValueError(f"negative exponent in {(i, j)}")
            c = Fraction(c)
            if c:
                clean[(int(i), int(j))] = clean.get((int(i), int(j)), 0) + c
        self._terms = {k: v for k, v in clean.items() if v}
        self._hash = None

    # construction -------------------------------------------------------
    @classmethod
    def constant(cls, c) -> BivariatePoly:
        return cls({(0, 0): c})

    @classmethod
    def s(cls) -> BivariatePoly:
        return cls({(1, 0): 1})

    @classmethod
    def t(cls) -> BivariatePoly:
        return cls({(0, 1): 1})

    @classmethod
    def monomial(cls, i: int, j: int, c=1) -> BivariatePoly:
        return cls({(i, j): c})

    @classmethod
    def parse(cls, text: str) -> BivariatePoly:
        return parse_poly(text)

    @staticmethod
    def coerce(x) -> BivariatePoly:
        if isinstance(x, BivariatePoly):
            return x
        if isinstance(x, str):
            return parse_poly(x)
        return BivariatePoly.constant(x)

    # container protocol --------------------------------------------------
    @property
    def terms(self) -> dict[Monomial, Fraction]:
        return dict(self._terms)

    def items(self) -> Iterator[tuple[Monomial, Fraction]]:
        return iter(sorted(self._terms.items()))

    def coefficient(self, i: int, j: int) -> Fraction:
        return self._terms.get((i, j), Fraction(0))

    def __bool__(self) -> bool:
        return bool(self._terms)

    @property
    def is_zero(self) -> bool:
        return not self._terms

    @property
    def constant_term(self) -> Fraction:
        return self.coefficient(0, 0)

    def __eq__(self, other) -> bool:
        if not isinstance(other, BivariatePoly):
            try:
                other = BivariatePoly.coerce(other)
            except (TypeError, ValueError):
                return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # arithmetic ------------------------------------------------------------
    def __add__(self, other) -> BivariatePoly:
        other = BivariatePoly.coerce(other)
        out = dict(self._terms)
        for k, v in other._terms.items():
            out[k] = out.get(k, 0) + v
        return BivariatePoly(out)

    __radd__ = __add__

    def __neg__(self) -> BivariatePoly:
        return BivariatePoly({k: -v for k, v in self._terms.items()})

    def __sub__(self, other) -> BivariatePoly:
        return self + (-BivariatePoly.coerce(other))

    def __rsub__(self, other) -> BivariatePoly:
        return BivariatePoly.coerce(other) - self

    def __mul__(self, other) -> BivariatePoly:
        other = BivariatePoly.coerce(other)
        out: dict[Monomial, Fraction] = {}
        for (i1, j1), c1 in self._terms.items():
            for (i2, j2), c2 in other._terms.items():
                k = (i1 + i2, j1 + j2)
                out[k] = out.get(k, 0) + c1 * c2
        return BivariatePoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> BivariatePoly:
        if n < 0:
            raise ValueError("negative power")
        out, base = BivariatePoly.constant(1), self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def scale(self, c) -> BivariatePoly:
        c = Fraction(c)
        return BivariatePoly({k: v * c for k, v in self._terms.items()})

    # structure ----------------------------------------------------------
    @property
    def degree(self) -> int:
        if not self._terms:
            return -1
        return max(i + j for i, j in self._terms)

    def vanishing_order(self, axis: str) -> int:
        """Largest k such that ``axis**k`` divides the polynomial."""
        self._nonzero()
        idx = AXES.index(axis)
        return min(k[idx] for k in self._terms)

    def multiplicity_at_origin(self) -> int:
        self._nonzero()
        return min(i + j for i, j in self._terms)

    def lowest_form(self) -> BivariatePoly:
        m = self.multiplicity_at_origin()
        return BivariatePoly({k: v for k, v in self._terms.items() if sum(k) == m})

    def divide_monomial(self, i: int, j: int) -> BivariatePoly:
        if any(a < i or b < j for a, b in self._terms):
            raise ValueError(f"s^{i} t^{j} does not divide {self}")
        return BivariatePoly({(a - i, b - j): v for (a, b), v in self._terms.items()})

    def derivative(self, axis: str) -> BivariatePoly:
        idx = AXES.index(axis)
        out = {}
        for k, v in self._terms.items():
            if k[idx]:
                nk = (k[0] - 1, k[1]) if idx == 0 else (k[0], k[1] - 1)
                out[nk] = v * k[idx]
        return BivariatePoly(out)

    def compose(self, s_image: BivariatePoly, t_image: BivariatePoly) -> BivariatePoly:
        """Substitute ``s -> s_image``, ``t -> t_image``."""
        s_pows: dict[int, BivariatePoly] = {}
        t_pows: dict[int, BivariatePoly] = {}
        out = BivariatePoly()
        for (i, j), c in self._terms.items():
            if i not in s_pows:
                s_pows[i] = s_image ** i
            if j not in t_pows:
                t_pows[j] = t_image ** j
            out = out + (s_pows[i] * t_pows[j]).scale(c)
        return out

    def translate(self, s0=0, t0=0) -> BivariatePoly:
        """The polynomial ``f(s + s0, t + t0)``; moves (s0, t0) to the origin."""
        if not s0 and not t0:
            return self
        S, T = BivariatePoly.s(), BivariatePoly.t()
        return self.compose(S + s0, T + t0)

    def __call__(self, s, t) -> Fraction:
        return sum((c * Fraction(s) ** i * Fraction(t) ** j for (i, j), c in self._terms.items()), Fraction(0))

    def restrict(self, axis: str) -> dict[int, Fraction]:
        """Univariate coefficients of the restriction to ``axis = 0``."""
        idx = AXES.index(axis)
        other = 1 - idx
        return {k[other]: v for k, v in self._terms.items() if k[idx] == 0}

    def _nonzero(self):
        if not self._terms:
            raise ZeroPolynomial("the zero polynomial has no order")

    # display ------------------------------------------------------------
    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for (i, j), c in sorted(self._terms.items(), key=lambda kv: (-sum(kv[0]), -kv[0][0])):
            mono = "*".join(
                f"{v}^{e}" if e > 1 else v for v, e in (("s", i), ("t", j)) if e
            )
            mag = abs(c)
            if mono:
                body = mono if mag == 1 else f"{mag}*{mono}"
            else:
                body = str(mag)
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self) -> str:
        return f"BivariatePoly({str(self)!r})"


_TOKEN = re.compile(r"\s*(?:(\d+(?:\.\d+)?)|(\*\*|[-+*/^()])|([st]))")


def _tokenize(text: str) -> list[tuple[str, str]]:
    pos, out = 0, []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character at {pos} in {text!r}")
        num, op, var = m.groups()
        if num is not None:
            out.append(("num", num))
        elif op is not None:
            out.append(("op", op))
        else:
            out.append(("var", var))
        pos = m.end()
    out.append(("end", ""))
    return out


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def expect(self, op):
        tok = self.take()
        if tok != ("op", op):
            raise ParseError(f"expected {op!r} in {self.text!r}")

    def parse(self) -> BivariatePoly:
        if self.peek()[0] == "end":
            raise ParseError("empty expression")
        out = self.expr()
        if self.peek()[0] != "end":
            raise ParseError(f"trailing input {self.peek()[1]!r} in {self.text!r}")
        return out

    def expr(self):
        out = self.term()
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            rhs = self.term()
            out = out + rhs if op == "+" else out - rhs
        return out

    def term(self):
        out = self.unary()
        while self.peek() in (("op", "*"), ("op", "/")):
            op = self.take()[1]
            rhs = self.unary()
            if op == "*":
                out = out * rhs
            else:
                if rhs.degree > 0 or rhs.is_zero:
                    raise ParseError("division only by nonzero constants")
                out = out.scale(1 / rhs.constant_term)
        return out

    def unary(self):
        if self.peek() == ("op", "-"):
            self.take()
            return -self.unary()
        if self.peek() == ("op", "+"):
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek() in (("op", "^"), ("op", "**")):
            self.take()
            e = self.unary()
            if e.degree > 0 or e.constant_term.denominator != 1 or e.constant_term < 0:
                raise ParseError("exponents must be non-negative integers")
            return base ** int(e.constant_term)
        return base

    def atom(self):
        kind, val = self.take()
        if kind == "num":
            return BivariatePoly.constant(Fraction(val))
        if kind == "var":
            return BivariatePoly.s() if val == "s" else BivariatePoly.t()
        if (kind, val) == ("op", "("):
            out = self.expr()
            self.expect(")")
            return out
        raise ParseError(f"unexpected {val or 'end of input'!r} in {self.text!r}")


def parse_poly(text: str) -> BivariatePoly:
    return _Parser(text).parse()
