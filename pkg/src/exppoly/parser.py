"""Recursive-descent parser for the exponential-polynomial expression grammar.

Grammar (ASCII)::

    expr    := term (('+' | '-') term)*
    term    := unary (('*' | '/') unary | <implicit after a number>)*
    unary   := ('+' | '-') unary | power
    power   := atom ('^' unary)?
    atom    := NUMBER ['i'] | 'z' | 'i' | 'pi' | 'e'
             | FUNC '(' expr ')' | '(' expr ')'
    FUNC    := exp | sin | cos | sinh | cosh | log | sqrt

Numbers are read exactly (``0.1`` is the rational 1/10).  ``exp``, ``sin``,
``cos``, ``sinh`` and ``cosh`` accept polynomial arguments only and are
expanded into exponential form.  ``log`` and ``sqrt`` accept constants.
A power ``b ^ x`` is a ring power when ``x`` is a non-negative integer,
``exp(x log b)`` when ``b`` is a positive constant (``e ^ z``, ``2 ^ (-z)``),
and the inverse of a unit for negative integer ``x``.  Division is allowed
only by units ``c*exp(Q)``.

The parser can be extended with extra atoms (used by the equation parser for
the unknown ``f``) through the ``atom_hook`` argument.
"""
from __future__ import annotations

import re
from dataclasses import dataclass

import sympy as sp

from .errors import ExpressionSyntaxError, NonPolynomialExponent
from . import scalars as S

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<num>(?:\d+\.\d*|\.\d+|\d+)(?:[eE][+-]?\d+)?)
  | (?P<name>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<op>\*\*|[-+*/^(),'])
    """,
    re.VERBOSE,
)


@dataclass
class Token:
    kind: str
    text: str
    pos: int


def tokenize(text: str) -> list[Token]:
    toks = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            raise ExpressionSyntaxError(f"unexpected character {text[pos]!r}", pos, text)
        kind = m.lastgroup
        if kind != "ws":
            t = m.group(kind)
            if kind == "op" and t == "**":
                t = "^"
            toks.append(Token(kind, t, pos))
        pos = m.end()
    toks.append(Token("end", "", len(text)))
    return toks


class Parser:
    """Parse expression text into values supporting ring operations.

    Values produced are ``ExpPoly`` unless ``atom_hook`` introduces other
    objects (which must implement ``+ - *`` and integer powers).
    """

    def __init__(self, text: str, atom_hook=None):
        from . import expr as E

        self.E = E
        self.text = text
        self.toks = tokenize(text)
        self.i = 0
        self.atom_hook = atom_hook

    # -- token helpers --------------------------------------------------------
    @property
    def cur(self) -> Token:
        return self.toks[self.i]

    def peek(self, k=1) -> Token:
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def advance(self) -> Token:
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, text: str) -> Token:
        if self.cur.text != text:
            raise ExpressionSyntaxError(f"expected {text!r}, found {self.cur.text or 'end of input'!r}", self.cur.pos, self.text)
        return self.advance()

    def error(self, msg, pos=None):
        return ExpressionSyntaxError(msg, self.cur.pos if pos is None else pos, self.text)

    # -- grammar --------------------------------------------------------------
    def parse(self):
        if self.cur.kind == "end":
            raise self.error("empty expression")
        v = self.expr()
        if self.cur.kind != "end":
            raise self.error(f"unexpected token {self.cur.text!r}")
        return v

    def expr(self):
        v = self.term()
        while self.cur.text in ("+", "-"):
            op = self.advance().text
            w = self.term()
            v = v + w if op == "+" else v - w
        return v

    def term(self):
        v = self.unary()
        while True:
            t = self.cur
            if t.text == "*":
                self.advance()
                v = v * self.unary()
            elif t.text == "/":
                self.advance()
                pos = self.cur.pos
                d = self.unary()
                v = self._divide(v, d, pos)
            elif t.kind in ("name", "num") or t.text == "(":
                # implicit multiplication, e.g. "2z", "2 pi", "3(z+1)"
                v = v * self.unary()
            else:
                return v

    def unary(self):
        if self.cur.text == "-":
            self.advance()
            return -self.unary()
        if self.cur.text == "+":
            self.advance()
            return self.unary()
        return self.power()

    def power(self):
        pos = self.cur.pos
        base = self.atom()
        if self.cur.text == "^":
            self.advance()
            epos = self.cur.pos
            ex = self.unary()
            return self._power(base, ex, pos, epos)
        return base

    def atom(self):
        E = self.E
        t = self.cur
        if self.atom_hook is not None:
            v = self.atom_hook(self)
            if v is not None:
                return v
        if t.kind == "num":
            self.advance()
            val = sp.Rational(t.text)
            # imaginary literal "2i" / "2.5i" written without '*'
            if self.cur.kind == "name" and self.cur.text == "i" and self.cur.pos == t.pos + len(t.text):
                self.advance()
                val = val * sp.I
            return E.const(val)
        if t.kind == "name":
            name = t.text
            if name == "z":
                self.advance()
                return E.Z
            if name == "i":
                self.advance()
                return E.const(sp.I)
            if name == "pi":
                self.advance()
                return E.const(sp.pi)
            if name == "e":
                self.advance()
                return E.const(sp.E)
            if name in ("exp", "sin", "cos", "sinh", "cosh", "log", "sqrt"):
                self.advance()
                self.expect("(")
                apos = self.cur.pos
                arg = self.expr()
                self.expect(")")
                return self._func(name, arg, apos)
            raise self.error(f"unknown name {name!r}")
        if t.text == "(":
            self.advance()
            v = self.expr()
            self.expect(")")
            return v
        raise self.error(f"unexpected token {t.text or 'end of input'!r}")

    # -- semantic helpers -------------------------------------------------------
    def _as_poly(self, v, pos, what):
        E = self.E
        if not isinstance(v, E.ExpPoly) or not v.is_polynomial():
            raise NonPolynomialExponent(f"argument of {what} is not a polynomial in z", pos, self.text)
        return v.as_polynomial()

    def _as_const(self, v, pos, what):
        E = self.E
        if not isinstance(v, E.ExpPoly) or not v.is_constant():
            raise self.error(f"argument of {what} must be a constant", pos)
        return v.constant_value()

    def _func(self, name, arg, pos):
        E = self.E
        if name in ("log", "sqrt"):
            c = self._as_const(arg, pos, name)
            if not S.is_exact(c):
                c = S.exact(c)
            if name == "log":
                if not (c.is_real and c.is_positive):
                    raise self.error("log() needs a positive constant", pos)
                return E.const(S.canon(sp.log(c)))
            return E.const(S.canon(sp.sqrt(c)))
        P = self._as_poly(arg, pos, name)
        I = sp.I
        if name == "exp":
            return E.exp_of(P)
        if name == "sin":
            return E.exp_of(P.scale(I), sp.Rational(1, 2) / I) + E.exp_of(P.scale(-I), -sp.Rational(1, 2) / I)
        if name == "cos":
            return E.exp_of(P.scale(I), sp.Rational(1, 2)) + E.exp_of(P.scale(-I), sp.Rational(1, 2))
        if name == "sinh":
            return E.exp_of(P, sp.Rational(1, 2)) + E.exp_of(-P, -sp.Rational(1, 2))
        if name == "cosh":
            return E.exp_of(P, sp.Rational(1, 2)) + E.exp_of(-P, sp.Rational(1, 2))
        raise self.error(f"unknown function {name}", pos)

    def _divide(self, v, d, pos):
        E = self.E
        if isinstance(d, E.ExpPoly):
            if d.is_zero:
                raise self.error("division by zero", pos)
            if d.is_unit():
                return v * d.inverse_unit()
        raise self.error("division is only allowed by units c*exp(Q)", pos)

    def _power(self, base, ex, pos, epos):
        E = self.E
        if not isinstance(ex, E.ExpPoly):
            raise NonPolynomialExponent("exponent must not contain the unknown", epos, self.text)
        if ex.is_constant():
            k = ex.constant_value()
            if S.is_exact(k) and k.is_Integer:
                k = int(k)
                if k >= 0:
                    return base ** k
                if isinstance(base, E.ExpPoly) and base.is_unit():
                    return base.inverse_unit() ** (-k)
                raise self.error("negative power of a non-unit", epos)
            if isinstance(base, E.ExpPoly) and base.is_constant():
                b = base.constant_value()
                return E.const(S.canon(sp.Pow(b, k)))
            raise self.error("non-integer power of a non-constant", epos)
        # variable exponent: base must be a positive constant
        if not (isinstance(base, E.ExpPoly) and base.is_constant()):
            raise NonPolynomialExponent("variable exponent requires a constant base", epos, self.text)
        b = base.constant_value()
        if not (S.is_exact(b) and b.is_real and b.is_positive):
            raise self.error("variable exponent requires a positive real base", pos)
        P = self._as_poly(ex, epos, "a power")
        return E.exp_of(P.scale(S.canon(sp.log(b))))


def parse(text: str, exact: bool = True):
    """Parse ``text`` into a canonical :class:`~exppoly.expr.ExpPoly`.

    With ``exact=False`` the result is converted to float coefficients.
    """
    v = Parser(text).parse()
    return v if exact else v.to_float()
