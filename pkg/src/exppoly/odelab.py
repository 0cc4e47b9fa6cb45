"""Linear ODEs and functional equations with exponential-polynomial data.

* :class:`LinearODE` -- ``lead*f^(n) + A_{n-1} f^(n-1) + ... + A_0 f = rhs``.
* :class:`EquationTree` -- differential-difference equations in an unknown
  ``f`` built from sums, products, powers, derivatives and shifts, parsed from
  text such as ``"f^2 - 2*exp(z)*f(z-log(2)) - 1"``.
* :func:`annihilator` -- the minimal-order linear ODE with polynomial
  coefficients satisfied by a given exponential polynomial.
* :func:`verify` -- exact residual of an equation at a candidate solution.
* duality, oscillation and growth predicates for second-order equations.

The module also ships a catalogue of known equation/solution pairs
(:func:`catalog`) used as exact regression fixtures.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from typing import Sequence

import numpy as np
import sympy as sp
from sympy.polys.matrices import DomainMatrix

from . import scalars as S
from .errors import ExpressionSyntaxError, NonRepresentable, NotTranscendental
from .expr import (
    ONE,
    ZERO,
    Z,
    ExpPoly,
    ExpTerm,
    Polynomial,
    RationalExpPoly,
    as_exppoly,
    const,
    exp_of,
    normalize,
)
from .hullgeo import build_hull, indicator
from .parser import Parser

_ZSYM = sp.Symbol("z")


# ---------------------------------------------------------------------------
# linear ODEs
# ---------------------------------------------------------------------------


def _lift(x):
    return x if isinstance(x, RationalExpPoly) else as_exppoly(x)


def _is_zero(x) -> bool:
    return x.is_zero


@dataclass
class LinearODE:
    """``lead * f^(n) + sum_k coefficients[k] * f^(k) = rhs``.

    ``lead`` is 1 for the usual monic form; annihilators whose rational
    coefficients had to be cleared carry a polynomial ``lead``.
    """

    coefficients: list
    rhs: ExpPoly = field(default_factory=lambda: ZERO)
    lead: ExpPoly = field(default_factory=lambda: ONE)

    def __post_init__(self):
        self.coefficients = [as_exppoly(a) for a in self.coefficients]
        self.rhs = as_exppoly(self.rhs)
        self.lead = as_exppoly(self.lead)
        if self.lead.is_zero:
            raise ValueError("leading coefficient must be nonzero")

    @property
    def order(self) -> int:
        return len(self.coefficients)

    @property
    def homogeneous(self) -> bool:
        return self.rhs.is_zero

    @property
    def monic(self) -> bool:
        return self.lead.equals(ONE)

    def apply(self, f):
        """``L[f] - rhs`` for an ExpPoly or RationalExpPoly ``f``."""
        f = _lift(f)
        derivs = [f]
        for _ in range(self.order):
            derivs.append(derivs[-1].derivative())
        out = self.lead * derivs[-1]
        for a, d in zip(self.coefficients, derivs):
            if not a.is_zero:
                out = out + a * d
        return out - self.rhs

    def polynomial_coefficients(self) -> bool:
        return all(a.is_polynomial() for a in self.coefficients + [self.lead])

    def __str__(self) -> str:
        parts = []
        n = self.order
        lead = "" if self.monic else f"({self.lead})*"
        parts.append(f"{lead}{_dname(n)}")
        for k in range(n - 1, -1, -1):
            a = self.coefficients[k]
            if not a.is_zero:
                parts.append(f"({a})*{_dname(k)}")
        return " + ".join(parts) + f" = {self.rhs}"

    def to_dict(self) -> dict:
        return {
            "order": self.order,
            "lead": str(self.lead),
            "coefficients": [str(a) for a in self.coefficients],
            "rhs": str(self.rhs),
            "text": str(self),
        }


def _dname(k: int) -> str:
    return "f" + "'" * k if k <= 3 else f"f'({k})"


# ---------------------------------------------------------------------------
# equation trees
# ---------------------------------------------------------------------------


class EquationTree:
    """Expression tree over the unknown ``f``.

    Node kinds: ``unknown``, ``coefficient`` (an ExpPoly), ``add``, ``mul``,
    ``power`` (integer ``k >= 1``), ``derivative`` (order ``k``) and
    ``shift`` (``f(z + c)``).
    """

    __slots__ = ("kind", "children", "data")

    def __init__(self, kind: str, children=(), data=None):
        self.kind = kind
        self.children = tuple(children)
        self.data = data

    # -- constructors ---------------------------------------------------------
    @staticmethod
    def unknown(k: int = 0, c=None) -> "EquationTree":
        node = EquationTree("unknown")
        if k:
            node = EquationTree("derivative", (node,), int(k))
        if c is not None and not S.s_is_zero(c):
            node = EquationTree("shift", (node,), c)
        return node

    @staticmethod
    def coefficient(a) -> "EquationTree":
        return EquationTree("coefficient", (), as_exppoly(a))

    @staticmethod
    def _wrap(x):
        if isinstance(x, EquationTree):
            return x
        try:
            return EquationTree.coefficient(x)
        except TypeError:
            return None

    # -- ring operations ------------------------------------------------------
    def __add__(self, other):
        o = EquationTree._wrap(other)
        if o is None:
            return NotImplemented
        return EquationTree("add", (self, o))

    def __radd__(self, other):
        o = EquationTree._wrap(other)
        if o is None:
            return NotImplemented
        return EquationTree("add", (o, self))

    def __neg__(self):
        return EquationTree("mul", (EquationTree.coefficient(-1), self))

    def __sub__(self, other):
        o = EquationTree._wrap(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = EquationTree._wrap(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = EquationTree._wrap(other)
        if o is None:
            return NotImplemented
        return EquationTree("mul", (self, o))

    def __rmul__(self, other):
        o = EquationTree._wrap(other)
        if o is None:
            return NotImplemented
        return EquationTree("mul", (o, self))

    def __pow__(self, k):
        k = int(k)
        if k < 0:
            raise ValueError("negative powers of the unknown are not supported")
        if k == 0:
            return EquationTree.coefficient(1)
        return EquationTree("power", (self,), k)

    # -- evaluation -----------------------------------------------------------
    def evaluate(self, f, cache=None):
        """Substitute ``f`` (ExpPoly or RationalExpPoly) for the unknown."""
        if cache is None:
            cache = {}
        f = _lift(f)
        return self._eval(f, cache)

    def _eval(self, f, cache):
        kind = self.kind
        if kind == "coefficient":
            return self.data
        if kind == "unknown":
            return f
        if kind in ("derivative", "shift"):
            key = self._signature()
            if key in cache:
                return cache[key]
            v = self.children[0]._eval(f, cache)
            v = v.derivative(self.data) if kind == "derivative" else v.shift(self.data)
            cache[key] = v
            return v
        if kind == "add":
            vals = [c._eval(f, cache) for c in self.children]
            return _sum(vals)
        if kind == "mul":
            a, b = (c._eval(f, cache) for c in self.children)
            return a * b
        if kind == "power":
            return self.children[0]._eval(f, cache) ** self.data
        raise ValueError(f"unknown node kind {kind}")

    def _signature(self):
        if self.kind == "unknown":
            return ("f",)
        if self.kind == "derivative":
            return ("d", self.data) + self.children[0]._signature()
        if self.kind == "shift":
            return ("s", S.s_str(self.data)) + self.children[0]._signature()
        return (self.kind, id(self))

    def unknowns(self) -> list:
        """(derivative order, shift) of every occurrence of the unknown."""
        out = []

        def walk(node, k=0, c=None):
            if node.kind == "unknown":
                out.append((k, c))
            elif node.kind == "derivative":
                walk(node.children[0], k + node.data, c)
            elif node.kind == "shift":
                walk(node.children[0], k, node.data)
            else:
                for ch in node.children:
                    walk(ch, k, c)

        walk(self)
        return out

    def __str__(self) -> str:
        kind = self.kind
        if kind == "coefficient":
            return f"({self.data})"
        if kind == "unknown":
            return "f"
        if kind == "derivative":
            return f"{self.children[0]}{chr(39) * self.data}" if self.data <= 3 else f"{self.children[0]}'({self.data})"
        if kind == "shift":
            return f"{self.children[0]}(z+{S.s_str(self.data)})"
        if kind == "add":
            return " + ".join(str(c) for c in self.children)
        if kind == "mul":
            return "*".join(f"({c})" if c.kind == "add" else str(c) for c in self.children)
        if kind == "power":
            return f"({self.children[0]})^{self.data}"
        return kind

    __repr__ = __str__


def _sum(vals):
    total = vals[0]
    for v in vals[1:]:
        total = total + v
    return total


def _unknown_hook(parser: Parser):
    t = parser.cur
    if t.kind != "name" or t.text != "f":
        return None
    parser.advance()
    k = 0
    while parser.cur.text == "'":
        parser.advance()
        k += 1
    shift = None
    for _ in range(2):
        if parser.cur.text != "(":
            break
        pos = parser.cur.pos
        parser.advance()
        arg = parser.expr()
        parser.expect(")")
        if not isinstance(arg, ExpPoly):
            raise ExpressionSyntaxError("the argument of f must not contain f", pos, parser.text)
        if arg.is_constant():
            c = arg.constant_value()
            if k == 1 and S.is_exact(c) and c.is_Integer and int(c) >= 1 and shift is None:
                k = int(c)  # f'(k): k-th derivative
                continue
            raise ExpressionSyntaxError("f(...) needs an argument z + c", pos, parser.text)
        rest = arg - Z
        if not rest.is_constant():
            raise ExpressionSyntaxError("f(...) needs an argument z + c", pos, parser.text)
        shift = rest.constant_value()
        break
    return EquationTree.unknown(k, shift)


def parse_equation(text: str) -> EquationTree:
    """Parse ``text`` (the expression grammar plus ``f``, ``f'``, ``f'(k)``, ``f(z+c)``).

    The equation is ``text = 0``; ``lhs = rhs`` is also accepted.
    """
    if "=" in text:
        lhs, rhs = text.split("=", 1)
        return parse_equation(lhs) - parse_equation(rhs)
    v = Parser(text, atom_hook=_unknown_hook).parse()
    if not isinstance(v, EquationTree):
        v = EquationTree.coefficient(v)
    return v


# ---------------------------------------------------------------------------
# verification
# ---------------------------------------------------------------------------


def verify(eq, f):
    """Residual of ``eq`` at ``f``, computed exactly in the fraction field.

    ``eq`` is an :class:`EquationTree`, equation text, or a :class:`LinearODE`;
    ``f`` an ExpPoly, RationalExpPoly or expression text.  The residual
    numerator is canonically zero iff ``f`` solves the equation (exact mode).
    """
    if isinstance(eq, str):
        eq = parse_equation(eq)
    if isinstance(f, str):
        from .expr import parse

        f = parse(f)
    if isinstance(eq, LinearODE):
        r = eq.apply(f)
    else:
        r = eq.evaluate(f)
    return RationalExpPoly.lift(r)


def residual_is_zero(res, tol: float = 1e-9) -> bool:
    """Exact zero test, or relative coefficient size ``< tol`` for float residuals."""
    res = RationalExpPoly.lift(res)
    num = res.numerator
    if num.is_zero:
        return True
    if num.exact:
        return False
    scale = max([abs(S.to_complex(c)) for t in res.denominator.terms for c in t.multiplier.coeffs] + [1.0])
    return all(abs(S.to_complex(c)) < tol * scale for t in num.terms for c in t.multiplier.coeffs)


# ---------------------------------------------------------------------------
# annihilators
# ---------------------------------------------------------------------------


def order_bound(f: ExpPoly) -> int:
    """``sum_j (1 + deg P_j) q^(m-j)`` over the terms ``P_j e^{Q_j}`` in canonical order."""
    f = as_exppoly(f)
    q = max(f.order, 1)
    m = len(f.terms)
    return sum((1 + max(t.multiplier.degree, 0)) * q ** (m - 1 - j) for j, t in enumerate(f.terms))


def _exact_version(f: ExpPoly) -> ExpPoly:
    from .factor import _rationalize

    if f.exact:
        return f
    return ExpPoly(
        ExpTerm(
            Polynomial(tuple(_rationalize(c) for c in t.multiplier.coeffs)),
            Polynomial(tuple(_rationalize(c) for c in t.exponent.coeffs)),
        )
        for t in f.terms
    )


def _poly_expr(p: Polynomial):
    return sum((c * _ZSYM**k for k, c in enumerate(p.coeffs)), sp.Integer(0))


def _expr_poly(e) -> Polynomial:
    e = sp.expand(e)
    if e == 0:
        return Polynomial(())
    P = sp.Poly(e, _ZSYM)
    return Polynomial(tuple(S.canon(c) for c in reversed(P.all_coeffs())))


def annihilator(f: ExpPoly) -> LinearODE:
    """Minimal-order linear ODE with polynomial coefficients annihilating ``f``.

    ``f, f', f'', ...`` are written in the basis ``{z^a e^{Q_j}}`` and the
    first linear dependence over the rational functions is found by
    fraction-free elimination.  The rational coefficients are cleared by a
    common denominator, so ``lead`` is a polynomial; it is divided out when
    it is a constant.  The order never exceeds the number of distinct
    exponents.  Float inputs are rationalized first (denominators <= 1e8).
    """
    f = as_exppoly(f)
    if f.is_zero:
        raise ValueError("f must be nonzero")
    fe = _exact_version(f)
    keys = [t.exponent.coeffs for t in fe.terms]
    m = len(keys)
    cols = []
    d = fe
    for k in range(m + 1):
        by = {t.exponent.coeffs: t.multiplier for t in d.terms}
        cols.append([_poly_expr(by[key]) if key in by else sp.Integer(0) for key in keys])
        rows = [[cols[j][i] for j in range(k + 1)] for i in range(m)]
        dm = DomainMatrix.from_list_sympy(m, k + 1, rows)
        dm = dm.to_field()
        ns = dm.nullspace()
        if ns.shape[0] > 0:
            vec = ns.to_Matrix().row(0)
            break
        d = d.derivative()
    else:  # pragma: no cover - m+1 vectors in dimension m are always dependent
        raise AssertionError("no dependence found")
    vec = [sp.together(sp.sympify(v)) for v in vec]
    lead = vec[-1]
    vec = [sp.cancel(v / lead) for v in vec]
    dens = [sp.fraction(v)[1] for v in vec]
    L = reduce(sp.lcm, dens, sp.Integer(1))
    polys = [sp.expand(sp.cancel(v * L)) for v in vec]
    g = reduce(sp.gcd, [p for p in polys if p != 0])
    polys = [sp.expand(sp.cancel(p / g)) for p in polys]
    lead_p = _expr_poly(polys[-1])
    coeffs = [_expr_poly(p) for p in polys[:-1]]
    if lead_p.is_constant():
        c = lead_p.coeff(0)
        coeffs = [p.scale(S.s_inv(c)) for p in coeffs]
        lead_p = Polynomial((sp.Integer(1),))
    return LinearODE([as_exppoly(p) for p in coeffs], ZERO, as_exppoly(lead_p))


# ---------------------------------------------------------------------------
# classical families
# ---------------------------------------------------------------------------


def frei_equation(alpha) -> LinearODE:
    """``f'' + e^{-z} f' + alpha f = 0``."""
    return LinearODE([const(alpha), exp_of(Polynomial((0, -1)))])


def frei_subnormal(m: int):
    """``(alpha, f)`` with ``alpha = -m^2`` and the polynomial-in-``e^z`` solution.

    Coefficients follow ``a_{n+1} = -(n^2 + alpha)/(n+1) a_n`` with ``a_0 = 1``.
    """
    if m < 1:
        raise ValueError("m must be a positive integer")
    alpha = sp.Integer(-m * m)
    a = [sp.Integer(1)]
    for n in range(m):
        a.append(-(n * n + alpha) / (n + 1) * a[-1])
    f = ZERO
    for n, c in enumerate(a):
        f = f + exp_of(Polynomial((0, n)), c)
    return alpha, f


def hermite_polynomial(n: int) -> Polynomial:
    """Physicists' Hermite polynomial by ``H_{k+1} = 2x H_k - 2k H_{k-1}``."""
    h0, h1 = Polynomial((1,)), Polynomial((0, 2))
    if n == 0:
        return h0
    for k in range(1, n):
        h0, h1 = h1, Polynomial((0, 2)) * h1 - h0.scale(sp.Integer(2 * k))
    return h1


def laguerre_polynomial(n: int, alpha=0) -> Polynomial:
    """Generalized Laguerre polynomial by the three-term recurrence."""
    alpha = sp.sympify(alpha)
    l0 = Polynomial((1,))
    l1 = Polynomial((1 + alpha, -1))
    if n == 0:
        return l0
    for k in range(1, n):
        nxt = Polynomial((2 * k + 1 + alpha, -1)) * l1 - l0.scale(k + alpha)
        l0, l1 = l1, nxt.scale(sp.Rational(1, k + 1))
    return l1


def compose_exp(P: Polynomial, w=1) -> ExpPoly:
    """``P(e^{w z})``."""
    out = ZERO
    for k, c in enumerate(P.coeffs):
        if not S.s_is_zero(c):
            out = out + exp_of(Polynomial((0, S.canon(k * sp.sympify(w)))), c)
    return out


def hermite_equation(n: int) -> LinearODE:
    """``f'' - (2e^{2z}+1) f' + 2n e^{2z} f = 0`` (solved by ``H_n(e^z)``)."""
    e2 = exp_of(Polynomial((0, 2)))
    return LinearODE([e2 * (2 * n), -(e2 * 2 + 1)])


def laguerre_equation(n: int, alpha=0) -> LinearODE:
    """``f'' - (e^z - alpha) f' + n e^z f = 0`` (solved by ``L_n^(alpha)(e^z)``)."""
    e1 = exp_of(Polynomial((0, 1)))
    return LinearODE([e1 * n, const(alpha) - e1])


def h_transform_equation(gamma) -> LinearODE:
    """Equation for ``h = f exp(2 gamma e^{z/2})`` when ``f'' - (gamma^2 e^z - gamma e^{z/2}/2 + 1/4) f = 0``.

    Substitution gives ``h'' - 2 gamma e^{z/2} h' - h/4 = 0``; it has the
    subnormal solution ``4 gamma + e^{-z/2}``.
    """
    u = exp_of(Polynomial((0, sp.Rational(1, 2))))
    return LinearODE([const(sp.Rational(-1, 4)), -(u * (2 * sp.sympify(gamma)))])


def standard_third_equation(c, K) -> LinearODE:
    """Equation for ``g = f exp(-c e^{z/3})`` when ``f''' - K f' + e^z f = 0`` and ``c^3 = -27``.

    Derived by direct substitution:
    ``g''' + c u g'' + (c^2 u^2/3 + c u/3 - K) g' + (c u/3)(c u/3 + 1/9 - K) g = 0``
    with ``u = e^{z/3}``.
    """
    c, K = sp.sympify(c), sp.sympify(K)
    u = exp_of(Polynomial((0, sp.Rational(1, 3))))
    a2 = u * c
    a1 = u * u * (c**2 / 3) + u * (c / 3) - K
    a0 = (u * (c / 3)) * (u * (c / 3) + sp.Rational(1, 9) - K)
    return LinearODE([a0, a1, a2])


def _nullspace_solution(ode: LinearODE, basis: list):
    """Exact combination of ``basis`` terms annihilated by ``ode``, or None."""
    images = [ode.apply(b) for b in basis]
    keys = []
    for im in images:
        for t in im.terms:
            if t.exponent.coeffs not in keys:
                keys.append(t.exponent.coeffs)
    rows = []
    for key in keys:
        row = []
        for im in images:
            by = {t.exponent.coeffs: t.multiplier for t in im.terms}
            row.append(_poly_expr(by[key]) if key in by else sp.Integer(0))
        rows.append(row)
    # multipliers are constants here (order-1 sums with constant coefficients)
    M = sp.Matrix(rows) if rows else sp.zeros(1, len(basis))
    ns = M.nullspace()
    if not ns:
        return None
    v = ns[0]
    out = ZERO
    for cf, b in zip(v, basis):
        out = out + b * S.canon(sp.nsimplify(cf))
    return out


def standard_third_solution(c, N: int):
    """``(K, g)``: ``K = (N+1)^2/9`` and the Laurent solution ``sum d_m e^{(m-1)z/3}``, ``-N <= m <= 0``."""
    K = sp.Rational((N + 1) ** 2, 9)
    ode = standard_third_equation(c, K)
    basis = [exp_of(Polynomial((0, sp.Rational(m - 1, 3)))) for m in range(-N, 1)]
    return K, _nullspace_solution(ode, basis)


# ---------------------------------------------------------------------------
# duality
# ---------------------------------------------------------------------------


@dataclass
class DualityReport:
    one_sided: tuple
    dual: bool
    commensurable: tuple
    common_factor: object
    strongly_dual: bool
    gamma_class: tuple
    heuristic: bool = False

    def to_dict(self) -> dict:
        cf = None
        if self.common_factor is not None:
            w = complex(S.to_complex(self.common_factor))
            cf = [w.real, w.imag]
        return {
            "one_sided": list(self.one_sided),
            "dual": self.dual,
            "commensurable": list(self.commensurable),
            "common_factor": cf,
            "strongly_dual": self.strongly_dual,
            "gamma_class": list(self.gamma_class),
            "heuristic": self.heuristic,
        }


def _ray_angle(ws) -> float | None:
    """Common argument of the nonzero complex numbers ``ws``, or None."""
    args = [math.atan2(w.imag, w.real) for w in ws if abs(w) > 0]
    if not args:
        return None
    a0 = args[0]
    for a in args[1:]:
        d = (a - a0 + math.pi) % (2 * math.pi) - math.pi
        if abs(d) > 1e-12:
            return None
    return a0


def one_sided(f: ExpPoly) -> bool:
    """All nonzero leading frequencies lie on one ray from the origin."""
    nf = normalize(as_exppoly(f))
    return _ray_angle(list(nf.frequencies_complex())) is not None


def common_factor(f: ExpPoly):
    """``(w, heuristic)`` with every nonzero frequency a positive integer multiple of ``w``; ``w`` None otherwise."""
    from .factor import _lattice

    f = as_exppoly(f)
    nf = normalize(f)
    return _common_factor_of(list(nf.frequencies), f.exact)


def _common_factor_of(freqs, exact):
    from .factor import _lattice

    freqs = [w for w in freqs if not S.s_is_zero(w)]
    if not freqs:
        return None, False
    basis, coords, heur = _lattice(freqs, exact)
    if len(basis) != 1:
        return None, heur
    ints = [c[0] for c in coords]
    if all(x > 0 for x in ints):
        sign = 1
    elif all(x < 0 for x in ints):
        sign = -1
    else:
        return None, heur
    b = basis[0]
    w = S.canon(sign * b) if exact else sign * b
    return w, heur


def gamma_class(h: ExpPoly) -> str:
    """Smallest of Gamma_0, Gamma_1, Gamma_0^d, Gamma_1^d containing ``h`` (or ``none``).

    Gamma_1 = {e^{alpha} + d}, Gamma_0 = {e^{alpha}}, and the ``d``
    versions allow polynomial coefficients ``d_1 e^{alpha} + d_2``.
    """
    h = as_exppoly(h)
    exp_terms = [t for t in h.terms if t.exponent.degree >= 1]
    poly_terms = [t for t in h.terms if t.exponent.degree < 1]
    if len(exp_terms) != 1:
        return "none"
    t = exp_terms[0]
    const_mult = t.multiplier.is_constant()
    tail = poly_terms[0].multiplier if poly_terms else Polynomial(())
    if not poly_terms:
        return "Gamma_0" if const_mult else "Gamma_0^d"
    if const_mult and tail.is_constant():
        return "Gamma_1"
    return "Gamma_1^d"


def duality_classify(f: ExpPoly, g: ExpPoly) -> DualityReport:
    """One-sidedness, duality, commensurability and strong duality of ``f`` and ``g``."""
    f, g = as_exppoly(f), as_exppoly(g)
    if f.order == 0 or g.order == 0:
        raise NotTranscendental("both inputs must be transcendental")
    nf, ng = normalize(f), normalize(g)
    wf, wg = list(nf.frequencies_complex()), list(ng.frequencies_complex())
    af, ag = _ray_angle(wf), _ray_angle(wg)
    os_ = (af is not None, ag is not None)
    dual = False
    if all(os_) and nf.q == ng.q:
        d = (ag - af) % (2 * math.pi)
        dual = abs(d - math.pi) < 1e-12
    exact = f.exact and g.exact
    cf_f, h1 = _common_factor_of(list(nf.frequencies), f.exact)
    cf_g, h2 = _common_factor_of(list(ng.frequencies), g.exact)
    comm = (cf_f is not None, cf_g is not None)
    strongly = False
    w = None
    heur = h1 or h2
    if dual and all(comm):
        # a shared factor w with w_j/w and lambda_i/(-w) positive integers
        neg = [S.canon(-x) if S.is_exact(x) else -x for x in ng.frequencies]
        w, h3 = _common_factor_of(list(nf.frequencies) + neg, exact)
        heur = heur or h3
        if w is not None:
            sums = [complex(S.to_complex(a)) + complex(S.to_complex(b)) for a in nf.frequencies for b in ng.frequencies]
            wc = complex(S.to_complex(w))
            proj = [(s / wc).real for s in sums]
            strongly = all(p >= -1e-12 for p in proj) or all(p <= 1e-12 for p in proj)
    return DualityReport(os_, dual, comm, w if strongly else (cf_f if comm[0] else None), strongly,
                         (gamma_class(f), gamma_class(g)), heur)


# ---------------------------------------------------------------------------
# second-order transformations and oscillation predicates
# ---------------------------------------------------------------------------


def normalize_second_order(p, q) -> ExpPoly:
    """``A = q - p'/2 - p^2/4``: ``f'' + p f' + q f = 0`` becomes ``g'' + A g = 0``."""
    p, q = as_exppoly(p), as_exppoly(q)
    return q - p.derivative() * sp.Rational(1, 2) - p * p * sp.Rational(1, 4)


def zero_free_base_A(phi) -> ExpPoly:
    """``A = -(e^{2 phi} + phi'^2 - 2 phi'')/4`` for a polynomial ``phi``.

    ``f'' + A f = 0`` then has a zero-free solution base.
    """
    phi = as_exppoly(phi)
    if not phi.is_polynomial():
        raise NonRepresentable("e^{2 phi} is an exponential polynomial only for polynomial phi")
    P = phi.as_polynomial()
    if P.is_constant():
        raise ValueError("phi must be nonconstant")
    d1, d2 = phi.derivative(), phi.derivative(2)
    return (exp_of(P.scale(2)) + d1 * d1 - d2 * 2) * sp.Rational(-1, 4)


def sixteenth_check(P: Polynomial, Q: Polynomial) -> bool:
    """Exact test of ``Q = -(P')^2/16 + P''/4``."""
    if P.degree <= 0:
        raise ValueError("P must be nonconstant")
    d1 = P.derivative()
    rhs = (d1 * d1).scale(sp.Rational(-1, 16)) + P.derivative().derivative().scale(sp.Rational(1, 4))
    return (rhs - Q).is_zero if (P.exact and Q.exact) else (rhs - Q).equals(Polynomial(()), 1e-12)


def perimeter_condition(A: ExpPoly, tol: float = 1e-12) -> bool:
    """``C(co(W_0)) > 4 C(co(W))`` for the conjugated top-order frequencies ``W`` of ``A``.

    Circumferences count a segment twice.  Equality (within ``tol``) is
    reported as False.
    """
    nf = normalize(as_exppoly(A))
    w = nf.frequencies_complex()
    if len(w) < 2:
        raise ValueError("A needs at least two top-order exponential terms")
    W = np.conj(w)
    c = build_hull(W).circumference
    c0 = build_hull(W, include_origin=True).circumference
    return bool(c0 > 4 * c + tol * max(1.0, c0))


def _indicator_values(f: ExpPoly, theta):
    f = as_exppoly(f)
    if f.order == 0:
        return np.zeros_like(np.asarray(theta, dtype=float)), 0
    nf = normalize(f)
    return indicator(nf, theta), nf.q


def indicator_dominance(A: ExpPoly, B: ExpPoly, theta_grid=None, tol: float = 1e-12):
    """Grid check of ``h_B(theta) <= max(0, h_A(theta))``.

    Returns ``(ok, witness)``: ``witness`` is the grid angle with the
    largest violation when ``ok`` is False, else None.
    """
    th = np.linspace(0.0, 2 * np.pi, 360, endpoint=False) if theta_grid is None else np.asarray(theta_grid, float)
    ha, qa = _indicator_values(A, th)
    hb, qb = _indicator_values(B, th)
    if qa and qb and qa != qb:
        raise ValueError("A and B must have equal orders")
    viol = hb - np.maximum(0.0, ha)
    k = int(np.argmax(viol))
    if viol[k] > tol:
        return False, float(th[k])
    return True, None


def bank_laine_residual(E, c, A):
    """``4 A E^2 - (E')^2 + c^2 + 2 E'' E``; zero iff the Bank-Laine identity holds."""
    E, A = _lift(E), _lift(A)
    if E.is_zero:
        raise ValueError("E must be nonzero")
    c = sp.sympify(c) if not isinstance(c, (float, complex)) else c
    if S.s_is_zero(c):
        raise ValueError("c must be nonzero")
    d1, d2 = E.derivative(), E.derivative(2)
    return A * E * E * 4 - d1 * d1 + const(c * c) + d2 * E * 2


# ---------------------------------------------------------------------------
# possible orders (Newton polygon)
# ---------------------------------------------------------------------------


def possible_orders(ode: LinearODE) -> list:
    """Admissible orders of transcendental solutions, decreasing.

    ``d_k = deg A_k - deg(lead)``; with ``s_0 = n``, ``d_n = 0``, the indices
    ``s_1 > s_2 > ...`` follow the Newton-polygon construction: ``s_1``
    maximizes ``d_k/(n-k)`` and ``s_{j+1}`` maximizes
    ``(d_k - d_{s_j})/(s_j - k)`` over ``k < s_j`` while that slope exceeds
    ``-1`` (ties go to the smallest index).  Then
    ``alpha_j = 1 + (d_{s_j} - d_{s_{j-1}})/(s_{j-1} - s_j)``.
    """
    if not ode.homogeneous:
        raise ValueError("equation must be homogeneous")
    if not ode.polynomial_coefficients():
        raise ValueError("coefficients must be polynomials")
    n = ode.order
    dl = ode.lead.as_polynomial().degree
    d = {}
    for k, a in enumerate(ode.coefficients):
        if not a.is_zero:
            d[k] = a.as_polynomial().degree - dl
    out: list = []
    s_prev, d_prev = n, 0
    while True:
        best = None
        for k in range(s_prev):
            if k not in d:
                continue
            slope = Fraction(d[k] - d_prev, s_prev - k)
            if slope <= -1:
                continue
            if best is None or slope > best[0]:
                best = (slope, k)
        if best is None:
            break
        slope, k = best
        out.append(1 + slope)
        s_prev, d_prev = k, d[k]
    return [sp.Rational(a.numerator, a.denominator) for a in out]


# ---------------------------------------------------------------------------
# catalogue of equation / solution pairs
# ---------------------------------------------------------------------------


@dataclass
class Fixture:
    name: str
    equation: object  # LinearODE or EquationTree
    solution: object  # ExpPoly or RationalExpPoly


def _e(w) -> ExpPoly:
    return exp_of(Polynomial((0, sp.sympify(w))))


def catalog() -> list[Fixture]:
    """Known equation/solution pairs with exponential-polynomial data."""
    from .expr import parse

    out: list[Fixture] = []
    I = sp.I
    for m in range(1, 6):
        alpha, f = frei_subnormal(m)
        out.append(Fixture(f"frei m={m}", frei_equation(alpha), f))
    for n in range(0, 6):
        out.append(Fixture(f"hermite n={n}", hermite_equation(n), compose_exp(hermite_polynomial(n))))
        for a in (0, 1, sp.Rational(1, 2)):
            out.append(Fixture(f"laguerre n={n} alpha={a}", laguerre_equation(n, a), compose_exp(laguerre_polynomial(n, a))))
    # third-order examples
    out.append(Fixture(
        "third order, two-term coefficient",
        LinearODE([const(3), const(-5), (const(9) + _e(1) * 9 + _e(2) * 4) * sp.Rational(1, 9)]),
        const(16) - _e(-2) * 27 + _e(-3) * 27,
    ))
    ez = exp_of(Polynomial((0, 1, sp.Rational(1, 2))))
    out.append(Fixture(
        "third order, second-order solution",
        LinearODE([-(Z + 1), const(-1), exp_of(Polynomial((0, -1, sp.Rational(-1, 2)))) - Z - 1]),
        ez + Z + 1,
    ))
    # Bank-Laine-Langley transforms
    for gam in (sp.Integer(1), sp.Integer(2), 1 + I, sp.Rational(1, 3)):
        u = _e(sp.Rational(1, 2))
        out.append(Fixture(f"half-frequency transform g, gamma={gam}",
                           LinearODE([u * gam, -(u * (2 * gam) + 1)]), u * (4 * gam) + 1))
        out.append(Fixture(f"half-frequency transform h, gamma={gam}",
                           h_transform_equation(gam),
                           const(4 * gam) + _e(sp.Rational(-1, 2))))
    # Frei normal-form transform
    out.append(Fixture("frei transform", LinearODE([_e(-1), _e(-1) + 2]), const(1) + _e(-1)))
    # transformed third-order equation
    for cval in (sp.Integer(-3), sp.Rational(3, 2) + 3 * sp.sqrt(3) * I / 2):
        for N in (0, 1, 2):
            K, g = standard_third_solution(cval, N)
            if g is not None:
                out.append(Fixture(f"transformed third order c={cval} N={N}", standard_third_equation(cval, K), g))
    # non-homogeneous deficiency examples
    for P in (Z, Z * Z + 2, const(3)):
        out.append(Fixture(
            f"deficiency example 1, P={P}",
            LinearODE([P * 2, -(P + 2)], (P - 1) * _e(1)),
            _e(2) + _e(1),
        ))
    e1, e2 = exp_of(Polynomial((0, 0, 1))), exp_of(Polynomial((0, 0, 2)))
    out.append(Fixture(
        "deficiency example 2",
        LinearODE([Z * 4 - 1, Z * (-4)], (Z * 4 + 3) * e2 - (Z * Z * 4 - Z * 4 - 1) * e1),
        e2 + e1 + _e(1),
    ))
    out.append(Fixture(
        "deficiency example 3",
        LinearODE([(Z + 1) * sp.Rational(-4, 3), const(1)], (Z * Z * 6 + Z + 1) * (e1 + e2 * 4) * sp.Rational(2, 3)),
        e2 + e1,
    ))
    # e^{z^2} + 1 with rational coefficients (multiplied through by 2z)
    out.append(Fixture("e^{z^2}+1, first equation",
                       LinearODE([Z * (-2), exp_of(Polynomial((0, 0, -1))) - 1 - Z * Z * 4], ZERO, Z * 2),
                       e1 + 1))
    out.append(Fixture("e^{z^2}+1, second equation",
                       LinearODE([(Z - 1) * Z * 2, -(exp_of(Polynomial((0, 0, -1))) * (Z - 1) + Z * Z * 4 + Z + 1)], ZERO, Z * 2),
                       e1 + 1))
    # one-term and q=1 dual families
    for (w, a, cc, b, P) in ((sp.Integer(1), sp.Integer(2), sp.Integer(3), sp.Integer(5), Z + 1),
                             (I, sp.Integer(1), sp.Integer(1), 2 - I, Z * Z)):
        out.append(Fixture(
            f"one-term family w={w}",
            LinearODE([P * (-w * b / cc), P * (b / cc) - w + P * _e(-w)]),
            const(cc) + _e(w) * b,
        ))
        out.append(Fixture(
            f"q=1 dual family w={w}",
            LinearODE([const(-w * w), _e(-w) * a]),
            (const(1) + _e(w) * (w / a)) * cc,
        ))
    # functional equations
    out.append(Fixture("quadratic shift equation, f=e^z+1", parse_equation("f^2 - 2*exp(z)*f(z-log(2)) - 1"), parse("exp(z)+1")))
    out.append(Fixture("quadratic shift equation, f=e^z-1", parse_equation("f^2 - 2*exp(z)*f(z-log(2)) - 1"), parse("exp(z)-1")))
    one_m = parse("1-exp(z)")
    out.append(Fixture("Riccati-type shift equation", parse_equation("f^2 - exp(-z)*f'(z+2*pi*i)"),
                       RationalExpPoly(ONE, one_m)))
    for a1 in (sp.Integer(2), sp.Integer(-1) + I):
        g = RationalExpPoly(ONE, one_m) - const(a1 / 2)
        eq = parse_equation(f"f^2 + ({S.s_str(a1)})*f - exp(-z)*f'(z+2*pi*i) + ({S.s_str(a1)})^2/4")
        out.append(Fixture(f"shifted Riccati-type, a1={a1}", eq, g))
    eq = parse_equation("f^2 + 2*f + exp(z)*f'(z+2*pi*i) + 1")
    out.append(Fixture("quotient solution 1", eq, RationalExpPoly(ONE, parse("exp(z)-1"))))
    out.append(Fixture("quotient solution 2", eq, RationalExpPoly(parse("1-exp(z)"), parse("2*exp(z)-1"))))
    cosz = parse("cos(z)")
    out.append(Fixture("cubic, sqrt(2) i / cos z", parse_equation("f^3 + f + f''(z+2*pi)"),
                       RationalExpPoly(const(sp.sqrt(2) * I), cosz)))
    out.append(Fixture("cubic, 1/cos z", parse_equation("f^3 - f/2 + f''(z+pi)/2"), RationalExpPoly(ONE, cosz)))
    # Yang-Li cubic with trigonometric solutions
    eq = parse_equation("f^3 + (3/4)*f'' + sin(3*z)/4")
    for sol in ("sin(z)", "sqrt(3)/2*cos(z) - sin(z)/2", "-sqrt(3)/2*cos(z) - sin(z)/2"):
        out.append(Fixture(f"cubic trigonometric, {sol}", eq, parse(sol)))
    return out
