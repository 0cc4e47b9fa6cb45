"""Exponential polynomials: exact representation, arithmetic and evaluation.

An exponential polynomial is a finite sum ``sum_j P_j(z) exp(Q_j(z))`` with
polynomials ``P_j`` and ``Q_j``.  Every :class:`ExpPoly` is kept in canonical
form:

* the constant part of each exponent is folded into its multiplier, so that
  ``Q_j(0) = 0``;
* terms with matching exponents are merged and zero multipliers dropped;
* terms are ordered by ``(deg Q, leading-down coefficients of Q)``.

The empty term tuple is the only representation of zero.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np
import sympy as sp

from .errors import NotTranscendental
from . import scalars as S

__all__ = [
    "Polynomial",
    "ExpTerm",
    "ExpPoly",
    "RationalExpPoly",
    "NormalizedForm",
    "parse",
    "canonicalize",
    "ring_op",
    "differentiate",
    "shift",
    "evaluate",
    "normalize",
    "order",
    "const",
    "Z",
    "exp_of",
]


# ---------------------------------------------------------------------------
# Polynomials
# ---------------------------------------------------------------------------


def _exactify(c):
    # Python ints and Fractions count as exact; floats and complex force float mode.
    if isinstance(c, Fraction):
        return sp.Rational(c.numerator, c.denominator)
    if isinstance(c, int) and not isinstance(c, bool):
        return sp.Integer(c)
    return c


def _trim(coeffs):
    coeffs = list(coeffs)
    while coeffs and S.s_is_zero(coeffs[-1]):
        coeffs.pop()
    return tuple(coeffs)


@dataclass(frozen=True, eq=False)
class Polynomial:
    """Univariate polynomial in ``z``; ``coeffs[k]`` multiplies ``z**k``.

    The zero polynomial has the empty coefficient tuple.
    """

    coeffs: tuple = ()

    def __post_init__(self):
        cs = tuple(_exactify(c) for c in self.coeffs)
        cs = tuple(S.canon(c) if S.is_exact(c) else complex(c) for c in cs)
        if any(not S.is_exact(c) for c in cs):
            cs = tuple(S.to_complex(c) for c in cs)
        object.__setattr__(self, "coeffs", _trim(cs))

    # -- constructors -----------------------------------------------------
    @classmethod
    def constant(cls, c) -> "Polynomial":
        return cls((c,))

    @classmethod
    def monomial(cls, k: int, c=sp.Integer(1)) -> "Polynomial":
        return cls((sp.Integer(0),) * k + (c,))

    # -- properties -------------------------------------------------------
    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def exact(self) -> bool:
        return all(S.is_exact(c) for c in self.coeffs)

    def is_constant(self) -> bool:
        return self.degree <= 0

    def coeff(self, k: int):
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else sp.Integer(0)

    def leading(self):
        return self.coeffs[-1] if self.coeffs else sp.Integer(0)

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other: "Polynomial") -> "Polynomial":
        n = max(len(self.coeffs), len(other.coeffs))
        return Polynomial(tuple(S.s_add(self.coeff(k), other.coeff(k)) for k in range(n)))

    def __neg__(self) -> "Polynomial":
        return Polynomial(tuple(S.s_neg(c) for c in self.coeffs))

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __mul__(self, other) -> "Polynomial":
        if not isinstance(other, Polynomial):
            return self.scale(other)
        if self.is_zero or other.is_zero:
            return Polynomial(())
        a, b = self.coeffs, other.coeffs
        if self.exact and other.exact:
            out = [sp.Integer(0)] * (len(a) + len(b) - 1)
            for i, x in enumerate(a):
                for j, y in enumerate(b):
                    out[i + j] = out[i + j] + x * y
            return Polynomial(tuple(S.canon(c) for c in out))
        av = np.array([S.to_complex(c) for c in a])
        bv = np.array([S.to_complex(c) for c in b])
        conv = np.convolve(av, bv)
        mags = np.convolve(np.abs(av), np.abs(bv))
        conv[np.abs(conv) <= S.CANCEL_TOL * mags] = 0
        return Polynomial(tuple(complex(c) for c in conv))

    __rmul__ = __mul__

    def scale(self, c) -> "Polynomial":
        return Polynomial(tuple(S.s_mul(x, c) for x in self.coeffs))

    def __pow__(self, k: int) -> "Polynomial":
        out = Polynomial((sp.Integer(1),))
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def derivative(self) -> "Polynomial":
        return Polynomial(tuple(S.s_mul(c, sp.Integer(k)) for k, c in enumerate(self.coeffs) if k > 0))

    def shift(self, c) -> "Polynomial":
        """Return ``P(z + c)`` (Taylor shift)."""
        if self.is_zero:
            return self
        out = Polynomial(())
        lin = Polynomial((c, sp.Integer(1)))
        # Horner: P(z+c) = (...(a_n)(z+c) + a_{n-1})...
        for a in reversed(self.coeffs):
            out = out * lin + Polynomial((a,))
        return out

    def compose_linear(self, a, b) -> "Polynomial":
        """Return ``P(a z + b)``."""
        if self.is_zero:
            return self
        out = Polynomial(())
        lin = Polynomial((b, a))
        for c in reversed(self.coeffs):
            out = out * lin + Polynomial((c,))
        return out

    def __call__(self, z):
        if isinstance(z, np.ndarray) or isinstance(z, (complex, float, int)):
            return np.polyval(self.numeric()[::-1], z) if self.coeffs else 0 * z
        out = sp.Integer(0)
        for c in reversed(self.coeffs):
            out = out * z + c
        return S.canon(out)

    def numeric(self) -> np.ndarray:
        return np.array([S.to_complex(c) for c in self.coeffs], dtype=complex)

    def to_float(self) -> "Polynomial":
        return Polynomial(tuple(S.to_complex(c) for c in self.coeffs))

    def to_exact(self) -> "Polynomial":
        return Polynomial(tuple(S.exact(c) for c in self.coeffs))

    def divmod(self, other: "Polynomial"):
        """Polynomial long division; returns (quotient, remainder)."""
        if other.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        q = [sp.Integer(0)] * max(len(rem) - len(other.coeffs) + 1, 0)
        lead_inv = S.s_inv(other.leading())
        db = other.degree
        for k in range(len(rem) - 1, db - 1, -1):
            c = S.s_mul(rem[k], lead_inv)
            q[k - db] = c
            if S.s_is_zero(c):
                continue
            for j, b in enumerate(other.coeffs):
                rem[k - db + j] = S.s_add(rem[k - db + j], S.s_neg(S.s_mul(c, b)))
            rem[k] = sp.Integer(0) if S.is_exact(rem[k]) else 0j
        return Polynomial(tuple(q)), Polynomial(tuple(rem[:db] if db > 0 else ()))

    def equals(self, other: "Polynomial", tol: float = S.MATCH_TOL) -> bool:
        n = max(len(self.coeffs), len(other.coeffs))
        return all(S.s_equal(self.coeff(k), other.coeff(k), tol) for k in range(n))

    def __eq__(self, other) -> bool:
        return isinstance(other, Polynomial) and self.equals(other)

    def __hash__(self) -> int:
        return hash(tuple(str(c) for c in self.coeffs)) if self.exact else hash(len(self.coeffs))

    def __str__(self) -> str:
        return _poly_str(self)

    def __repr__(self) -> str:
        return f"Polynomial({_poly_str(self)})"


def _fully_parenthesized(s: str) -> bool:
    if not (s.startswith("(") and s.endswith(")")):
        return False
    depth = 0
    for k, ch in enumerate(s):
        depth += ch == "("
        depth -= ch == ")"
        if depth == 0 and k < len(s) - 1:
            return False
    return True


def _wrap(s: str) -> str:
    return s if S.is_atomic_str(s) or _fully_parenthesized(s) else f"({s})"


def _poly_str(p: Polynomial) -> str:
    if p.is_zero:
        return "0"
    parts = []
    for k, c in enumerate(p.coeffs):
        if S.s_is_zero(c):
            continue
        cs = S.s_str(c)
        if k == 0:
            parts.append(cs if len(p.coeffs) == 1 else _wrap(cs))
        else:
            zpart = "z" if k == 1 else f"z^{k}"
            if S.is_exact(c) and c == 1:
                parts.append(zpart)
            elif S.is_exact(c) and c == -1:
                parts.append(f"(-{zpart})")
            else:
                parts.append(f"{_wrap(cs)}*{zpart}")
    return " + ".join(parts)


# ---------------------------------------------------------------------------
# Terms and exponential polynomials
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class ExpTerm:
    """A single term ``multiplier(z) * exp(exponent(z))`` with ``exponent(0) = 0``."""

    multiplier: Polynomial
    exponent: Polynomial

    def key(self):
        return _exp_key(self.exponent)


def _exp_key(q: Polynomial):
    """Sort key of an exponent: (degree, leading-down (re, im) pairs)."""
    d = max(q.degree, 0)
    return (d,) + tuple(S.sort_key(q.coeff(k)) for k in range(d, 0, -1))


def _exponents_match(a: Polynomial, b: Polynomial) -> bool:
    return a.equals(b, S.MATCH_TOL)


def _fold(mult: Polynomial, expo: Polynomial):
    """Fold the constant of ``expo`` into ``mult``."""
    c0 = expo.coeff(0)
    if not S.s_is_zero(c0):
        mult = mult.scale(S.s_exp(c0))
        expo = Polynomial((sp.Integer(0),) + expo.coeffs[1:])
    return mult, expo


def canonicalize(raw: Iterable[ExpTerm]) -> "ExpPoly":
    """Fold constants, merge matching exponents, drop zeros and sort."""
    raw = list(raw)
    any_float = any(not (t.multiplier.exact and t.exponent.exact) for t in raw)
    groups: list[list] = []
    index: dict = {}
    for t in raw:
        mult, expo = t.multiplier, t.exponent
        if any_float:
            mult, expo = mult.to_float(), expo.to_float()
        mult, expo = _fold(mult, expo)
        if mult.is_zero:
            continue
        if not any_float:
            k = expo.coeffs
            if k in index:
                g = groups[index[k]]
                g[0] = g[0] + mult
            else:
                index[k] = len(groups)
                groups.append([mult, expo])
        else:
            for g in groups:
                if _exponents_match(g[1], expo):
                    g[0] = g[0] + mult
                    break
            else:
                groups.append([mult, expo])
    terms = [ExpTerm(m, e) for m, e in groups if not m.is_zero]
    terms.sort(key=ExpTerm.key)
    return ExpPoly._raw(tuple(terms))


class ExpPoly:
    """Canonical exponential polynomial; immutable.

    Construct from terms (canonicalized automatically), via :func:`parse`,
    or with the arithmetic operators starting from :data:`Z` / :func:`const`
    / :func:`exp_of`.
    """

    __slots__ = ("terms", "__dict__")

    def __init__(self, terms: Iterable[ExpTerm] = ()):
        c = canonicalize(terms)
        object.__setattr__(self, "terms", c.terms)

    @classmethod
    def _raw(cls, terms: tuple) -> "ExpPoly":
        obj = cls.__new__(cls)
        object.__setattr__(obj, "terms", terms)
        return obj

    def __setattr__(self, name, value):  # immutability
        if name in ("terms",):
            raise AttributeError("ExpPoly is immutable")
        object.__setattr__(self, name, value)

    # -- structure --------------------------------------------------------
    @property
    def is_zero(self) -> bool:
        return not self.terms

    @cached_property
    def exact(self) -> bool:
        return all(t.multiplier.exact and t.exponent.exact for t in self.terms)

    @property
    def order(self) -> int:
        return max((t.exponent.degree for t in self.terms if t.exponent.degree > 0), default=0)

    def is_polynomial(self) -> bool:
        """True if ``self`` has no exponential factor (order 0)."""
        return all(t.exponent.degree <= 0 for t in self.terms)

    def as_polynomial(self) -> Polynomial:
        if not self.is_polynomial():
            raise ValueError("not an ordinary polynomial")
        return self.terms[0].multiplier if self.terms else Polynomial(())

    def is_constant(self) -> bool:
        return self.is_polynomial() and self.as_polynomial().degree <= 0

    def constant_value(self):
        if not self.is_constant():
            raise ValueError("not a constant")
        return self.terms[0].multiplier.coeff(0) if self.terms else sp.Integer(0)

    def is_unit(self) -> bool:
        """Nonzero single term with constant multiplier."""
        return len(self.terms) == 1 and self.terms[0].multiplier.degree == 0

    def has_constant_multipliers(self) -> bool:
        return all(t.multiplier.degree <= 0 for t in self.terms)

    def frequencies(self) -> list:
        """Linear exponent coefficients ``w_j`` (order <= 1 only)."""
        if self.order > 1:
            raise ValueError("frequencies() requires order <= 1; use normalize()")
        return [t.exponent.coeff(1) for t in self.terms]

    # -- conversions ------------------------------------------------------
    def to_float(self) -> "ExpPoly":
        return ExpPoly(ExpTerm(t.multiplier.to_float(), t.exponent.to_float()) for t in self.terms)

    def to_exact(self) -> "ExpPoly":
        return ExpPoly(ExpTerm(t.multiplier.to_exact(), t.exponent.to_exact()) for t in self.terms)

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other) -> "ExpPoly":
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return canonicalize(self.terms + other.terms)

    __radd__ = __add__

    def __neg__(self) -> "ExpPoly":
        return ExpPoly._raw(tuple(ExpTerm(-t.multiplier, t.exponent) for t in self.terms))

    def __sub__(self, other) -> "ExpPoly":
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "ExpPoly":
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other) -> "ExpPoly":
        other = _coerce(other)
        if other is None:
            return NotImplemented
        raw = [
            ExpTerm(a.multiplier * b.multiplier, a.exponent + b.exponent)
            for a in self.terms
            for b in other.terms
        ]
        return canonicalize(raw)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "ExpPoly":
        k = int(k)
        if k < 0:
            if not self.is_unit():
                raise ValueError("negative powers only for units c*exp(Q)")
            return self.inverse_unit() ** (-k)
        out = ONE
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def inverse_unit(self) -> "ExpPoly":
        if not self.is_unit():
            raise ValueError("only units c*exp(Q) are invertible in the ring")
        t = self.terms[0]
        return ExpPoly([ExpTerm(Polynomial((S.s_inv(t.multiplier.coeff(0)),)), -t.exponent)])

    def __truediv__(self, other):
        if isinstance(other, RationalExpPoly):
            return RationalExpPoly.lift(self) / other
        other = _coerce(other)
        if other is None:
            return NotImplemented
        if other.is_unit():
            return self * other.inverse_unit()
        return RationalExpPoly(self, other)

    def __rtruediv__(self, other):
        return as_exppoly(other) / self

    # -- calculus -----------------------------------------------------------
    def derivative(self, k: int = 1) -> "ExpPoly":
        f = self
        for _ in range(k):
            f = canonicalize(
                ExpTerm(t.multiplier.derivative() + t.multiplier * t.exponent.derivative(), t.exponent)
                for t in f.terms
            )
        return f

    def shift(self, c) -> "ExpPoly":
        """Return ``f(z + c)``."""
        if S.is_exact(c):
            c = S.canon(c)
        return canonicalize(ExpTerm(t.multiplier.shift(c), t.exponent.shift(c)) for t in self.terms)

    def compose_linear(self, a, b=0) -> "ExpPoly":
        """Return ``f(a z + b)``."""
        if not S.is_exact(a) or not S.is_exact(b):
            a, b = complex(S.to_complex(a)), complex(S.to_complex(b))
        return canonicalize(
            ExpTerm(t.multiplier.compose_linear(a, b), t.exponent.compose_linear(a, b)) for t in self.terms
        )

    # -- equality -----------------------------------------------------------
    def equals(self, other, tol: float = S.MATCH_TOL) -> bool:
        other = as_exppoly(other)
        if len(self.terms) != len(other.terms):
            return False
        if self.exact and other.exact:
            return all(
                a.exponent.coeffs == b.exponent.coeffs and a.multiplier.coeffs == b.multiplier.coeffs
                for a, b in zip(self.terms, other.terms)
            )
        diff = self.to_float() - other.to_float()
        if diff.is_zero:
            return True
        scale = max(
            [abs(S.to_complex(c)) for t in self.terms + other.terms for c in t.multiplier.coeffs] + [1.0]
        )
        return all(abs(S.to_complex(c)) <= tol * scale for t in diff.terms for c in t.multiplier.coeffs)

    def __eq__(self, other) -> bool:
        try:
            return self.equals(other)
        except TypeError:
            return NotImplemented

    def __hash__(self) -> int:
        return hash(str(self)) if self.exact else hash(len(self.terms))

    # -- numerics -------------------------------------------------------------
    @cached_property
    def _numeric(self):
        return [(t.multiplier.numeric()[::-1], t.exponent.numeric()[::-1]) for t in self.terms]

    def term_logs(self, z):
        """Per-term ``(log|P_j| + Re Q_j, arg P_j + Im Q_j)`` as arrays (terms x points)."""
        z = np.asarray(z, dtype=complex)
        nt = len(self.terms)
        logm = np.empty((nt,) + z.shape)
        ph = np.empty((nt,) + z.shape)
        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            for j, (pm, pe) in enumerate(self._numeric):
                p = np.polyval(pm, z) if pm.size > 1 else np.full(z.shape, pm[0] if pm.size else 0j)
                q = np.polyval(pe, z) if pe.size else np.zeros(z.shape, dtype=complex)
                logm[j] = np.log(np.abs(p)) + q.real
                ph[j] = np.angle(p) + q.imag
        return logm, ph

    def scaled(self, z):
        """Return ``(L, s)`` with ``f(z) = s * exp(L)`` and ``L`` the largest term log-modulus.

        ``|s|`` is then the cancellation ratio ``|f| / max_j |term_j|``.
        """
        z = np.asarray(z, dtype=complex)
        if not self.terms:
            return np.full(z.shape, -np.inf), np.zeros(z.shape, dtype=complex)
        logm, ph = self.term_logs(z)
        L = np.max(logm, axis=0)
        Lsafe = np.where(np.isfinite(L), L, 0.0)
        with np.errstate(invalid="ignore", over="ignore"):
            s = np.sum(np.exp(logm - Lsafe + 1j * ph), axis=0)
        s = np.where(np.isfinite(L), s, 0)
        return L, s

    def log_abs(self, z):
        L, s = self.scaled(z)
        with np.errstate(divide="ignore"):
            return L + np.log(np.abs(s))

    def __call__(self, z):
        """Plain evaluation (may overflow for large arguments)."""
        if S.is_exact(z) and not isinstance(z, (complex, float, int)):
            z = S.to_complex(z)
        L, s = self.scaled(z)
        with np.errstate(over="ignore", invalid="ignore"):
            out = s * np.exp(L)
        return out if np.ndim(out) else complex(out)

    def evaluate(self, z):
        """Stable evaluation: ``(scale, mantissa)`` with ``f = mantissa*e^scale``, ``1<=|mantissa|<e``."""
        return evaluate(self, z)

    # -- normal form ------------------------------------------------------
    def normalize(self) -> "NormalizedForm":
        return normalize(self)

    # -- printing ---------------------------------------------------------
    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for t in self.terms:
            m = _poly_str(t.multiplier)
            if t.exponent.is_zero:
                parts.append(_wrap(m))
                continue
            e = f"exp({_poly_str(t.exponent)})"
            if t.multiplier.degree == 0 and S.is_exact(t.multiplier.coeff(0)) and t.multiplier.coeff(0) == 1:
                parts.append(e)
            else:
                parts.append(f"{_wrap(m)}*{e}")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"ExpPoly({self})"

    def sympy(self, z=None):
        """Convert to a sympy expression in the symbol ``z``."""
        z = z if z is not None else sp.Symbol("z")
        out = sp.Integer(0)
        for t in self.terms:
            P = sum(c * z**k for k, c in enumerate(t.multiplier.coeffs))
            Q = sum(c * z**k for k, c in enumerate(t.exponent.coeffs))
            out += P * sp.exp(Q)
        return out


def _coerce(x):
    try:
        return as_exppoly(x)
    except TypeError:
        return None


def as_exppoly(x) -> ExpPoly:
    if isinstance(x, ExpPoly):
        return x
    if isinstance(x, Polynomial):
        return ExpPoly([ExpTerm(x, Polynomial(()))])
    if isinstance(x, (int, float, complex, sp.Basic)):
        return const(x)
    raise TypeError(f"cannot interpret {type(x).__name__} as ExpPoly")


def const(c) -> ExpPoly:
    """Constant exponential polynomial (exact for ints and sympy numbers)."""
    if isinstance(c, (bool, int)):
        c = sp.Integer(c)
    return ExpPoly([ExpTerm(Polynomial((c,)), Polynomial(()))])


def exp_of(q, mult=1) -> ExpPoly:
    """``mult * exp(q)`` for a polynomial ``q`` (Polynomial or coefficient list)."""
    if not isinstance(q, Polynomial):
        q = Polynomial(tuple(sp.Integer(c) if isinstance(c, int) else c for c in q))
    if not isinstance(mult, Polynomial):
        mult = Polynomial((sp.Integer(mult) if isinstance(mult, int) else mult,))
    return ExpPoly([ExpTerm(mult, q)])


ONE = ExpPoly._raw((ExpTerm(Polynomial((sp.Integer(1),)), Polynomial(())),))
ZERO = ExpPoly._raw(())
#: The identity function ``z``.
Z = ExpPoly._raw((ExpTerm(Polynomial((sp.Integer(0), sp.Integer(1))), Polynomial(())),))


# ---------------------------------------------------------------------------
# Quotients
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class RationalExpPoly:
    """Quotient ``numerator / denominator`` of exponential polynomials (not reduced)."""

    numerator: ExpPoly
    denominator: ExpPoly = field(default_factory=lambda: ONE)

    def __post_init__(self):
        if self.denominator.is_zero:
            raise ZeroDivisionError("zero denominator")

    @staticmethod
    def lift(x) -> "RationalExpPoly":
        if isinstance(x, RationalExpPoly):
            return x
        return RationalExpPoly(as_exppoly(x), ONE)

    def _simplify_den(self) -> "RationalExpPoly":
        if self.denominator.is_unit():
            inv = self.denominator.inverse_unit()
            return RationalExpPoly(self.numerator * inv, ONE)
        return self

    def __add__(self, other):
        o = RationalExpPoly.lift(other)
        if self.denominator.equals(o.denominator):
            return RationalExpPoly(self.numerator + o.numerator, self.denominator)._simplify_den()
        return RationalExpPoly(
            self.numerator * o.denominator + o.numerator * self.denominator,
            self.denominator * o.denominator,
        )._simplify_den()

    __radd__ = __add__

    def __neg__(self):
        return RationalExpPoly(-self.numerator, self.denominator)

    def __sub__(self, other):
        return self + (-RationalExpPoly.lift(other))

    def __rsub__(self, other):
        return RationalExpPoly.lift(other) - self

    def __mul__(self, other):
        o = RationalExpPoly.lift(other)
        return RationalExpPoly(self.numerator * o.numerator, self.denominator * o.denominator)._simplify_den()

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = RationalExpPoly.lift(other)
        if o.numerator.is_zero:
            raise ZeroDivisionError("division by zero")
        return RationalExpPoly(self.numerator * o.denominator, self.denominator * o.numerator)._simplify_den()

    def __rtruediv__(self, other):
        return RationalExpPoly.lift(other) / self

    def __pow__(self, k: int):
        k = int(k)
        if k < 0:
            return RationalExpPoly(self.denominator**(-k), self.numerator**(-k))._simplify_den()
        return RationalExpPoly(self.numerator**k, self.denominator**k)._simplify_den()

    def derivative(self, k: int = 1) -> "RationalExpPoly":
        f = self
        for _ in range(k):
            n, d = f.numerator, f.denominator
            if d.is_constant():
                f = RationalExpPoly(n.derivative(), d)
            else:
                f = RationalExpPoly(n.derivative() * d - n * d.derivative(), d * d)._simplify_den()
        return f

    def shift(self, c) -> "RationalExpPoly":
        return RationalExpPoly(self.numerator.shift(c), self.denominator.shift(c))

    @property
    def is_zero(self) -> bool:
        return self.numerator.is_zero

    def __call__(self, z):
        Ln, sn = self.numerator.scaled(z)
        Ld, sd = self.denominator.scaled(z)
        with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
            out = sn / sd * np.exp(Ln - Ld)
        return out if np.ndim(out) else complex(out)

    def log_abs(self, z):
        return self.numerator.log_abs(z) - self.denominator.log_abs(z)

    def __str__(self) -> str:
        if self.denominator.equals(ONE):
            return str(self.numerator)
        return f"({self.numerator})/({self.denominator})"

    def __repr__(self) -> str:
        return f"RationalExpPoly({self})"


# ---------------------------------------------------------------------------
# Normal form
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class NormalizedForm:
    """``f = tail + sum_j multipliers[j] * exp(frequencies[j] * z**q)``."""

    q: int
    frequencies: tuple
    multipliers: tuple
    tail: ExpPoly

    def reassemble(self) -> ExpPoly:
        out = self.tail
        zq = Polynomial.monomial(self.q)
        for w, F in zip(self.frequencies, self.multipliers):
            out = out + F * exp_of(zq.scale(w))
        return out

    def frequencies_complex(self) -> np.ndarray:
        return np.array([S.to_complex(w) for w in self.frequencies], dtype=complex)

    def hull_frequencies(self, include_tail: bool = True) -> np.ndarray:
        """Frequencies ``w_j`` plus ``0`` when the tail is nonzero."""
        w = list(self.frequencies_complex())
        if include_tail and not self.tail.is_zero:
            w.append(0j)
        return np.array(w, dtype=complex)

    def __str__(self) -> str:
        parts = [f"q={self.q}"]
        for w, F in zip(self.frequencies, self.multipliers):
            parts.append(f"[{S.s_str(w)}] {F}")
        parts.append(f"tail {self.tail}")
        return "; ".join(parts)


def normalize(f: ExpPoly) -> NormalizedForm:
    """Group the order-q terms of ``f`` by leading exponent coefficient."""
    q = f.order
    if q == 0:
        raise NotTranscendental("all exponents are constant; f is an ordinary polynomial")
    freqs: list = []
    mults: list[list] = []
    tail: list = []
    for t in f.terms:
        if t.exponent.degree < q:
            tail.append(t)
            continue
        w = t.exponent.coeff(q)
        rest = Polynomial(t.exponent.coeffs[:q])
        for i, v in enumerate(freqs):
            if S.s_equal(v, w):
                mults[i].append(ExpTerm(t.multiplier, rest))
                break
        else:
            freqs.append(w)
            mults.append([ExpTerm(t.multiplier, rest)])
    return NormalizedForm(
        q=q,
        frequencies=tuple(freqs),
        multipliers=tuple(canonicalize(m) for m in mults),
        tail=canonicalize(tail),
    )


def order(f: ExpPoly) -> int:
    return f.order


# ---------------------------------------------------------------------------
# Functional API
# ---------------------------------------------------------------------------


def ring_op(kind: str, f: ExpPoly, g) -> ExpPoly:
    """Apply ``add``, ``sub``, ``mul`` or ``pow`` (g is then an int >= 0)."""
    if kind == "add":
        return f + g
    if kind == "sub":
        return f - g
    if kind == "mul":
        return f * g
    if kind == "pow":
        if int(g) < 0:
            raise ValueError("pow requires k >= 0")
        return f ** int(g)
    raise ValueError(f"unknown ring operation {kind!r}")


def differentiate(f: ExpPoly, k: int = 1) -> ExpPoly:
    if k < 1:
        raise ValueError("derivative order must be >= 1")
    return f.derivative(k)


def shift(f: ExpPoly, c) -> ExpPoly:
    return f.shift(c)


def evaluate(f: ExpPoly, z):
    """Return ``(scale, mantissa)`` with ``f(z) = mantissa * exp(scale)``.

    ``1 <= |mantissa| < e`` unless ``f(z) = 0`` (then mantissa 0, scale 0).
    Works for scalar or array ``z``.
    """
    if S.is_exact(z) and not isinstance(z, (complex, float, int)):
        z = S.to_complex(z)
    L, s = f.scaled(z)
    a = np.abs(s)
    with np.errstate(divide="ignore", invalid="ignore"):
        k = np.floor(np.log(a))
    ok = (a > 0) & np.isfinite(L)
    k = np.where(ok, k, 0.0)
    scale = np.where(ok, L + k, 0.0)
    mant = np.where(ok, s * np.exp(-k), 0)
    # guard against rounding at the interval ends
    m = np.abs(mant)
    adj = np.where(ok & (m >= math.e), 1.0, np.where(ok & (m < 1.0), -1.0, 0.0))
    scale = scale + adj
    mant = mant * np.exp(-adj)
    if np.ndim(scale) == 0:
        return float(scale), complex(mant)
    return scale, mant


from .parser import parse  # noqa: E402  (parser depends on the classes above)
