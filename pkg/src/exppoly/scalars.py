"""Scalar domain helpers.

Two scalar kinds are supported throughout the package:

* exact scalars -- sympy expressions built from rationals, ``I``, ``pi``,
  ``E``, ``log(p)`` and radicals; kept in a canonical expanded form so that
  structural equality decides numerical equality in all cases that arise
  in practice (``log 4 == 2 log 2``, ``exp(2 pi i) == 1`` ...);
* float scalars -- Python ``complex``.

Binary operations between an exact and a float scalar produce a float.
"""
from __future__ import annotations

from functools import lru_cache
from numbers import Number

import sympy as sp

#: Relative tolerance used when matching float frequencies/exponents.
MATCH_TOL = 1e-12
#: Relative cancellation threshold below which a float sum is set to zero.
CANCEL_TOL = 1e-13


def is_exact(x) -> bool:
    return isinstance(x, sp.Basic)


def _log_to_primes(expr):
    """Rewrite ``log(n)`` for positive rationals n as sums of ``log(p)``."""

    def is_rat_log(e):
        return isinstance(e, sp.log) and e.args[0].is_Rational and e.args[0] > 0

    def expand(e):
        r = e.args[0]
        out = sp.Integer(0)
        for p, k in sp.factorint(r.p).items():
            out += k * sp.log(p)
        for p, k in sp.factorint(r.q).items():
            out -= k * sp.log(p)
        return out

    if expr.has(sp.log):
        expr = expr.replace(is_rat_log, expand)
    return expr


@lru_cache(maxsize=65536)
def _canon_cached(x):
    y = sp.expand(sp.expand_log(x, force=True))
    y = _log_to_primes(y)
    y = sp.expand(y)
    if y.is_number and not y.is_Rational and y != 0 and not isinstance(y, sp.Float):
        # catch hidden zeros such as sqrt(6) - sqrt(2)*sqrt(3)
        try:
            v = complex(sp.N(y, 30))
            if abs(v) < 1e-25 and sp.simplify(y) == 0:
                return sp.Integer(0)
        except (TypeError, ValueError):
            pass
    return y


def canon(x):
    """Canonical form of an exact scalar; floats become ``complex``."""
    if is_exact(x):
        if x.is_Rational:
            return x
        if x.has(sp.Float):
            return complex(x)
        return _canon_cached(x)
    return complex(x)


def exact(x):
    """Convert a Python number to an exact sympy scalar (floats rationalized)."""
    if is_exact(x):
        return canon(x)
    if isinstance(x, bool):
        return sp.Integer(int(x))
    if isinstance(x, int):
        return sp.Integer(x)
    if isinstance(x, float):
        return sp.Rational(repr(x)) if x == x else sp.nan
    if isinstance(x, complex):
        return canon(exact(x.real) + sp.I * exact(x.imag))
    if isinstance(x, Number):
        return exact(complex(x))
    raise TypeError(f"cannot convert {x!r} to an exact scalar")


@lru_cache(maxsize=65536)
def _to_complex_cached(x):
    return complex(sp.N(x, 20))


def to_complex(x) -> complex:
    if is_exact(x):
        if x.is_Integer:
            return complex(int(x))
        return _to_complex_cached(x)
    return complex(x)


def coerce_pair(a, b):
    """Bring two scalars to a common kind."""
    if is_exact(a) and is_exact(b):
        return a, b
    return to_complex(a), to_complex(b)


def _int_exact(x):
    # Python ints are exact scalars; bools are not scalars at all.
    if isinstance(x, int) and not isinstance(x, bool):
        return sp.Integer(x)
    return x


def s_add(a, b):
    a, b = _int_exact(a), _int_exact(b)
    if is_exact(a) and is_exact(b):
        return canon(a + b)
    a, b = to_complex(a), to_complex(b)
    c = a + b
    if abs(c) <= CANCEL_TOL * (abs(a) + abs(b)):
        return 0j
    return c


def s_mul(a, b):
    a, b = _int_exact(a), _int_exact(b)
    if is_exact(a) and is_exact(b):
        return canon(a * b)
    return to_complex(a) * to_complex(b)


def s_neg(a):
    return -a if is_exact(a) else -complex(a)


def s_inv(a):
    if is_exact(a):
        return canon(1 / a)
    return 1.0 / complex(a)


def s_exp(a):
    if is_exact(a):
        return canon(sp.exp(a))
    import cmath

    return cmath.exp(complex(a))


def s_is_zero(a) -> bool:
    if is_exact(a):
        return a == 0
    return a == 0


def s_equal(a, b, tol: float = MATCH_TOL) -> bool:
    """Equality: exact structural, or float within relative tolerance."""
    if is_exact(a) and is_exact(b):
        return a == b
    a, b = to_complex(a), to_complex(b)
    return abs(a - b) <= tol * max(1.0, abs(a), abs(b))


def sort_key(a):
    c = to_complex(a)
    return (round(c.real, 12), round(c.imag, 12))


def s_str(a) -> str:
    """Print a scalar in the expression grammar."""
    if is_exact(a):
        s = sp.sstr(a, order="grlex")
        s = _sympy_to_grammar(s)
        return s
    c = complex(a)
    if c.imag == 0:
        return repr(c.real)
    if c.real == 0:
        return f"{c.imag!r}i"
    sign = "+" if c.imag >= 0 or c.imag != c.imag else "-"
    return f"{c.real!r}{sign}{abs(c.imag)!r}i"


def _sympy_to_grammar(s: str) -> str:
    import re

    s = s.replace("**", "^")
    s = re.sub(r"\bI\b", "i", s)
    s = re.sub(r"\bE\b", "e", s)
    return s


def is_atomic_str(s: str) -> bool:
    """True if ``s`` can be juxtaposed with '*' without parentheses."""
    import re

    return re.fullmatch(r"[0-9.]+(e[+-]?[0-9]+)?|[a-z]+|[a-z]+\([^()]*\)", s) is not None
