"""Algebra in the ring of exponential sums: support, simplicity, Ritt factorization,
exact division, common factors and d-th roots.

Everything goes through a Laurent embedding.  The exponent coefficients of
each degree ``d`` span a finitely generated subgroup of a Q-vector space; a
lattice basis ``b_{d,1..r}`` is chosen and ``e^{Q(z)}`` becomes the Laurent
monomial ``prod x_{d,k}^{n_{d,k}}`` with ``x_{d,k} = e^{b_{d,k} z^d}``.
Multipliers stay polynomials in ``z``.  Factoring, cancellation and gcds of
the resulting Laurent polynomials are delegated to sympy over Q(i) (or the
extension generated by the coefficients).

Rational dependence of exact frequencies is read off their canonical sympy
form (distinct monomials such as ``1, i, pi, log 2, i log 3`` are treated as
Q-independent).  Float frequencies use an integer-relation search (PSLQ) with
a coefficient bound, and results carry a ``heuristic`` flag.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce

import mpmath
import numpy as np
import sympy as sp

from . import scalars as S
from .errors import BasisMismatch, FactorizationIncomplete, NonConstantMultipliers, RootFindingFailure, Unsupported
from .expr import ExpPoly, ExpTerm, Polynomial, RationalExpPoly, as_exppoly

_MIX = 0.5772156649015329  # irrational mixing weight for Re + c Im in relation search


# ---------------------------------------------------------------------------
# rational dependence
# ---------------------------------------------------------------------------


def _qvec(w) -> dict:
    """Coordinates of an exact scalar over its canonical monomials (rational coefficients)."""
    w = S.canon(w)
    out: dict = {}
    for term in sp.Add.make_args(sp.expand(w)):
        c, m = term.as_coeff_Mul()
        if not c.is_Rational:
            c, m = sp.Integer(1), term
        out[m] = out.get(m, 0) + c
    return {k: v for k, v in out.items() if v != 0}


def _float_relation(basis: list, w: complex, maxcoeff: int = 10**6, tol: float = 1e-9):
    """Rational coordinates of ``w`` over float ``basis`` via PSLQ, or None."""
    if not basis:
        return None
    xs = [b.real + _MIX * b.imag for b in basis] + [w.real + _MIX * w.imag]
    if any(abs(x) < 1e-300 for x in xs):
        return None
    with mpmath.workdps(30):
        rel = mpmath.pslq([mpmath.mpf(x) for x in xs], tol=tol, maxcoeff=maxcoeff, maxsteps=20000)
    if rel is None or rel[-1] == 0:
        return None
    cw = rel[-1]
    coords = [Fraction(-c, cw) for c in rel[:-1]]
    approx = sum(float(c) * b for c, b in zip(coords, basis))
    scale = max(1.0, abs(w), *[abs(b) for b in basis])
    if abs(approx.real - w.real) > tol * scale or abs(approx.imag - w.imag) > tol * scale:
        return None
    return coords, max(abs(c) for c in rel)


def _qbasis(values, exact: bool):
    """Greedy Q-basis of nonzero ``values`` and rational coordinates of every value.

    Returns ``(basis, coords, heuristic)`` with ``coords[i]`` a list of Fractions.
    """
    basis: list = []
    heuristic = False
    coords: list = []
    if exact:
        vecs = [_qvec(v) for v in values]
        monos = sorted({m for v in vecs for m in v}, key=sp.default_sort_key)
        M = [[sp.Rational(v.get(m, 0)) for m in monos] for v in vecs]
        bidx: list[int] = []
        for i, row in enumerate(M):
            if not any(row):
                continue
            cand = sp.Matrix([M[j] for j in bidx] + [row])
            if cand.rank() > len(bidx):
                bidx.append(i)
        basis = [values[j] for j in bidx]
        if bidx:
            B = sp.Matrix([M[j] for j in bidx]).T  # monos x r
            for row in M:
                sol = B.solve_least_squares(sp.Matrix(row)) if len(bidx) < len(monos) else B.solve(sp.Matrix(row))
                coords.append([Fraction(int(sp.fraction(c)[0]), int(sp.fraction(c)[1])) for c in sol])
        else:
            coords = [[] for _ in values]
        return basis, coords, heuristic
    vals = [complex(v) for v in values]
    for v in vals:
        if abs(v) < 1e-300:
            continue
        rel = _float_relation(basis, v)
        if rel is None:
            basis.append(v)
        elif rel[1] > 1000:
            heuristic = True
    for v in vals:
        if abs(v) < 1e-300:
            coords.append([Fraction(0)] * len(basis))
            continue
        idx = [k for k, b in enumerate(basis) if b == v]
        if idx:
            c = [Fraction(0)] * len(basis)
            c[idx[0]] = Fraction(1)
            coords.append(c)
            continue
        rel = _float_relation(basis, v)
        if rel is None:
            raise BasisMismatch(f"frequency {v} not dependent on the basis")
        coords.append(rel[0])
    return basis, coords, heuristic


def _solve_coords(basis, w, exact: bool):
    """Rational coordinates (Fractions) of ``w`` over a Q-independent ``basis``, or None."""
    if not basis:
        return None
    if exact:
        vecs = [_qvec(b) for b in basis]
        vw = _qvec(w)
        monos = sorted({m for v in vecs + [vw] for m in v}, key=sp.default_sort_key)
        B = sp.Matrix([[v.get(m, 0) for v in vecs] for m in monos])
        rhs = sp.Matrix([vw.get(m, 0) for m in monos])
        try:
            sol, params = B.gauss_jordan_solve(rhs)
        except ValueError:
            return None
        if params.shape[0]:
            return None
        return [Fraction(int(sp.fraction(c)[0]), int(sp.fraction(c)[1])) for c in sol]
    rel = _float_relation([complex(S.to_complex(b)) for b in basis], complex(S.to_complex(w)))
    return None if rel is None else rel[0]


def _row_echelon_int(rows, d):
    """Integer row echelon basis of the lattice spanned by ``rows`` (lists of ints)."""
    M = [list(r) for r in rows if any(r)]
    out = []
    for col in range(d):
        while True:
            nz = [r for r in M if r[col] != 0]
            if len(nz) <= 1:
                break
            nz.sort(key=lambda r: abs(r[col]))
            p = nz[0]
            for r in nz[1:]:
                q = r[col] // p[col]
                for k in range(d):
                    r[k] -= q * p[k]
            M = [r for r in M if any(r)]
        nz = [r for r in M if r[col] != 0]
        if nz:
            p = nz[0]
            out.append(p)
            M = [r for r in M if r is not p]
    return out


def _lcm(a, b):
    return a * b // math.gcd(a, b)


def _lattice(values, exact):
    """Lattice basis for the Z-module generated by ``values``.

    Returns ``(basis, int_coords, heuristic)``: every value equals
    ``sum int_coords[i][k] * basis[k]`` exactly.
    """
    qb, qc, heuristic = _qbasis(values, exact)
    r = len(qb)
    if r == 0:
        return [], [[] for _ in values], heuristic
    D = reduce(_lcm, [c.denominator for row in qc for c in row], 1)
    rows = [[int(c * D) for c in row] for row in qc]
    V = _row_echelon_int([list(x) for x in rows], r)
    # new basis b'_k = (1/D) sum_i V[k][i] qb[i]; sign normalized
    newb = []
    for k, v in enumerate(V):
        if exact:
            b = S.canon(sum(sp.Rational(v[i], D) * qb[i] for i in range(r)))
            bc = S.to_complex(b)
        else:
            b = sum(v[i] / D * qb[i] for i in range(r))
            bc = b
        if bc.real < -1e-15 * abs(bc) or (abs(bc.real) <= 1e-15 * abs(bc) and bc.imag < 0):
            V[k] = [-x for x in v]
            b = S.canon(-b) if exact else -b
        newb.append(b)
    Vm = sp.Matrix(V)
    out = []
    for row in rows:
        sol = Vm.T.solve(sp.Matrix(row))
        ints = []
        for c in sol:
            if not c.is_integer:
                raise AssertionError("lattice coordinates must be integral")
            ints.append(int(c))
        out.append(ints)
    return newb, out, heuristic


# ---------------------------------------------------------------------------
# support in the class of exponential sums with constant multipliers
# ---------------------------------------------------------------------------


def _check_class_E(f: ExpPoly):
    f = as_exppoly(f)
    if f.is_zero:
        raise ValueError("f must be nonzero")
    if f.order > 1:
        raise NonConstantMultipliers("f must have order <= 1")
    if not f.has_constant_multipliers():
        raise NonConstantMultipliers("f must have constant multipliers")
    return f


def _freq(t: ExpTerm):
    return t.exponent.coeff(1) if t.exponent.degree >= 1 else (sp.Integer(0) if t.multiplier.exact else 0j)


@dataclass
class SupportBasis:
    """Q-basis of the frequencies with integer coordinates.

    ``frequency = (1 / scale_denominator) * sum(coords[k] * basis[k])``.
    """

    basis: tuple
    coords: dict
    scale_denominator: int = 1
    heuristic: bool = False

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def coords_of(self, w):
        for k, v in self.coords.items():
            if S.s_equal(k, w):
                return v
        raise BasisMismatch(f"frequency {w} not in this support basis")

    def to_dict(self):
        return {
            "basis": [[complex(S.to_complex(b)).real, complex(S.to_complex(b)).imag] for b in self.basis],
            "basis_text": [S.s_str(b) for b in self.basis],
            "scale_denominator": self.scale_denominator,
            "heuristic": self.heuristic,
            "coords": [{"frequency": S.s_str(k), "coords": list(v)} for k, v in self.coords.items()],
        }


def support(f: ExpPoly) -> SupportBasis:
    """Support (Q-span of the frequencies) of ``f`` in the class of exponential sums."""
    f = _check_class_E(f)
    freqs = [_freq(t) for t in f.terms]
    basis, coords, heur = _lattice(freqs, f.exact)
    if not f.exact or not basis:
        return SupportBasis(tuple(basis), {w: tuple(c) for w, c in zip(freqs, coords)}, 1, heur)
    # canonical generators: strip the rational content (2 pi -> pi, 4 i -> i, 2 log 2 -> log 2)
    # and carry the denominators in scale_denominator
    contents, prims = [], []
    for b in basis:
        c, p = sp.sympify(b).as_content_primitive()
        contents.append(sp.Rational(c))
        prims.append(S.canon(p))
    D = reduce(_lcm, [c.q for c in contents], 1)
    scaled = {w: tuple(int(k * c * D) for k, c in zip(row, contents)) for w, row in zip(freqs, coords)}
    return SupportBasis(tuple(prims), scaled, D, heur)


def is_simple(f: ExpPoly) -> bool:
    """True when the support has dimension 1."""
    return support(f).dimension == 1


# ---------------------------------------------------------------------------
# Laurent embedding
# ---------------------------------------------------------------------------


def _rationalize(c):
    """Exact Gaussian rational approximating a float scalar (denominators <= 1e8)."""
    if S.is_exact(c):
        return c
    c = complex(c)
    re = Fraction(c.real).limit_denominator(10**8)
    im = Fraction(c.imag).limit_denominator(10**8)
    return sp.Rational(re.numerator, re.denominator) + sp.I * sp.Rational(im.numerator, im.denominator)


class Embedding:
    """Laurent embedding of a family of exponential polynomials.

    Variables ``x[(d, k)]`` stand for ``exp(basis[d][k] * z^d)``; ``zsym`` is ``z``.
    """

    def __init__(self, polys, exact: bool | None = None):
        polys = [as_exppoly(p) for p in polys]
        self.exact = all(p.exact for p in polys) if exact is None else exact
        self.q = max([p.order for p in polys] + [0])
        self.zsym = sp.Symbol("z")
        self.basis: dict = {}
        self.symbols: dict = {}
        self.heuristic = False
        self._coords: dict = {}
        for d in range(1, self.q + 1):
            vals = []
            for p in polys:
                for t in p.terms:
                    c = t.exponent.coeff(d)
                    if not S.s_is_zero(c):
                        vals.append(c if self.exact else complex(S.to_complex(c)))
            if not vals:
                self.basis[d] = []
                continue
            b, co, heur = _lattice(vals, self.exact)
            self.heuristic |= heur
            self.basis[d] = b
            for v, c in zip(vals, co):
                self._coords[(d, v)] = tuple(c)
            for k in range(len(b)):
                self.symbols[(d, k)] = sp.Symbol(f"x{d}_{k}")
        self.gens = [self.symbols[key] for key in sorted(self.symbols)]

    def coords(self, d, c):
        key = (d, c if self.exact else complex(S.to_complex(c)))
        if key in self._coords:
            return self._coords[key]
        for (dd, v), co in self._coords.items():
            if dd == d and S.s_equal(v, key[1]):
                return co
        co = _solve_coords(self.basis.get(d, []), key[1], self.exact)
        if co is None:
            raise BasisMismatch(f"exponent coefficient {c} of z^{d} not in the Q-span of the lattice")
        co = tuple(int(x) if x.denominator == 1 else sp.Rational(x.numerator, x.denominator) for x in co)
        self._coords[key] = co
        return co

    def monomial(self, expo: Polynomial):
        m = sp.Integer(1)
        for d in range(1, expo.degree + 1):
            c = expo.coeff(d)
            if S.s_is_zero(c):
                continue
            for k, n in enumerate(self.coords(d, c)):
                if n:
                    m *= self.symbols[(d, k)] ** n
        return m

    def _mult_expr(self, p: Polynomial):
        z = self.zsym
        return sum((_rationalize(c) if not self.exact else c) * z**k for k, c in enumerate(p.coeffs))

    def to_sympy(self, f: ExpPoly):
        f = as_exppoly(f)
        return sp.Add(*[self._mult_expr(t.multiplier) * self.monomial(t.exponent) for t in f.terms])

    def from_sympy(self, expr, exact: bool | None = None) -> ExpPoly:
        """Inverse map; rational exponents of the ``x`` variables are allowed."""
        exact = self.exact if exact is None else exact
        expr = sp.expand(expr)
        terms = []
        syms = {s: key for key, s in self.symbols.items()}
        z = self.zsym
        for term in sp.Add.make_args(expr):
            if term == 0:
                continue
            pw = term.as_powers_dict()
            coeff = term
            exps: dict = {}
            zdeg = 0
            for base, e in pw.items():
                if base in syms:
                    exps[syms[base]] = e
                    coeff = coeff / base**e
                elif base == z:
                    zdeg = int(e)
                    coeff = coeff / z**e
            coeff = sp.simplify(coeff) if coeff.free_symbols else coeff
            if coeff.free_symbols & ({z} | set(syms)):
                raise Unsupported(f"term {term} is not a Laurent monomial")
            expo = [sp.Integer(0)] * (self.q + 1)
            for (d, k), e in exps.items():
                expo[d] = expo[d] + sp.Rational(e) * self.basis[d][k]
            if exact:
                mult = Polynomial.monomial(zdeg, S.canon(coeff))
                E = Polynomial(tuple(S.canon(x) for x in expo))
            else:
                mult = Polynomial.monomial(zdeg, complex(coeff))
                E = Polynomial(tuple(complex(S.to_complex(x)) if not isinstance(x, complex) else x for x in expo))
            terms.append(ExpTerm(mult, E))
        return ExpPoly(terms)


def _laurent_parts(expr, gens):
    """Split a Laurent expression into (monomial, polynomial) with ``expr = monomial * poly``."""
    expr = sp.expand(expr)
    if expr == 0:
        return sp.Integer(1), sp.Integer(0)
    terms = sp.Add.make_args(expr)
    mins = {}
    for g in gens:
        mins[g] = min(sp.Rational(t.as_powers_dict().get(g, 0)) for t in terms)
    mono = sp.Mul(*[g**mins[g] for g in gens])
    return mono, sp.expand(expr / mono)


def _factor_list(poly, gens):
    """sympy factor_list over Q(i) when possible, else over the coefficient domain."""
    errors = []
    for opts in ({"gaussian": True}, {}):
        try:
            return sp.factor_list(poly, *gens, **opts)
        except Exception as exc:  # noqa: BLE001 - sympy raises assorted domain errors
            errors.append(exc)
    raise FactorizationIncomplete(f"polynomial factorization failed: {errors[-1]}")


# ---------------------------------------------------------------------------
# LaurentPoly (class E)
# ---------------------------------------------------------------------------


@dataclass
class LaurentPoly:
    """Laurent polynomial with polynomial-in-z coefficients.

    ``terms`` maps integer exponent tuples to :class:`Polynomial` multipliers; the
    variables are ``x_k = exp(basis[k] * z)``.
    """

    basis: tuple
    terms: dict

    @property
    def nvars(self) -> int:
        return len(self.basis)

    def evaluate(self, z: complex) -> complex:
        xs = [np.exp(complex(S.to_complex(b)) * z) for b in self.basis]
        total = 0j
        for e, p in self.terms.items():
            m = complex(p(z))
            for x, k in zip(xs, e):
                m *= x**k
            total += m
        return total

    def to_exppoly(self) -> ExpPoly:
        terms = []
        for e, p in self.terms.items():
            w = sum((k * b for k, b in zip(e, self.basis)), sp.Integer(0) if p.exact else 0j)
            w = S.canon(w) if S.is_exact(w) else complex(w)
            terms.append(ExpTerm(p, Polynomial((sp.Integer(0) if S.is_exact(w) else 0j, w))))
        return ExpPoly(terms)

    def to_sympy(self, symbols=None, z=None):
        xs = symbols or sp.symbols(f"x0:{self.nvars}")
        z = z or sp.Symbol("z")
        return sp.Add(*[sum(c * z**j for j, c in enumerate(p.coeffs)) * sp.Mul(*[x**k for x, k in zip(xs, e)])
                        for e, p in self.terms.items()])


def to_laurent(f: ExpPoly, basis: SupportBasis) -> LaurentPoly:
    """Write an order <= 1 ``f`` as a Laurent polynomial in ``x_k = e^{b_k z / D}``."""
    f = as_exppoly(f)
    if f.order > 1:
        raise BasisMismatch("to_laurent needs order <= 1")
    D = basis.scale_denominator
    bas = tuple(S.canon(b / D) if S.is_exact(b) else b / D for b in basis.basis)
    out: dict = {}
    for t in f.terms:
        w = _freq(t)
        if S.s_is_zero(w):
            e = (0,) * len(bas)
        else:
            try:
                e = tuple(int(c) for c in basis.coords_of(w))
            except BasisMismatch:
                vals = list(basis.basis)
                if S.is_exact(w) and all(S.is_exact(b) for b in vals):
                    _, co, _ = _qbasis(vals + [w], True)
                    if len(_qbasis(vals + [w], True)[0]) > len(vals):
                        raise
                    c = co[-1]
                else:
                    rel = _float_relation([complex(S.to_complex(b)) for b in vals], complex(S.to_complex(w)))
                    if rel is None:
                        raise
                    c = rel[0]
                cD = [x * D for x in c]
                if any(x.denominator != 1 for x in cD):
                    raise BasisMismatch(f"frequency {w} needs a finer lattice")
                e = tuple(int(x) for x in cD)
        out[e] = out[e] + t.multiplier if e in out else t.multiplier
    return LaurentPoly(bas, {e: p for e, p in out.items() if not p.is_zero})


# ---------------------------------------------------------------------------
# simple factorization
# ---------------------------------------------------------------------------


def _univariate_parts(f: ExpPoly):
    """For simple f: (w, kmin, coefficient list of P(u) low->high)."""
    sb = support(f)
    if sb.dimension != 1:
        raise ValueError("f is not simple")
    w = S.canon(sb.basis[0] / sb.scale_denominator) if f.exact else sb.basis[0]
    ks = {}
    for t in f.terms:
        k = sb.coords_of(_freq(t))[0] if not S.s_is_zero(_freq(t)) else 0
        ks[k] = t.multiplier.coeff(0)
    kmin, kmax = min(ks), max(ks)
    zero = sp.Integer(0) if f.exact else 0j
    coeffs = [ks.get(k, zero) for k in range(kmin, kmax + 1)]
    return w, kmin, coeffs


def factor_simple(f: ExpPoly):
    """``f = unit * prod (1 - beta_j e^{mu_j z})`` for simple ``f``.

    Returns ``(unit, [(beta_j, mu_j), ...])`` with repeated pairs for repeated
    roots.  Exact input uses sympy's radical roots when they are complete and
    falls back to numerical roots otherwise.
    """
    f = _check_class_E(f)
    w, kmin, coeffs = _univariate_parts(f)
    u = sp.Symbol("u")
    unit = ExpPoly([ExpTerm(Polynomial((coeffs[0],)), Polynomial((sp.Integer(0) if f.exact else 0j, S.canon(kmin * w) if f.exact else kmin * w)))])
    roots: list = []
    deg = len(coeffs) - 1
    if f.exact:
        P = sp.Poly(sum(c * u**k for k, c in enumerate(coeffs)), u)
        rd = sp.roots(P)
        if sum(rd.values()) == deg:
            for r, m in rd.items():
                roots += [(S.canon(sp.radsimp(1 / r)), w)] * m
            return unit, roots
    c = np.array([complex(S.to_complex(x)) for x in coeffs])
    try:
        rts = np.roots(c[::-1])
    except np.linalg.LinAlgError as exc:
        raise RootFindingFailure(str(exc)) from exc
    if len(rts) != deg or not np.all(np.isfinite(rts)):
        raise RootFindingFailure("numerical root finder failed")
    wc = complex(S.to_complex(w))
    return unit.to_float(), [(complex(1 / r), wc) for r in rts]


def simple_product(unit: ExpPoly, roots) -> ExpPoly:
    """Multiply back ``unit * prod (1 - beta e^{mu z})``."""
    out = unit
    for beta, mu in roots:
        zero = sp.Integer(0) if S.is_exact(mu) else 0j
        out = out * (ExpPoly([ExpTerm(Polynomial((sp.Integer(1) if S.is_exact(beta) else 1 + 0j,)), Polynomial(()))])
                     - ExpPoly([ExpTerm(Polynomial((beta,)), Polynomial((zero, mu)))]))
    return out


# ---------------------------------------------------------------------------
# Ritt factorization
# ---------------------------------------------------------------------------


@dataclass
class Factorization:
    """``f = unit * prod simple parts * prod irreducible parts``.

    ``simple_parts`` holds ``(w, P)`` with ``P`` a :class:`Polynomial` in
    ``u = e^{w z}`` (``P(0) = 1``); ``simple_factors`` lists the irreducible
    (over the coefficient field) factors of each simple part as
    ``(w, P_i, multiplicity)``.
    """

    unit: ExpPoly
    simple_parts: list
    irreducible_parts: list
    certified: bool
    simple_factors: list = field(default_factory=list)
    irreducible_multiplicities: list = field(default_factory=list)

    def expand(self) -> ExpPoly:
        out = self.unit
        for w, P in self.simple_parts:
            out = out * poly_in_exp(P, w)
        for I, m in zip(self.irreducible_parts, self.irreducible_multiplicities or [1] * len(self.irreducible_parts)):
            out = out * I**m
        return out

    def to_dict(self):
        return {
            "unit": str(self.unit),
            "simple": [{"w": S.s_str(w), "poly_in_u": [S.s_str(c) for c in P.coeffs],
                        "expanded": str(poly_in_exp(P, w))} for w, P in self.simple_parts],
            "irreducible": [{"factor": str(I), "multiplicity": m}
                            for I, m in zip(self.irreducible_parts, self.irreducible_multiplicities)],
            "certified": self.certified,
        }


def poly_in_exp(P: Polynomial, w) -> ExpPoly:
    """``P(e^{w z})`` as an exponential polynomial."""
    terms = []
    for k, c in enumerate(P.coeffs):
        if S.s_is_zero(c):
            continue
        wk = S.canon(k * w) if S.is_exact(w) else k * complex(w)
        terms.append(ExpTerm(Polynomial((c,)), Polynomial((sp.Integer(0) if S.is_exact(wk) else 0j, wk))))
    return ExpPoly(terms)


def _direction(vecs):
    """Primitive direction if all vectors are collinear (1-dim support), else None."""
    base = vecs[0]
    diffs = [tuple(a - b for a, b in zip(v, base)) for v in vecs[1:]]
    diffs = [d for d in diffs if any(d)]
    if not diffs:
        return None
    g = reduce(math.gcd, [abs(x) for x in diffs[0]])
    a = tuple(x // g for x in diffs[0])
    for d in diffs[1:]:
        # d must be a multiple of a
        ratios = {Fraction(x, y) for x, y in zip(d, a) if y != 0}
        if len(ratios) != 1 or any(x != 0 for x, y in zip(d, a) if y == 0):
            return None
    return a


def _unit_normalize(F: ExpPoly):
    """Split ``F = c e^{Q} * G`` with the first canonical term of ``G`` equal to 1."""
    t0 = F.terms[0]
    c = t0.multiplier.coeff(0)
    if not t0.multiplier.is_constant():
        return ExpPoly([ExpTerm(Polynomial((sp.Integer(1) if F.exact else 1 + 0j,)), Polynomial(()))]), F
    unit = ExpPoly([ExpTerm(Polynomial((c,)), t0.exponent)])
    return unit, F * unit.inverse_unit()


def ritt_factorization(f: ExpPoly) -> Factorization:
    """Ritt factorization of ``f`` (constant multipliers, order <= 1).

    Simple factors with the same one-dimensional support are merged into one
    simple part; every remaining factor is an irreducible part.  The result
    is certified by multiplying back.
    """
    f = _check_class_E(f)
    exact = f.exact
    emb = Embedding([f], exact=exact)
    gens = emb.gens
    expr = emb.to_sympy(f)
    mono, P = _laurent_parts(expr, gens)
    if not gens:
        return Factorization(f, [], [], True)
    c0, flist = _factor_list(P, gens)
    unit_expr = c0 * mono
    by_dir: dict = {}
    irreducible: list = []
    irr_mult: list = []
    for F, m in flist:
        F = sp.expand(F)
        # group by exponent vector; a Gaussian coefficient is a sum of two Add args
        pt = sp.Poly(F, *gens).terms()
        vecs = [tuple(int(e) for e in v) for v, _ in pt]
        terms = [c * sp.Mul(*[g**e for g, e in zip(gens, v)]) for v, c in pt]
        if len(terms) == 1:
            unit_expr *= F**m
            continue
        a = _direction(vecs)
        if a is not None:
            # normalize direction sign through the frequency it represents
            w = emb.from_sympy(sp.Mul(*[g**e for g, e in zip(gens, a)]), exact).terms[0].exponent.coeff(1)
            wc = complex(S.to_complex(w))
            if wc.real < -1e-15 * abs(wc) or (abs(wc.real) <= 1e-15 * abs(wc) and wc.imag < 0):
                a = tuple(-x for x in a)
                w = S.canon(-w) if exact else -w
            # express F = monomial * G(u), u = x^a
            ref = min(vecs, key=lambda v: sum(x * y for x, y in zip(v, a)))
            coeffs: dict = {}
            na = sum(x * x for x in a)
            for t, v in zip(terms, vecs):
                k = sum((x - y) * z for x, y, z in zip(v, ref, a)) // na
                coeffs[k] = t / sp.Mul(*[g**e for g, e in zip(gens, v)])
            c_low = coeffs[0]
            unit_expr *= (c_low * sp.Mul(*[g**e for g, e in zip(gens, ref)])) ** m
            poly = [S.canon(sp.nsimplify(coeffs.get(k, 0) / c_low)) if exact else complex(coeffs.get(k, 0) / c_low)
                    for k in range(max(coeffs) + 1)]
            key = None
            for kk in by_dir:
                if S.s_equal(kk, w):
                    key = kk
            key = w if key is None else key
            by_dir.setdefault(key, []).append((Polynomial(tuple(poly)), m))
        else:
            G = emb.from_sympy(F, exact)
            u, Gn = _unit_normalize(G)
            unit_expr *= emb.to_sympy(u) ** m
            irreducible.append(Gn)
            irr_mult.append(m)
    simple_parts = []
    simple_factors = []
    for w, fl in by_dir.items():
        P = Polynomial((sp.Integer(1) if exact else 1 + 0j,))
        for p, m in fl:
            P = P * p**m
            simple_factors.append((w, p, m))
        simple_parts.append((w, P))
    unit = emb.from_sympy(unit_expr, exact)
    fac = Factorization(unit, simple_parts, irreducible, False, simple_factors, irr_mult)
    back = fac.expand()
    fac.certified = back.equals(f) if exact else back.equals(f, 1e-10)
    if not fac.certified:
        raise FactorizationIncomplete("multiply-back check failed", partial=fac)
    return fac


# ---------------------------------------------------------------------------
# division, common factors, roots
# ---------------------------------------------------------------------------




def divide(f: ExpPoly, g: ExpPoly, allow_rational: bool = False):
    """Exact quotient ``f / g`` as an exponential polynomial, or None.

    With ``allow_rational=True`` a quotient whose remaining denominator only
    involves ``z`` and exponentials of order below the top order (so the
    coefficients of the top-order exponentials are rational in lower-order
    terms) is returned as a :class:`RationalExpPoly`.
    """
    f, g = as_exppoly(f), as_exppoly(g)
    if g.is_zero:
        raise ZeroDivisionError("division by the zero exponential polynomial")
    if f.is_zero:
        return f
    exact = f.exact and g.exact
    emb = Embedding([f, g], exact=exact)
    F, G = emb.to_sympy(f), emb.to_sympy(g)
    Qx = sp.cancel(sp.together(F / G))
    num, den = sp.fraction(Qx)
    dmono, drest = _laurent_parts(den, emb.gens)
    num = sp.expand(num / dmono)
    if not drest.free_symbols:
        q = emb.from_sympy(sp.expand(num / drest), exact)
        ok = (q * g).equals(f) if exact else (q * g).equals(f, 1e-10)
        return q if ok else None
    if not allow_rational:
        return None
    top = {s for (d, _), s in emb.symbols.items() if d == emb.q}
    if drest.free_symbols & top:
        return None
    return RationalExpPoly(emb.from_sympy(num, exact), emb.from_sympy(drest, exact))


def common_factor(f: ExpPoly, g: ExpPoly):
    """Greatest common factor (unit-normalized) of ``f`` and ``g``, or None if it is a unit."""
    f, g = as_exppoly(f), as_exppoly(g)
    exact = f.exact and g.exact
    emb = Embedding([f, g], exact=exact)
    _, F = _laurent_parts(emb.to_sympy(f), emb.gens)
    _, G = _laurent_parts(emb.to_sympy(g), emb.gens)
    gens = emb.gens + [emb.zsym]
    try:
        H = sp.gcd(F, G, *gens, gaussian=True)
    except Exception:  # noqa: BLE001
        H = sp.gcd(F, G, *gens)
    H = sp.expand(H)
    if len(sp.Add.make_args(H)) <= 1:
        return None
    h = emb.from_sympy(H, exact)
    _, hn = _unit_normalize(h)
    return hn


def dth_roots(f: ExpPoly, d: int) -> list:
    """All ``d`` exponential-polynomial roots ``g`` with ``g^d = f`` (empty when none exist).

    ``f`` is factored in its Laurent embedding (variables for every exponent
    degree plus ``z``); a root exists exactly when every irreducible factor
    occurs with multiplicity divisible by ``d``.
    """
    if d < 2:
        raise ValueError("d must be >= 2")
    f = as_exppoly(f)
    if f.is_zero:
        raise ValueError("f must be nonzero")
    exact = f.exact
    emb = Embedding([f], exact=exact)
    gens = emb.gens + [emb.zsym]
    mono, P = _laurent_parts(emb.to_sympy(f), emb.gens)
    c0, flist = _factor_list(P, gens)
    if any(m % d for _, m in flist):
        return []
    root_expr = sp.Mul(*[F ** (m // d) for F, m in flist])
    c_root = S.canon(sp.Pow(c0, sp.Rational(1, d))) if exact else complex(c0) ** (1.0 / d)
    g = emb.from_sympy(sp.expand(root_expr), exact)
    # the monomial is a unit c e^{Q}; its root c^{1/d} e^{Q/d} may need a finer lattice
    (t,) = emb.from_sympy(mono, exact).terms
    inv_d = sp.Rational(1, d) if exact else 1.0 / d
    c_m = t.multiplier.coeff(0)
    c_m = S.canon(sp.Pow(c_m, inv_d)) if exact else complex(c_m) ** inv_d
    g = g * as_exppoly(c_root) * ExpPoly([ExpTerm(Polynomial((c_m,)), t.exponent.scale(inv_d))])
    roots = []
    for k in range(d):
        zeta = S.canon(sp.exp(2 * sp.pi * sp.I * k / d)) if exact else complex(np.exp(2j * np.pi * k / d))
        r = g * as_exppoly(zeta) if k else g
        ok = (r**d).equals(f) if exact else (r**d).equals(f, 1e-10)
        if not ok:
            raise FactorizationIncomplete("d-th root failed the multiply-back check", partial=r)
        roots.append(r)
    return roots


def dth_root(f: ExpPoly, d: int):
    """One ``d``-th root of ``f`` (the one with positive leading constant when possible), or None."""
    rs = dth_roots(f, d)
    if not rs:
        return None

    def key(r):
        c = complex(S.to_complex(r.terms[0].multiplier.leading()))
        return (-(abs(c.imag) < 1e-12 and c.real > 0), -c.real, -c.imag)

    return sorted(rs, key=key)[0]
