import math
from collections import Counter

import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from exppoly import Polynomial, RationalExpPoly, parse
from exppoly.errors import NonConstantMultipliers
from exppoly.factor import (
    common_factor,
    divide,
    dth_root,
    dth_roots,
    factor_simple,
    is_simple,
    poly_in_exp,
    ritt_factorization,
    simple_product,
    support,
    to_laurent,
)
from strategies import exp_sums

I = sp.I


def no_square_root_by_search(f, max_k=2):
    """Independent oracle: solve g^2 = f for g = sum_{|k|<=max_k} c_k e^{k z/2} symbolically."""
    z = sp.Symbol("z")
    cs = sp.symbols(f"c0:{2 * max_k + 1}")
    u = sp.Symbol("u")  # u = e^{z/2}
    g = sum(c * u ** (k - max_k) for k, c in enumerate(cs))
    target = f.sympy(z).subs(sp.exp(z), u**2).rewrite(sp.exp)
    diff = sp.expand((g**2 - target) * u ** (2 * max_k))
    eqs = sp.Poly(diff, u).coeffs()
    return sp.solve(eqs, cs, dict=True) == []


class TestSupport:
    def test_two_dimensional(self):
        assert support(parse("(1-exp(z))*(1-exp(i*z))")).dimension == 2

    def test_sin(self):
        assert support(parse("sin(z)")).dimension == 1

    def test_pi_multiples(self):
        b = support(parse("1 + exp(pi*z) + exp(2*pi*z)"))
        assert b.dimension == 1
        assert sp.simplify(b.basis[0] - sp.pi) == 0 or sp.simplify(b.basis[0] + sp.pi) == 0
        coords = sorted(abs(b.coords_of(w)[0]) for w in (sp.pi, 2 * sp.pi))
        assert coords == [1, 2]

    def test_log_primes_independent(self):
        assert support(parse("1 + 2^(-z) + 3^(-z) + 4^(-z)")).dimension == 2

    @pytest.mark.parametrize(
        "text, simple",
        [("cos(z)", True), ("(1-exp(z))*(1-exp(i*z))", False), ("exp(4*i*z) + exp(6*i*z)", True),
         ("1 + exp(z) + exp(sqrt(2)*z)", False)],
    )
    def test_is_simple(self, text, simple):
        assert is_simple(parse(text)) is simple

    def test_rejects_polynomial_multipliers(self):
        with pytest.raises(NonConstantMultipliers):
            support(parse("z*exp(z) + 1"))


class TestFactorSimple:
    def test_sin(self):
        unit, roots = factor_simple(parse("sin(z)"))
        # sin z = (-i/2) e^{-iz} (e^{2iz} - 1) = (i/2) e^{-iz} (1 - e^{2iz})
        assert simple_product(unit, roots) == parse("sin(z)")
        assert sorted(sp.simplify(b) for b, _ in roots) == [-1, 1]
        assert all(w == I for _, w in roots)

    def test_quadratic_lattice(self):
        f = parse("6 - 5*exp(z) + exp(2*z)")
        unit, roots = factor_simple(f)
        assert unit == parse("6")
        assert sorted(b for b, _ in roots) == [sp.Rational(1, 3), sp.Rational(1, 2)]
        assert simple_product(unit, roots) == parse("(exp(z)-2)*(exp(z)-3)")

    def test_difference_of_squares(self):
        unit, roots = factor_simple(parse("1 - exp(2*z)"))
        assert sorted(b for b, _ in roots) == [-1, 1]

    def test_numeric_fallback(self):
        f = parse("1 + exp(z) + exp(2*z) + exp(3*z) + exp(4*z) + exp(5*z) + 3*exp(6*z)")
        unit, roots = factor_simple(f)
        assert simple_product(unit, roots).equals(f.to_float(), 1e-9)


class TestRitt:
    def test_two_simple_parts(self):
        fac = ritt_factorization(parse("(1-exp(z))*(1-exp(i*z))"))
        assert len(fac.simple_parts) == 2 and not fac.irreducible_parts
        ws = {w for w, _ in fac.simple_parts}
        assert ws == {sp.Integer(1), I}
        assert fac.certified

    def test_irreducible_bivariate(self):
        fac = ritt_factorization(parse("1 + 2^(-z) + 3^(-z) + 4^(-z)"))
        assert not fac.simple_parts and len(fac.irreducible_parts) == 1

    def test_recovers_product(self):
        f = parse("(1-2*exp(z))*(1-3*exp(2*z))")
        fac = ritt_factorization(f)
        assert fac.expand() == f
        (w, P), = fac.simple_parts
        u = sp.Symbol("u")
        got = sp.factor_list(sum(c * u**k for k, c in enumerate(P.coeffs)))[1]
        assert sorted(sp.degree(g, u) for g, _ in got) == [1, 2]

    def test_unit_of_quadratic_lattice(self):
        fac = ritt_factorization(parse("6 - 5*exp(z) + exp(2*z)"))
        assert fac.unit == parse("6")

    def test_mixed(self):
        f = parse("(1 - exp(z))^2 * (1 + 2^(-z) + 3^(-z)) * exp(3*z)")
        fac = ritt_factorization(f)
        assert fac.expand() == f
        assert fac.irreducible_multiplicities == [1]
        assert fac.simple_factors[0][2] == 2


class TestLaurent:
    def test_sin(self):
        f = parse("sin(z)")
        L = to_laurent(f, support(f))
        assert L.nvars == 1 and len(L.terms) == 2
        assert L.to_exppoly() == f

    def test_two_primes(self):
        f = parse("1 + 2^(-z) + 3^(-z) + 4^(-z)")
        L = to_laurent(f, support(f))
        assert L.nvars == 2 and len(L.terms) == 4
        assert L.to_exppoly() == f
        assert abs(L.evaluate(0.7 + 0.2j) - f(0.7 + 0.2j)) < 1e-12

    def test_round_trip_two_variables(self):
        f = parse("exp(sqrt(2)*z) - 3*exp((1+sqrt(2))*z) + z*exp(-z)")
        assert to_laurent(f, support(parse("exp(sqrt(2)*z) + exp(z)"))).to_exppoly() == f


class TestDivide:
    def test_exact(self):
        assert divide(parse("exp(2*z)-1"), parse("exp(z)-1")) == parse("exp(z)+1")

    def test_not_divisible(self):
        assert divide(parse("exp(z)-1"), parse("z*exp(z)")) is None

    def test_rational_flagged(self):
        q = divide(parse("exp(z)-1"), parse("z*exp(z)"), allow_rational=True)
        assert isinstance(q, RationalExpPoly)
        assert (q.numerator * parse("z*exp(z)") - q.denominator * parse("exp(z)-1")).is_zero

    def test_quadratic_over_linear(self):
        f, g = parse("exp(2*pi*i*z^2)-1"), parse("(exp(2*pi*i*z)-1)*exp(z^2)")
        assert divide(f, g) is None

    def test_zero_divisor(self):
        with pytest.raises(ZeroDivisionError):
            divide(parse("1"), parse("0"))


class TestCommonFactorAndRoots:
    def test_gcd(self):
        h = common_factor(parse("1-exp(2*z)"), parse("1-exp(3*z)"))
        assert h is not None and (h == parse("1-exp(z)") or h == parse("exp(z)-1"))

    def test_incommensurable(self):
        assert common_factor(parse("1-exp(z)"), parse("1-exp(sqrt(2)*z)")) is None

    def test_self(self):
        f = parse("2 - 3*exp(z) + exp(i*z)")
        h = common_factor(f, f)
        assert divide(f, h) is not None and divide(f, h).is_unit

    def test_square(self):
        roots = dth_roots(parse("(exp(z)-1)^2"), 2)
        assert {str(r) for r in roots} == {str(parse("exp(z)-1")), str(parse("1-exp(z)"))}
        assert dth_root(parse("(exp(z)-1)^2"), 2) is not None

    def test_unit_root(self):
        assert dth_root(parse("exp(2*z)"), 2) in (parse("exp(z)"), parse("-exp(z)"))

    def test_no_root(self):
        assert dth_root(parse("1+exp(z)"), 2) is None
        assert no_square_root_by_search(parse("1+exp(z)"))

    def test_search_oracle_finds_real_roots(self):
        assert not no_square_root_by_search(parse("(1+exp(z))^2"))

    def test_cube(self):
        f = parse("(z - exp(z^2))^3")
        assert len(dth_roots(f, 3)) == 3


# --- properties --------------------------------------------------------------


@settings(max_examples=30)
@given(exp_sums(max_terms=3))
def test_ritt_multiply_back(f):
    if f.is_zero:
        return
    fac = ritt_factorization(f)
    assert fac.certified and fac.expand() == f


simple_factor = st.tuples(st.integers(-3, 3).filter(bool), st.integers(1, 3), st.sampled_from([1, I, 1 + I]))


@settings(max_examples=20)
@given(st.lists(simple_factor, min_size=1, max_size=3))
def test_square_root_of_square(factors):
    f = parse("1")
    for beta, k, w in factors:
        f = f * (parse("1") - poly_in_exp(Polynomial((0, beta)), k * w))
    roots = dth_roots(f * f, 2)
    assert len(roots) == 2 and any(r == f for r in roots)
