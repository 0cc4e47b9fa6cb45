import math

import pytest
import sympy as sp
from hypothesis import assume, given, settings

from exppoly import Polynomial, RationalExpPoly, parse
from exppoly.errors import ExpressionSyntaxError, NonRepresentable
from exppoly.odelab import (
    EquationTree,
    LinearODE,
    annihilator,
    bank_laine_residual,
    catalog,
    compose_exp,
    duality_classify,
    frei_equation,
    frei_subnormal,
    gamma_class,
    h_transform_equation,
    hermite_equation,
    hermite_polynomial,
    indicator_dominance,
    laguerre_equation,
    laguerre_polynomial,
    normalize_second_order,
    order_bound,
    parse_equation,
    perimeter_condition,
    possible_orders,
    residual_is_zero,
    sixteenth_check,
    standard_third_equation,
    standard_third_solution,
    verify,
    zero_free_base_A,
)
from strategies import exppolys

Z = sp.Symbol("z")


def P(*c):
    return Polynomial(tuple(sp.sympify(x) for x in c))


class TestEquations:
    def test_linear_apply(self):
        L = LinearODE([parse("-1")])
        assert L.apply(parse("exp(z)")).is_zero
        assert L.order == 1 and L.homogeneous and L.monic

    def test_zero_lead_rejected(self):
        with pytest.raises(ValueError):
            LinearODE([parse("1")], lead=parse("0"))

    def test_parse_equation_kinds(self):
        eq = parse_equation("f''(z) + f'(z+1) - f(z-log(2))*f + f'(3) = exp(z)")
        assert isinstance(eq, EquationTree)
        assert set(eq.unknowns()) == {(0, None), (1, 1), (0, -sp.log(2)), (3, None), (2, None)}

    def test_syntax(self):
        with pytest.raises(ExpressionSyntaxError):
            parse_equation("f'' + ")

    def test_functional_equation(self):
        eq = "f^2 - 2*exp(z)*f(z-log(2)) - 1"
        assert verify(eq, parse("exp(z)+1")).is_zero
        assert verify(eq, parse("exp(z)-1")).is_zero
        assert not verify(eq, parse("exp(z)+2")).is_zero

    def test_quotient_solution(self):
        f = RationalExpPoly(parse("1"), parse("1-exp(z)"))
        assert verify("f^2 - exp(-z)*f'(z+2*pi*i)", f).is_zero

    def test_third_order_example(self):
        eq = "f''' + (1/9)*(9 + 9*exp(z) + 4*exp(2*z))*f'' - 5*f' + 3*f"
        # residual oracle: plug in by sympy directly
        sol = 16 - 27 * sp.exp(-2 * Z) + 27 * sp.exp(-3 * Z)
        direct = sp.diff(sol, Z, 3) + sp.Rational(1, 9) * (9 + 9 * sp.exp(Z) + 4 * sp.exp(2 * Z)) * sp.diff(sol, Z, 2) \
            - 5 * sp.diff(sol, Z) + 3 * sol
        res = verify(eq, parse("16 - 27*exp(-2*z) + 27*exp(-3*z)"))
        assert sp.simplify(sp.expand(direct)) == 0
        assert res.is_zero

    def test_float_residual(self):
        res = verify("f' - f", parse("exp(z)", exact=False))
        assert residual_is_zero(res)
        assert not residual_is_zero(verify("f' - 2*f", parse("exp(z)", exact=False)))


class TestFamilies:
    def test_frei_m1(self):
        a, f = frei_subnormal(1)
        assert a == -1 and f == parse("1 + exp(z)")
        assert frei_equation(a).apply(f).is_zero

    def test_frei_m2(self):
        a, f = frei_subnormal(2)
        assert a == -4 and f == parse("1 + 4*exp(z) + 6*exp(2*z)")

    @pytest.mark.parametrize("m", range(1, 6))
    def test_frei_degree(self, m):
        a, f = frei_subnormal(m)
        assert max(t.exponent.coeff(1) for t in f.terms) == m
        assert frei_equation(a).apply(f).is_zero

    @pytest.mark.parametrize("n", range(6))
    def test_hermite_matches_sympy(self, n):
        H = hermite_polynomial(n)
        assert sp.expand(sum(c * Z**k for k, c in enumerate(H.coeffs)) - sp.hermite(n, Z)) == 0
        assert hermite_equation(n).apply(compose_exp(H)).is_zero

    @pytest.mark.parametrize("n", range(6))
    @pytest.mark.parametrize("alpha", [0, 1, sp.Rational(1, 2)])
    def test_laguerre_matches_sympy(self, n, alpha):
        L = laguerre_polynomial(n, alpha)
        assert sp.expand(sum(c * Z**k for k, c in enumerate(L.coeffs)) - sp.assoc_laguerre(n, alpha, Z)) == 0
        assert laguerre_equation(n, alpha).apply(compose_exp(L)).is_zero

    @pytest.mark.parametrize("gamma", [1, 2, 1 + sp.I, sp.Rational(1, 3)])
    def test_h_transform(self, gamma):
        h = 4 * parse(str(gamma).replace("I", "i")) + parse("exp(-z/2)")
        assert h_transform_equation(gamma).apply(h).is_zero

    @pytest.mark.parametrize("c", [-3, sp.Rational(3, 2) + 3 * sp.sqrt(3) * sp.I / 2])
    @pytest.mark.parametrize("N", [0, 1])
    def test_standard_third(self, c, N):
        K, g = standard_third_solution(c, N)
        assert K == sp.Rational((N + 1) ** 2, 9)
        assert g is not None and not g.is_zero
        assert standard_third_equation(c, K).apply(g).is_zero

    def test_standard_third_n2_has_no_laurent_solution(self):
        assert standard_third_solution(-3, 2)[1] is None


@pytest.mark.parametrize("fx", catalog(), ids=lambda fx: fx.name)
def test_catalog_residuals(fx):
    assert verify(fx.equation, fx.solution).is_zero


class TestAnnihilator:
    def test_exp(self):
        L = annihilator(parse("exp(z)"))
        assert L.order == 1 and L.coefficients[0] == parse("-1")

    def test_four_term_sum(self):
        f = parse("1 + 2^(-z) + 3^(-z) + 4^(-z)")
        L = annihilator(f)
        assert L.order == 4 and L.monic and L.coefficients[0].is_zero
        x = sp.Symbol("x")
        l2, l3 = sp.log(2), sp.log(3)
        char = sp.Poly(sp.expand(x * (x + l2) * (x + l3) * (x + 2 * l2)), x).all_coeffs()[::-1]
        got = [a.constant_value() if not a.is_zero else 0 for a in L.coefficients] + [1]
        assert all(sp.simplify(sp.expand(a - b)) == 0 for a, b in zip(got, char))

    def test_gaussian(self):
        L = annihilator(parse("exp(z^2)"))
        assert L.order == 1 and L.coefficients[0] == parse("-2*z")
        assert order_bound(parse("exp(z^2)")) == 1

    def test_polynomial_lead(self):
        L = annihilator(parse("z*exp(z) + 1"))
        assert L.apply(parse("z*exp(z) + 1")).is_zero
        assert L.polynomial_coefficients()

    def test_float_input(self):
        L = annihilator(parse("exp(0.5*z) + 2", exact=False))
        assert L.apply(parse("exp(z/2) + 2")).is_zero

    def test_zero(self):
        with pytest.raises(ValueError):
            annihilator(parse("0"))


class TestDuality:
    f = parse("1 + z*exp(z) + 2*exp(3*z)")
    g = parse("1 - exp(-z)")

    def test_strongly_dual(self):
        rep = duality_classify(self.f, self.g)
        assert rep.dual and rep.strongly_dual and rep.one_sided == (True, True)

    def test_dual_not_strongly(self):
        h = self.g + parse("2*z^2*exp(-2*z)")
        rep = duality_classify(self.f, h)
        assert rep.dual and not rep.strongly_dual

    def test_pi_factor(self):
        rep = duality_classify(parse("exp(pi*z) + 3*exp(2*pi*z) + z*exp(3*pi*z)"), self.g)
        assert rep.commensurable[0] and sp.simplify(rep.common_factor - sp.pi) == 0

    def test_not_one_sided(self):
        rep = duality_classify(parse("sin(z)"), self.g)
        assert rep.one_sided == (False, True) and not rep.dual

    @pytest.mark.parametrize(
        "text, cls",
        [("exp(z)", "Gamma_0"), ("exp(z^2) + 3", "Gamma_1"), ("z*exp(z)", "Gamma_0^d"),
         ("exp(z) + z", "Gamma_1^d"), ("exp(z) + exp(2*z)", "none")],
    )
    def test_gamma_class(self, text, cls):
        assert gamma_class(parse(text)) == cls


class TestSecondOrder:
    def test_frei_normal_form(self):
        A = normalize_second_order(parse("exp(-z)"), parse("-3"))
        assert A == parse("-3 + exp(-z)/2 - exp(-2*z)/4")

    def test_p_zero(self):
        q = parse("z + exp(z)")
        assert normalize_second_order(parse("0"), q) == q

    def test_ozawa(self):
        A = normalize_second_order(parse("exp(-z)"), parse("2*z + 5"))
        assert A == parse("-exp(-2*z)/4 + exp(-z)/2 + 2*z + 5")

    def test_zero_free_base(self):
        assert zero_free_base_A(parse("z")) == parse("-(exp(2*z) + 1)/4")
        with pytest.raises(NonRepresentable):
            zero_free_base_A(parse("exp(z)"))

    def test_zero_free_base_solution(self):
        # f = exp(-phi/2) * exp(int e^phi / 2): for phi = z the solutions
        # exp(-z/2 +- e^z/2) have no zeros; check f'' + A f = 0 numerically
        import cmath

        A = zero_free_base_A(parse("z"))
        f = lambda z: cmath.exp(-z / 2 + cmath.exp(z) / 2)  # noqa: E731
        for z in (0.3 + 0.2j, -1 + 2j):
            h = 1e-4
            d2 = (f(z + h) - 2 * f(z) + f(z - h)) / h**2
            assert abs(d2 + A(z) * f(z)) < 1e-5 * abs(f(z))

    def test_sixteenth(self):
        assert sixteenth_check(P(0, 4), P(-1))
        assert sixteenth_check(P(0, 0, 1), P(sp.Rational(1, 2), 0, sp.Rational(-1, 4)))
        assert not sixteenth_check(P(0, 1), P(0))

    @pytest.mark.parametrize("rho, expected", [(0.4, False), (0.5, False), (0.6, False), (0.75, False), (0.8, True)])
    def test_perimeter(self, rho, expected):
        A = parse(f"exp(z) + exp({rho}*z)")
        assert perimeter_condition(A) is expected

    def test_indicator_dominance(self):
        assert indicator_dominance(parse("exp(-z)"), parse("-3")) == (True, None)
        ok, wit = indicator_dominance(parse("exp(-z)"), parse("exp(z)"))
        assert not ok and wit == 0.0

    def test_bank_laine(self):
        E = parse("sin(z)*cos(z)")
        assert bank_laine_residual(E, 1, parse("1")).is_zero
        assert not bank_laine_residual(parse("sin(z)"), 1, parse("1")).is_zero
        assert not bank_laine_residual(E, 1, parse("exp(z)")).is_zero


class TestPossibleOrders:
    def test_airy(self):
        assert possible_orders(LinearODE([parse("-z"), parse("0")])) == [sp.Rational(3, 2)]

    def test_harmonic(self):
        assert possible_orders(LinearODE([parse("1"), parse("0")])) == [1]

    def test_hand_polygon(self):
        # points (k, deg A_k): (0, 1), (1, 2), (2, 0); slope from s0 = 2 to k = 1 is 2
        assert possible_orders(LinearODE([parse("z"), parse("z^2")])) == [3]

    def test_gaussian_annihilator(self):
        assert 2 in possible_orders(annihilator(parse("exp(3*z^2) + z")))


# --- properties --------------------------------------------------------------


@settings(max_examples=25)
@given(exppolys(max_terms=3, max_q=2, max_deg=2))
def test_annihilator_soundness(f):
    assume(not f.is_zero)
    L = annihilator(f)
    assert L.apply(f).is_zero
    assert L.order <= order_bound(f)


@settings(max_examples=20)
@given(exppolys(max_terms=2, max_q=2, max_deg=1))
def test_possible_orders_contain_order(f):
    assume(f.order >= 1)
    L = annihilator(f)
    assert f.order in possible_orders(L)


@settings(max_examples=20)
@given(exppolys(max_terms=2, max_q=1, max_deg=1), exppolys(max_terms=2, max_q=1, max_deg=1))
def test_duality_symmetric(f, g):
    assume(f.order == 1 and g.order == 1)
    a, b = duality_classify(f, g), duality_classify(g, f)
    assert a.dual == b.dual and a.strongly_dual == b.strongly_dual
    assert a.one_sided == b.one_sided[::-1] and a.commensurable == b.commensurable[::-1]
