import cmath
import math

import numpy as np
import pytest
import sympy as sp
from hypothesis import given
from hypothesis import strategies as st

from exppoly import parse
from exppoly.errors import NotCollinear
from exppoly.strips import (
    NormalizedSum,
    critical_strips,
    dominance_margin,
    log_strip,
    rf_inequalities,
    strip_density,
    strips_report,
    to_normalized_sum,
    zero_free_regions,
)

PHI_M = math.log((math.sqrt(5) - 1) / 2)
PHI_P = math.log((math.sqrt(5) + 1) / 2)
L2, L3, L6 = math.log(2), math.log(3), math.log(6)


def ns_of(text):
    return to_normalized_sum(parse(text))[1]


class TestNormalizedSum:
    def test_already_normalized(self):
        unit, ns, rho = to_normalized_sum(parse("6 - 5*exp(z) + exp(2*z)"))
        assert complex(unit.multiplier.coeff(0)) == 6
        assert unit.exponent.is_zero or unit.exponent.coeff(1) == 0
        assert rho == 0.0
        assert np.allclose(ns.multipliers, [1, -5 / 6, 1 / 6])
        assert ns.frequencies == (0.0, 1.0, 2.0)

    def test_unit_extracted(self):
        unit, ns, _ = to_normalized_sum(parse("3*exp(2*z) - exp(5*z)"))
        assert complex(unit.multiplier.coeff(0)) == 3
        assert complex(unit.exponent.coeff(1)) == 2
        assert ns.frequencies == (0.0, 3.0)
        assert np.allclose(ns.multipliers, [1, -1 / 3])

    def test_sin_rotated(self):
        unit, ns, rho = to_normalized_sum(parse("sin(z)"))
        assert ns.frequencies == (0.0, 2.0)
        assert np.allclose(ns.multipliers, [1, -1])
        # rotation maps i onto the real axis
        assert abs(cmath.exp(1j * rho) * 1j - 1) < 1e-12 or abs(cmath.exp(1j * rho) * 1j + 1) < 1e-12

    def test_noncollinear(self):
        with pytest.raises(NotCollinear):
            to_normalized_sum(parse("1 + exp(z) + exp(i*z)"))

    def test_validation(self):
        with pytest.raises(ValueError):
            NormalizedSum((2, 1), (0, 1))
        with pytest.raises(ValueError):
            NormalizedSum((1, 1), (0, -1))


class TestRegions:
    def test_golden(self):
        regs = zero_free_regions(ns_of("1 + exp(z) + exp(2*z)"))
        assert len(regs) == 2
        assert regs[0].x_interval[0] == -math.inf and regs[0].x_interval[1] == pytest.approx(PHI_M, abs=1e-12)
        assert regs[1].x_interval[0] == pytest.approx(PHI_P, abs=1e-12) and regs[1].x_interval[1] == math.inf

    def test_quadratic_lattice(self):
        regs = zero_free_regions(ns_of("6 - 5*exp(z) + exp(2*z)"))
        got = [r.x_interval for r in regs]
        want = [(-math.inf, 0.0), (L2, L3), (L6, math.inf)]
        for (a, b), (c, d) in zip(got, want):
            assert a == pytest.approx(c, abs=1e-12) and b == pytest.approx(d, abs=1e-12)
        assert [r.dominating_index for r in regs] == [0, 1, 2]

    def test_two_terms(self):
        regs = zero_free_regions(NormalizedSum((1, 4), (0, 2)))
        x0 = -math.log(4) / 2
        assert len(regs) == 2
        assert regs[0].x_interval[1] == pytest.approx(x0) and regs[1].x_interval[0] == pytest.approx(x0)

    def test_region_really_zero_free(self):
        ns = ns_of("6 - 5*exp(z) + exp(2*z)")
        for reg in zero_free_regions(ns):
            a, b = reg.x_interval
            xs = np.linspace(max(a, -8) + 1e-6, min(b, 8) - 1e-6, 50)
            assert np.all(dominance_margin(ns, reg.dominating_index, xs) > 0)


class TestStrips:
    def test_quadratic_lattice(self):
        strips = critical_strips(ns_of("6 - 5*exp(z) + exp(2*z)"))
        assert [s.x_interval for s in strips] == [pytest.approx((0.0, L2), abs=1e-12), pytest.approx((L3, L6), abs=1e-12)]

    def test_degenerate(self):
        strips = critical_strips(ns_of("exp(z) - 1"))
        assert len(strips) == 1 and strips[0].degenerate
        assert strips[0].x_interval[0] == pytest.approx(0.0, abs=1e-12)

    def test_golden(self):
        (s,) = critical_strips(ns_of("1 + exp(z) + exp(2*z)"))
        assert s.x_interval == pytest.approx((PHI_M, PHI_P), abs=1e-12)

    def test_density(self):
        ns = ns_of("6 - 5*exp(z) + exp(2*z)")
        assert all(strip_density(s, ns) == pytest.approx(1 / (2 * math.pi)) for s in critical_strips(ns))
        ns1 = ns_of("exp(z) - 1")
        assert strip_density(critical_strips(ns1)[0], ns1) == pytest.approx(1 / (2 * math.pi))


class TestInequalities:
    def test_golden(self):
        ns = ns_of("1 + exp(z) + exp(2*z)")
        assert rf_inequalities(ns, 0.0)
        assert not rf_inequalities(ns, PHI_P + 0.1)
        assert not rf_inequalities(ns, -math.inf)

    def test_equivalent_to_strip_membership(self):
        ns = ns_of("6 - 5*exp(z) + exp(2*z)")
        strips = critical_strips(ns)
        for x in np.linspace(-2, 3, 201):
            inside = any(a - 1e-9 <= x <= b + 1e-9 for a, b in (s.x_interval for s in strips))
            assert rf_inequalities(ns, x) == inside or min(abs(x - v) for v in (0, L2, L3, L6)) < 1e-6


class TestLogStrip:
    def test_ray_member(self):
        m = log_strip(0.3, 1.0, 1)
        assert all(m(r * cmath.exp(0.3j)) for r in (1.5, 10, 1e4))
        assert not m(0.5 * cmath.exp(0.3j))

    def test_boundary_shapes(self):
        # p = 1: y ~ log x on the positive axis; p = 2: y ~ log x / x
        m1, m2 = log_strip(0.0, 1.0, 1), log_strip(0.0, 1.0, 2)
        x = 100.0
        assert m1(complex(x, 0.9 * math.log(x))) and not m1(complex(x, 1.1 * math.log(x)))
        assert m2(complex(x, 0.9 * math.log(x) / x)) and not m2(complex(x, 1.1 * math.log(x) / x))

    def test_bad_args(self):
        with pytest.raises(ValueError):
            log_strip(0, 0, 1)


def test_report_shape():
    rep = strips_report(parse("6 - 5*exp(z) + exp(2*z)"))
    assert list(rep) == ["rotation", "unit", "normalized", "zero_free_regions", "critical_strips"]
    assert len(rep["critical_strips"]) == 2


@given(
    st.lists(st.floats(0.05, 20), min_size=1, max_size=4),
    st.lists(st.floats(0.1, 3), min_size=4, max_size=4),
    st.floats(-5, 5),
)
def test_regions_and_strips_tile_the_line(mods, gaps, x):
    n = len(mods)
    w = np.cumsum([0.0] + gaps[:n])
    ns = NormalizedSum((1.0,) + tuple(mods), tuple(w))
    regs, strips = zero_free_regions(ns), critical_strips(ns)
    in_reg = any(r.contains(x) for r in regs)
    in_strip = any(s.x_interval[0] <= x <= s.x_interval[1] for s in strips)
    assert in_reg or in_strip
    if in_reg:
        k = next(r.dominating_index for r in regs if r.contains(x))
        assert dominance_margin(ns, k, x) > -1e-9 * float(np.sum(ns.abs_h * np.exp(ns.w * x)))
