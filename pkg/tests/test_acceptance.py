"""Acceptance criteria 1-13.

Every test records one PASS/FAIL line (printed in the pytest terminal
summary, or directly when this file is run as a script).  Tolerances and
runtime limits are fixed per criterion.
"""
import math
import time

import numpy as np
import sympy as sp

from acceptance_report import lines, report
from exppoly import ExpTerm, Polynomial, canonicalize, parse
from exppoly.factor import dth_root, dth_roots, factor_simple, poly_in_exp, ritt_factorization, simple_product
from exppoly.hullgeo import build_hull, circumference_by_quadrature
from exppoly.nevan import characteristic_grid, deficiency, proximity
from exppoly.odelab import LinearODE, annihilator, catalog, order_bound, possible_orders, verify
from exppoly.strips import critical_strips, to_normalized_sum, zero_free_regions
from exppoly.zerolab import Contour, count_report, isolate_zeros, regularity_sum, strip_count, winding_count, zeros_in_disc
from exppoly.zetalab import ThinnedSpec, axis_zero_check, pi24, thinned_product

TWO_PI = 2 * math.pi
LATTICE3 = "(exp(z)-1)*(exp(z)-2)*(exp(z)-3)"
STEINMETZ = "(1-3*exp(i*z))*exp(z^2) - z*exp(-i*z^2)"


def test_01_lattice_oracle():
    t0 = time.perf_counter()
    f = parse(LATTICE3)
    zl = isolate_zeros(f, Contour.rectangle(-1, 2, -1, 40 * math.pi))
    expected = [math.log(j) + TWO_PI * n * 1j for j in (1, 2, 3) for n in range(0, 21)]
    expected = [z for z in expected if zl.region.contains(z)]
    found = list(zl.points())
    points_ok = len(found) == len(expected) == zl.total
    err = 0.0
    for e in expected:
        d = min(abs(e - z) for z in found) if found else math.inf
        err = max(err, d)
    points_ok = points_ok and err < 1e-9
    near = dict(zip((90.0, 100.0, 110.0), count_report(f, [90.0, 100.0, 110.0]).counts))
    n100 = near[100.0]
    ratio = n100 / 100.0
    rel = abs(ratio - 3 / math.pi) / (3 / math.pi)
    dt = time.perf_counter() - t0
    ok = points_ok and rel <= 0.02 and dt < 30
    report(
        1, ok,
        f"{len(found)} lattice zeros located (max error {err:.1e}, {'ok' if points_ok else 'MISMATCH'}); "
        f"n(100)/100 = {ratio:.4f} vs 3/pi = {3 / math.pi:.4f} (relative gap {rel:.2%}, limit 2%); "
        f"n(r) at r = 90, 100, 110: {[int(near[r]) for r in (90.0, 100.0, 110.0)]}; {dt:.1f}s",
    )
    assert ok


def test_02_zero_free_regions():
    t0 = time.perf_counter()
    f = parse("1 + exp(z) + exp(2*z)")
    _, ns, _ = to_normalized_sum(f)
    regs = zero_free_regions(ns)
    a, b = math.log((math.sqrt(5) - 1) / 2), math.log((math.sqrt(5) + 1) / 2)
    bounds_ok = len(regs) == 2 and abs(regs[0].x_interval[1] - a) < 1e-10 and abs(regs[1].x_interval[0] - b) < 1e-10
    rng = np.random.default_rng(2)
    windings = []
    for k in range(20):
        reg = regs[k % 2]
        lo, hi = reg.x_interval
        lo, hi = max(lo, hi - 6) if lo == -math.inf else lo, min(hi, lo + 6) if hi == math.inf else hi
        x1, x2 = np.sort(rng.uniform(lo + 1e-3, hi - 1e-3, 2))
        y1 = rng.uniform(-20, 20)
        windings.append(winding_count(f, Contour.rectangle(x1, x2, y1, y1 + rng.uniform(0.5, 15))))
    dt = time.perf_counter() - t0
    ok = bounds_ok and all(w == 0 for w in windings) and dt < 5
    report(2, ok, f"boundaries {regs[0].x_interval[1]:.12f}, {regs[1].x_interval[0]:.12f}; "
                  f"windings of 20 rectangles = {sorted(set(windings))}; {dt:.2f}s")
    assert ok


def test_03_critical_strips():
    t0 = time.perf_counter()
    f = parse("6 - 5*exp(z) + exp(2*z)")
    _, ns, _ = to_normalized_sum(f)
    strips = critical_strips(ns)
    want = [(0.0, math.log(2)), (math.log(3), math.log(6))]
    bounds_ok = len(strips) == 2 and all(
        abs(s.x_interval[0] - w[0]) < 1e-10 and abs(s.x_interval[1] - w[1]) < 1e-10 for s, w in zip(strips, want)
    )
    counts = [strip_count(f, s, -1.0, 40 * math.pi - 1.0) for s in strips]
    counts_ok = all(n == 20 and abs(dev) <= 2 for n, _, dev in counts)
    dt = time.perf_counter() - t0
    ok = bounds_ok and counts_ok and dt < 20
    report(3, ok, f"strips {[tuple(round(x, 12) for x in s.x_interval) for s in strips]}; "
                  f"counts over height 40 pi {[n for n, _, _ in counts]}; {dt:.2f}s")
    assert ok


def test_04_circumference():
    t0 = time.perf_counter()
    rng = np.random.default_rng(4)
    worst = 0.0
    for _ in range(100):
        n = rng.integers(1, 16)
        pts = rng.normal(size=n) * rng.uniform(0.1, 5) + 1j * rng.normal(size=n) * rng.uniform(0.1, 5)
        h = build_hull(pts)
        worst = max(worst, abs(circumference_by_quadrature(h) - h.circumference))
    dt = time.perf_counter() - t0
    ok = worst < 1e-9 and dt < 5
    report(4, ok, f"max |quadrature - perimeter| over 100 clouds = {worst:.1e}; {dt:.2f}s")
    assert ok


def test_05_nevanlinna_steinmetz():
    t0 = time.perf_counter()
    f = parse(STEINMETZ)
    grid = np.geomspace(10, 60, 12)
    rep = characteristic_grid(f, grid)
    t_pred, n_pred = (2 + math.sqrt(2)) / TWO_PI, math.sqrt(2) / math.pi
    t_gap = abs(rep.fitted_leading - t_pred) / t_pred
    n_gap = abs(rep.N_fitted_leading - n_pred) / n_pred
    d = deficiency(f, 0, grid)
    d_gap = abs(d.delta_estimate - (3 - 2 * math.sqrt(2)))
    dt = time.perf_counter() - t0
    ok = t_gap <= 0.08 and n_gap <= 0.08 and d_gap <= 0.05 and dt < 300
    report(5, ok, f"T-leading {rep.fitted_leading:.4f} vs {t_pred:.4f} ({t_gap:.1%}); "
                  f"N-leading {rep.N_fitted_leading:.4f} vs {n_pred:.4f} ({n_gap:.1%}); "
                  f"delta(0) {d.delta_estimate:.4f} vs {3 - 2 * math.sqrt(2):.4f}; {dt:.1f}s")
    assert ok


def test_06_characteristic_of_exp():
    t0 = time.perf_counter()
    f = parse("exp(z)")
    gaps = [abs(proximity(f, r) - r / math.pi) / (r / math.pi) for r in (1.0, 10.0, 100.0)]
    dt = time.perf_counter() - t0
    ok = max(gaps) <= 1e-6 and dt < 1
    report(6, ok, f"max relative error of T(r, e^z) at r = 1, 10, 100: {max(gaps):.1e}; {dt:.3f}s")
    assert ok


def test_07_exact_residuals():
    t0 = time.perf_counter()
    fixtures = catalog()
    bad = [fx.name for fx in fixtures if not verify(fx.equation, fx.solution).is_zero]
    dt = time.perf_counter() - t0
    ok = not bad and dt < 30
    report(7, ok, f"{len(fixtures) - len(bad)}/{len(fixtures)} equation-solution pairs with exact zero residual"
                  + (f" (failing: {bad})" if bad else "") + f"; {dt:.2f}s")
    assert ok


def _random_exppoly(rng):
    def g():
        return sp.Integer(int(rng.integers(-3, 4))) + sp.I * int(rng.integers(-2, 3))

    terms = []
    for _ in range(int(rng.integers(1, 4))):
        deg = int(rng.integers(0, 3))
        mult = Polynomial(tuple(g() for _ in range(deg + 1)))
        q = int(rng.integers(0, 3))
        expo = Polynomial((sp.Integer(0),) + tuple(g() for _ in range(q)))
        terms.append(ExpTerm(mult, expo))
    return canonicalize(terms)


def test_08_annihilator_soundness():
    t0 = time.perf_counter()
    rng = np.random.default_rng(8)
    checked, bad = 0, []
    while checked < 100:
        f = _random_exppoly(rng)
        if f.is_zero:
            continue
        L = annihilator(f)
        if L.order > order_bound(f) or not L.apply(f).is_zero:
            bad.append(str(f))
        checked += 1
    dt = time.perf_counter() - t0
    ok = not bad and dt < 120
    report(8, ok, f"{checked - len(bad)}/100 random exponential polynomials: order within bound and residual 0; {dt:.1f}s")
    assert ok


DIRECTIONS = [sp.Integer(1), sp.I, 1 + sp.I, sp.sqrt(2)]


def test_09_factorization_round_trip():
    t0 = time.perf_counter()
    rng = np.random.default_rng(9)
    failures = []
    for trial in range(50):
        gens = []
        f = parse("1")
        for _ in range(int(rng.integers(1, 5))):
            w = DIRECTIONS[int(rng.integers(0, len(DIRECTIONS)))]
            beta = sp.Integer(int(rng.choice([-3, -2, -1, 1, 2, 3]))) + sp.I * int(rng.integers(-1, 2))
            gens.append((w, beta))
            f = f * poly_in_exp(Polynomial((sp.Integer(1), -beta)), w)
        fac = ritt_factorization(f)
        got = []
        for w, P, m in fac.simple_factors:
            if P.degree != 1:
                got = None
                break
            got += [(S_str(w), S_str(-P.coeff(1)))] * m
        want = sorted((S_str(w), S_str(b)) for w, b in gens)
        if not fac.certified or got is None or sorted(got) != want or fac.irreducible_parts:
            failures.append(trial)
    unit, roots = factor_simple(parse("sin(z)"))
    sin_ok = simple_product(unit, roots) == parse("sin(z)") and parse("(-i/2)*exp(-i*z)*(exp(2*i*z)-1)") == parse("sin(z)")
    sin_ok = sin_ok and all(mu == sp.I for _, mu in roots) and sorted(sp.simplify(b) for b, _ in roots) == [-1, 1]
    dt = time.perf_counter() - t0
    ok = not failures and sin_ok and dt < 60
    report(9, ok, f"{50 - len(failures)}/50 random products recovered and certified; sin z factorization "
                  f"{'ok' if sin_ok else 'WRONG'}; {dt:.1f}s")
    assert ok


def S_str(x):
    return str(sp.nsimplify(sp.expand(x)))


def _square_root_search(f, max_k=2):
    """Solve g^2 = f symbolically over g = sum_{|k| <= max_k} c_k e^{k z/2}."""
    z, u = sp.Symbol("z"), sp.Symbol("u")
    cs = sp.symbols(f"c0:{2 * max_k + 1}")
    g = sum(c * u ** (k - max_k) for k, c in enumerate(cs))
    target = f.sympy(z).subs(sp.exp(z), u**2)
    eqs = sp.Poly(sp.expand((g**2 - target) * u ** (2 * max_k)), u).coeffs()
    return sp.solve(eqs, cs, dict=True)


def test_10_dth_root():
    t0 = time.perf_counter()
    r = dth_root(parse("(exp(z)-1)^2"), 2)
    rec = r is not None and (r == parse("exp(z)-1") or r == parse("1-exp(z)"))
    none = dth_roots(parse("1+exp(z)"), 2) == []
    search_empty = _square_root_search(parse("1+exp(z)")) == []
    dt = time.perf_counter() - t0
    ok = rec and none and search_empty and dt < 5
    report(10, ok, f"sqrt((e^z-1)^2) = {r}; 1+e^z has no square root "
                   f"(factor test {none}, exhaustive search {search_empty}); {dt:.2f}s")
    assert ok


def test_11_zeta_axis():
    t0 = time.perf_counter()
    offs = []
    for primes, caps in [((2,), (4,)), ((2, 3), (1, 1)), ((2, 3, 5), (2, 2, 1))]:
        on, off, _ = axis_zero_check(thinned_product(ThinnedSpec(primes, caps)), 50.0, 1e-8)
        offs.append((on, off.total))
    on24, off24, _ = axis_zero_check(pi24(), 50.0, 1e-8)
    dt = time.perf_counter() - t0
    ok = all(o == 0 for _, o in offs) and off24.total >= 1 and dt < 120
    report(11, ok, f"thinned products (on, off) = {offs}; pi24 off-axis zeros = {off24.total}; {dt:.1f}s")
    assert ok


def test_12_possible_orders():
    t0 = time.perf_counter()
    airy = possible_orders(LinearODE([parse("-z"), parse("0")]))
    harm = possible_orders(LinearODE([parse("1"), parse("0")]))
    dt = time.perf_counter() - t0
    ok = airy == [sp.Rational(3, 2)] and harm == [1] and dt < 1
    report(12, ok, f"Airy {airy}, f''+f {harm}; {dt:.3f}s")
    assert ok


def test_13_regular_distribution():
    t0 = time.perf_counter()
    R = 120 * math.pi + 1.0
    zl = zeros_in_disc(parse("sin(z)"), R)
    sums = regularity_sum(zl, 1)
    abss = regularity_sum(zl, 1, absolute=True)
    tail = [abs(v) for r, v in sums if r >= 100 * math.pi - 1e-9]
    dt = time.perf_counter() - t0
    ok = bool(tail) and max(tail) <= 1e-3 and abss[-1][1] > 3 and dt < 1
    report(13, ok, f"max |sum 1/z_n| for r >= 100 pi: {max(tail):.1e}; sum 1/|z_n| up to r = {abss[-1][0]:.1f}: "
                   f"{abss[-1][1]:.3f}; {dt:.2f}s")
    assert ok


if __name__ == "__main__":  # pragma: no cover
    import sys

    for name, fn in sorted(globals().items()):
        if name.startswith("test_") and callable(fn):
            try:
                fn()
            except AssertionError:
                pass
    print("\n".join(lines()))
    sys.exit(0 if all(line.startswith("PASS") for line in lines()) else 1)
