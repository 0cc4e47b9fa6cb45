"""Numerical Nevanlinna functionals for exponential polynomials and quotients.

Circle integrals of ``log|f|`` and ``log+|f|`` use an adaptive angular grid
(refined until ``h r |f'/f|`` is small, which resolves zeros close to the
circle), the level crossings ``|f| = 1`` located by vectorized bisection,
and composite Gauss-Legendre panels with error control.
"""
from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DegenerateQuotient, NotTranscendental
from .expr import ExpPoly, NormalizedForm, RationalExpPoly, as_exppoly, normalize
from . import scalars as S
from .hullgeo import FrequencyHull, build_hull, hull_of
from .zerolab import (
    CountReport,
    ORIGIN_SNAP,
    integrated_from_zeros,
    parallel_map,
    zeros_in_disc,
)

TWO_PI = 2.0 * math.pi
_GL_X, _GL_W = np.polynomial.legendre.leggauss(10)
_GL2_X, _GL2_W = np.polynomial.legendre.leggauss(20)


# ---------------------------------------------------------------------------
# circle integrals
# ---------------------------------------------------------------------------


def _parts(f):
    if isinstance(f, RationalExpPoly):
        return [(f.numerator, f.numerator.derivative(), 1.0), (f.denominator, f.denominator.derivative(), -1.0)]
    f = as_exppoly(f)
    return [(f, f.derivative(), 1.0)]


def _log_abs_and_dlog(parts, z):
    """``log|f(z)|`` and ``|f'/f|``; the mantissa is floored at 1e-300 relative to the dominant term."""
    g = np.zeros(z.shape)
    d = np.zeros(z.shape, dtype=complex)
    for F, Fp, sign in parts:
        L, s = F.scaled(z)
        a = np.abs(s)
        with np.errstate(divide="ignore"):
            lg = L + np.log(np.maximum(a, 1e-300))
        g = g + sign * lg
        if not Fp.is_zero:
            Lp, sp_ = Fp.scaled(z)
            with np.errstate(all="ignore"):
                d = d + sign * np.where(a > 0, sp_ / np.where(a > 0, s, 1) * np.exp(np.minimum(Lp - L, 700)), np.inf)
    return g, np.abs(d)


def _log_abs(parts, z):
    g = np.zeros(z.shape)
    for F, _, sign in parts:
        L, s = F.scaled(z)
        with np.errstate(divide="ignore"):
            g = g + sign * (L + np.log(np.maximum(np.abs(s), 1e-300)))
    return g


def _rate(parts, r):
    th = np.linspace(0, TWO_PI, 257)
    z = r * np.exp(1j * th)
    rate = np.zeros(z.shape)
    for F, _, _ in parts:
        for t in F.terms:
            dq = t.exponent.derivative()
            if not dq.is_zero:
                rate = np.maximum(rate, np.abs(np.polyval(dq.numeric()[::-1], z)))
    return float(rate.max())


def _angular_grid(parts, r, nodes, max_points=2**20):
    """Adaptive grid on [0, 2 pi] with ``h r |f'/f| <= 0.5``."""
    n0 = int(max(nodes, math.ceil(8 * r * (_rate(parts, r) + 1.0))))
    t = np.linspace(0.0, TWO_PI, n0 + 1)
    g, dl = _log_abs_and_dlog(parts, r * np.exp(1j * t))
    for _ in range(60):
        h = np.diff(t)
        step = h * r * np.maximum(dl[:-1], dl[1:])
        bad = (step > 0.5) & (h > 1e-13)
        if not bad.any() or len(t) > max_points:
            break
        tm = 0.5 * (t[:-1][bad] + t[1:][bad])
        gm, dlm = _log_abs_and_dlog(parts, r * np.exp(1j * tm))
        order = np.argsort(np.concatenate([t, tm]), kind="mergesort")
        t = np.concatenate([t, tm])[order]
        g = np.concatenate([g, gm])[order]
        dl = np.concatenate([dl, dlm])[order]
    return t, g


def _crossings(parts, r, t, g, level=0.0):
    """Angles where ``log|f| = level`` between grid points (vectorized bisection)."""
    sg = g - level
    idx = np.nonzero(np.sign(sg[:-1]) * np.sign(sg[1:]) < 0)[0]
    if idx.size == 0:
        return np.array([])
    a, b = t[idx].copy(), t[idx + 1].copy()
    ga = sg[idx]
    for _ in range(60):
        m = 0.5 * (a + b)
        gm = _log_abs(parts, r * np.exp(1j * m)) - level
        left = np.sign(gm) == np.sign(ga)
        a = np.where(left, m, a)
        ga = np.where(left, gm, ga)
        b = np.where(left, b, m)
        if np.max(b - a) < 1e-15:
            break
    return 0.5 * (a + b)


def _panel_integral(parts, r, a, b, transform, rtol=1e-10, max_rounds=30):
    """Sum of GL integrals of ``transform(log|f|)`` over panels [a_k, b_k], adaptively split."""
    total = 0.0
    scale = 0.0
    for _ in range(max_rounds):
        if a.size == 0:
            break
        half = 0.5 * (b - a)
        mid = 0.5 * (a + b)
        th1 = mid[:, None] + half[:, None] * _GL_X[None, :]
        th2 = mid[:, None] + half[:, None] * _GL2_X[None, :]
        v1 = transform(_log_abs(parts, r * np.exp(1j * th1)))
        v2 = transform(_log_abs(parts, r * np.exp(1j * th2)))
        i1 = half * (v1 @ _GL_W)
        i2 = half * (v2 @ _GL2_W)
        scale = max(scale, float(np.sum(np.abs(i2))))
        err = np.abs(i1 - i2)
        ok = err <= rtol * max(scale, 1.0) * (b - a) / TWO_PI + 1e-300
        total += float(np.sum(i2[ok]))
        a, b = a[~ok], b[~ok]
        if a.size:
            m = 0.5 * (a + b)
            a, b = np.concatenate([a, m]), np.concatenate([m, b])
    if a.size:
        half = 0.5 * (b - a)
        mid = 0.5 * (a + b)
        th2 = mid[:, None] + half[:, None] * _GL2_X[None, :]
        total += float(np.sum(half * (transform(_log_abs(parts, r * np.exp(1j * th2))) @ _GL2_W)))
    return total


def circle_mean(f, r: float, kind: str = "logplus", nodes: int = 64) -> float:
    """``(1/2 pi) int log+|f(re^{it})| dt`` (``kind='logplus'``), ``log+ 1/|f|`` (``'logminus'``) or ``log|f|`` (``'log'``)."""
    if r <= 0:
        raise ValueError("r must be positive")
    parts = _parts(f)
    t, g = _angular_grid(parts, r, nodes)
    if kind == "log":
        cr = np.array([])
        transform = lambda v: v  # noqa: E731
    else:
        cr = _crossings(parts, r, t, g)
        transform = (lambda v: np.maximum(v, 0.0)) if kind == "logplus" else (lambda v: np.maximum(-v, 0.0))
    # merge the fine grid into panels of about 8 cells, keeping every crossing
    keep = np.zeros(len(t), dtype=bool)
    keep[::8] = True
    keep[-1] = True
    breaks = np.unique(np.concatenate([t[keep], cr]))
    a, b = breaks[:-1], breaks[1:]
    return _panel_integral(parts, r, a, b, transform) / TWO_PI


def proximity(f, r: float, nodes: int = 64) -> float:
    """Proximity function ``m(r, f) = (1/2 pi) int_0^{2 pi} log+|f(r e^{it})| dt``."""
    if nodes < 8:
        raise ValueError("nodes must be >= 8")
    return circle_mean(f, r, "logplus", nodes)


def first_taylor(f: ExpPoly, max_k: int = 60):
    """``(k, c_k)``: order of vanishing at 0 and first nonzero Taylor coefficient."""
    g = f
    fact = 1
    for k in range(max_k + 1):
        v = complex(g(0.0))
        _, s = g.scaled(0.0)
        if abs(s) > 1e-11:
            return k, v / fact
        g = g.derivative()
        fact *= k + 1
    raise ValueError("vanishing order at 0 exceeds max_k")


def jensen_counting(f: ExpPoly, r: float, nodes: int = 64) -> float:
    """``N(r, 1/f)`` from Jensen's formula ``(1/2 pi) int log|f| - log|c_k|``."""
    f = as_exppoly(f)
    if f.is_zero:
        raise ValueError("f is identically zero")
    k, ck = first_taylor(f)
    return circle_mean(f, r, "log", nodes) - math.log(abs(ck))


# ---------------------------------------------------------------------------
# reports
# ---------------------------------------------------------------------------


def _fit_slope(r, y, q):
    """Slope of a weighted (weights r^q) linear fit of y against r^q on the upper grid half."""
    r = np.asarray(r, dtype=float)
    y = np.asarray(y, dtype=float)
    k = len(r) // 2
    rr, yy = r[k:], y[k:]
    x = rr**q
    if len(rr) < 2:
        return float(yy[-1] / x[-1])
    w = x
    A = np.vstack([x, np.ones_like(x)]).T * np.sqrt(w)[:, None]
    coef, *_ = np.linalg.lstsq(A, yy * np.sqrt(w), rcond=None)
    return float(coef[0])


@dataclass
class CharacteristicReport:
    """Proximity, counting and characteristic values on a radius grid."""

    r_grid: np.ndarray
    m_values: np.ndarray
    N_values: np.ndarray
    T_values: np.ndarray
    fitted_leading: float
    predicted_leading: float
    relative_gap: float
    N_fitted_leading: float = float("nan")
    N_predicted_leading: float = float("nan")
    q: int = 1

    @property
    def N_relative_gap(self) -> float:
        return abs(self.N_fitted_leading - self.N_predicted_leading) / abs(self.N_predicted_leading)

    def to_dict(self):
        return {
            "q": self.q,
            "fitted_leading": self.fitted_leading,
            "predicted_leading": self.predicted_leading,
            "relative_gap": self.relative_gap,
            "N_fitted_leading": self.N_fitted_leading,
            "N_predicted_leading": self.N_predicted_leading,
            "rows": [
                {"r": float(r), "m": float(m), "N": float(N), "T": float(T),
                 "predicted": self.predicted_leading * float(r) ** self.q}
                for r, m, N, T in zip(self.r_grid, self.m_values, self.N_values, self.T_values)
            ],
        }

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["r", "m", "N", "T", "predicted"])
        for r, m, N, T in zip(self.r_grid, self.m_values, self.N_values, self.T_values):
            w.writerow([repr(float(r)), repr(float(m)), repr(float(N)), repr(float(T)),
                        repr(self.predicted_leading * float(r) ** self.q)])
        return buf.getvalue()


def _check_grid(r_grid):
    r = np.asarray(r_grid, dtype=float)
    if r.ndim != 1 or r.size == 0 or np.any(r <= 0) or np.any(np.diff(r) <= 0):
        raise ValueError("r_grid must be positive and increasing")
    return r


def characteristic_grid(f: ExpPoly, r_grid, nodes: int = 64) -> CharacteristicReport:
    """``m``, ``N(r,1/f)`` and ``T = m`` (f entire) on ``r_grid``, with fitted leading terms.

    The predicted leading coefficient of ``T`` is ``C_0 / 2 pi`` (hull with the
    origin) and that of ``N(r, 1/f)`` is ``C / 2 pi``.
    """
    f = as_exppoly(f)
    if f.order == 0:
        raise NotTranscendental("f is a polynomial")
    r = _check_grid(r_grid)
    q = f.order
    m = np.array(parallel_map(lambda x: proximity(f, x, nodes), r))
    N = np.array(parallel_map(lambda x: jensen_counting(f, x, nodes), r))
    T = m.copy()  # entire: N(r, f) = 0
    fitted = _fit_slope(r, T, q)
    pred = hull_of(f, include_origin=True).circumference / TWO_PI
    nfit = _fit_slope(r, N, q)
    npred = hull_of(f).circumference / TWO_PI
    return CharacteristicReport(r, m, N, T, fitted, pred, abs(fitted - pred) / pred, nfit, npred, q)


@dataclass
class DeficiencyEstimate:
    value: object
    delta_estimate: float
    predicted: float | None = None
    ratios: np.ndarray | None = None

    def to_dict(self):
        v = self.value
        return {
            "value": "inf" if v == "inf" or v == math.inf else [complex(v).real, complex(v).imag],
            "delta_estimate": self.delta_estimate,
            "predicted": self.predicted,
        }


def _is_infinity(a) -> bool:
    return isinstance(a, str) and a.lower() in ("inf", "infinity", "oo") or a == math.inf


def deficiency(f: ExpPoly, a, r_grid, nodes: int = 64) -> DeficiencyEstimate:
    """``delta(a, f) ~ 1 - max_{upper half} N(r, 1/(f-a)) / T(r, f)``.

    ``a`` may be a complex number or ``"inf"`` (entire f: deficiency 1).
    """
    f = as_exppoly(f)
    if f.order == 0:
        raise NotTranscendental("f is a polynomial")
    r = _check_grid(r_grid)
    if _is_infinity(a):
        return DeficiencyEstimate("inf", 1.0, 1.0, np.zeros(len(r)))
    a = complex(a)
    fa = f - as_exppoly(a) if a != 0 else f
    if not f.exact:
        fa = fa.to_float()
    k = len(r) // 2
    rr = r[k:]
    T = np.array(parallel_map(lambda x: proximity(f, x, nodes), rr))
    N = np.array(parallel_map(lambda x: jensen_counting(fa, x, nodes), rr))
    ratios = N / T
    est = float(min(max(1.0 - ratios.max(), 0.0), 1.0))
    C0 = hull_of(f, include_origin=True).circumference
    pred = 1.0 - hull_of(fa).circumference / C0 if fa.order == f.order else None
    return DeficiencyEstimate(a, est, pred, ratios)


def _kappa(x, q):
    return x**q * math.log(x + math.e) ** 2


def crg_check(f: ExpPoly, rho: float | None = None, r_grid=(10, 20, 40, 80), samples: int = 2048):
    """Max deviation of ``log|f(re^{it})|/r^rho`` from the indicator, per radius.

    Points whose Newton distance ``|f/f'|`` to the nearest zero is below
    ``1/kappa(r)`` (``kappa(x) = x^q log^2(x+e)``) are excluded.  Returns a
    list of ``(r, max deviation)``.
    """
    from .hullgeo import indicator

    f = as_exppoly(f)
    q = f.order
    if q == 0:
        raise NotTranscendental("f is a polynomial")
    rho = q if rho is None else rho
    nf = normalize(f)
    parts = _parts(f)
    th = np.linspace(0.0, TWO_PI, samples, endpoint=False)
    out = []
    for r in _check_grid(r_grid):
        z = r * np.exp(1j * th)
        g, dl = _log_abs_and_dlog(parts, z)
        with np.errstate(divide="ignore"):
            dist = 1.0 / dl
        keep = dist > 1.0 / _kappa(r, q)
        dev = np.abs(g[keep] / r**rho - indicator(nf, th[keep]))
        out.append((float(r), float(dev.max()) if dev.size else 0.0))
    return out


# ---------------------------------------------------------------------------
# quotients
# ---------------------------------------------------------------------------


def gaussian_spiral(limit: int = 100):
    """Gaussian integers ordered by norm; real axis first (+ before -), then imaginary axis, then the rest."""
    out = []
    R = 1
    while len(out) < limit:
        pts = [complex(x, y) for x in range(-R, R + 1) for y in range(-R, R + 1)]

        def key(c):
            cls = 0 if c.imag == 0 else (1 if c.real == 0 else 2)
            return (abs(c) ** 2, cls, -c.real, -c.imag)

        out = sorted(pts, key=key)
        out = [c for c in out if abs(c) ** 2 <= R * R]
        R += 1
    return out[:limit]


def _groups(f: ExpPoly, q: int):
    """Map leading frequency -> multiplier (ExpPoly), plus the tail (key ``None``)."""
    if f.is_zero:
        return []
    if f.order < q:
        return [(None, f)]
    nf = normalize(f)
    out = [(w, m) for w, m in zip(nf.frequencies, nf.multipliers)]
    if not nf.tail.is_zero:
        out.append((None, nf.tail))
    return out


def _freq_table(g: ExpPoly, h: ExpPoly, q: int):
    """List of (frequency or None, G multiplier, H multiplier) over W_f."""
    rows: list = []
    for which, f in ((0, g), (1, h)):
        for w, m in _groups(f, q):
            for row in rows:
                if (w is None and row[0] is None) or (w is not None and row[0] is not None and S.s_equal(w, row[0])):
                    row[1 + which] = m
                    break
            else:
                row = [w, ExpPoly(()), ExpPoly(())]
                row[1 + which] = m
                rows.append(row)
    return rows


def _has_all(f: ExpPoly, rows, q):
    grp = _groups(f, q)
    for w, _, _ in rows:
        if not any((w is None and v is None) or (w is not None and v is not None and S.s_equal(w, v)) for v, _ in grp):
            return False
    return True


@dataclass
class QuotientAnalysis:
    """Normal-form data for ``f = g/h``.

    ``S = 1/(f - a) - b = numerator / denominator`` has every frequency of
    ``W_f`` in both numerator and denominator.
    """

    g: ExpPoly
    h: ExpPoly
    a: complex
    b: complex
    hull: FrequencyHull
    numerator: ExpPoly
    denominator: ExpPoly
    deficient_values: list = field(default_factory=list)
    N_gh: CountReport | None = None

    def to_dict(self):
        dv = [v if isinstance(v, str) else [complex(v).real, complex(v).imag] for v in self.deficient_values]
        return {
            "a": [self.a.real, self.a.imag],
            "b": [self.b.real, self.b.imag],
            "hull": self.hull.to_dict(),
            "numerator": str(self.numerator),
            "denominator": str(self.denominator),
            "deficient_candidates": dv,
        }


def _const_ratio(G: ExpPoly, H: ExpPoly):
    """Return c with ``G == c H`` if the ratio is constant, else None."""
    if H.is_zero:
        return None
    if G.is_zero:
        return 0
    if len(G.terms) != len(H.terms):
        return None
    c = S.s_mul(G.terms[0].multiplier.leading(), S.s_inv(H.terms[0].multiplier.leading()))
    return c if (G - H * as_exppoly(c)).is_zero else None


def quotient_normal_form(g: ExpPoly, h: ExpPoly, limit: int = 100) -> QuotientAnalysis:
    """Choose ``a`` then ``b`` from a Gaussian-integer spiral so that
    ``g - a h`` and ``h - b g + a b h`` carry every frequency of ``W_f``."""
    g, h = as_exppoly(g), as_exppoly(h)
    if h.is_zero:
        raise ValueError("h must be nonzero")
    if (g.derivative() * h - g * h.derivative()).is_zero:
        raise DegenerateQuotient("g/h is constant")
    q = max(g.order, h.order)
    if q == 0:
        raise DegenerateQuotient("g and h are polynomials")
    rows = _freq_table(g, h, q)
    W = [0j if w is None else complex(S.to_complex(w)) for w, _, _ in rows]
    hull = build_hull(np.conj(np.array(W, dtype=complex)))
    cands = gaussian_spiral(limit)
    exact = g.exact and h.exact

    def C(c):
        return as_exppoly(S.exact(c) if exact else c)

    for a in cands:
        den = g - C(a) * h
        if den.is_zero or not _has_all(den, rows, q):
            continue
        for b in cands:
            num = h - C(b) * den
            if not num.is_zero and _has_all(num, rows, q):
                dv = _deficient_candidates(rows, hull)
                return QuotientAnalysis(g, h, a, b, hull, num, den, dv)
        break
    raise DegenerateQuotient(f"no normal form within {limit} spiral candidates")


def _deficient_candidates(rows, hull):
    """Values a with G_j == a H_j (or H_j == 0 for infinity) at a hull vertex."""
    verts = list(hull.vertices)
    out = []
    for w, G, H in rows:
        wc = 0j if w is None else complex(S.to_complex(w))
        if not any(abs(np.conj(wc) - v) <= 1e-12 * max(1.0, abs(v)) for v in verts):
            continue
        if H.is_zero:
            val = "inf"
        else:
            val = _const_ratio(G, H)
            if val is None:
                continue
            val = complex(S.to_complex(val))
        if not any((isinstance(v, str) and isinstance(val, str)) or (not isinstance(v, str) and not isinstance(val, str) and abs(v - val) <= 1e-12) for v in out):
            out.append(val)
    return out


def _pair_common(zg, zh, tol=1e-8):
    out = []
    used = set()
    for z, m in zg:
        best, bi = None, None
        for i, (w, n) in enumerate(zh):
            if i in used:
                continue
            d = abs(z - w)
            if d <= tol * max(1.0, abs(z)) and (best is None or d < best):
                best, bi = d, i
        if bi is not None:
            used.add(bi)
            out.append((z, min(m, zh[bi][1])))
    return out


def common_zero_count(g: ExpPoly, h: ExpPoly, r_grid) -> CountReport:
    """Counting functions of the common zeros (multiplicity ``min(mu, nu)``)."""
    r = _check_grid(r_grid)
    R = r[-1]
    zg = zeros_in_disc(as_exppoly(g), R)
    zh = zeros_in_disc(as_exppoly(h), R)
    common = _pair_common(zg.zeros, zh.zeros)
    n = np.array([sum(m for z, m in common if abs(z) <= x) for x in r], dtype=int)
    N = integrated_from_zeros(common, r) if common else np.zeros(len(r))
    nan = np.full(len(r), np.nan)
    return CountReport(r, n, N, nan, nan, zg.certified and zh.certified, "zeros")


def quotient_growth_report(g: ExpPoly, h: ExpPoly, r_grid, c=0, nodes: int = 64) -> dict:
    """Numerical ``T``, ``m(r,f)`` and ``m(r, 1/(f-c))`` for ``f = g/h`` against the
    circumference predictions of the quotient growth theorem (a)-(c)."""
    g, h = as_exppoly(g), as_exppoly(h)
    r = _check_grid(r_grid)
    q = max(g.order, h.order)
    f = RationalExpPoly(g, h)
    rows = _freq_table(g, h, q)
    W = np.array([0j if w is None else complex(S.to_complex(w)) for w, _, _ in rows])
    Cf = build_hull(np.conj(W)).circumference
    Ch = hull_of(h).circumference if h.order == q else 0.0
    gc = g - as_exppoly(S.exact(complex(c)) if g.exact and h.exact else complex(c)) * h
    Cgc = hull_of(gc).circumference if (not gc.is_zero and gc.order == q) else 0.0
    m_f = np.array(parallel_map(lambda x: proximity(f, x, nodes), r))
    m_c = np.array(parallel_map(lambda x: proximity(RationalExpPoly(h, gc), x, nodes), r))
    Nh = np.array([jensen_counting(h, x, nodes) for x in r]) if h.order > 0 else np.zeros(len(r))
    cz = common_zero_count(g, h, r)
    N_f = Nh - cz.integrated
    T = m_f + N_f
    return {
        "r": r.tolist(),
        "T": T.tolist(),
        "m": m_f.tolist(),
        "m_inv_f_minus_c": m_c.tolist(),
        "N_poles": N_f.tolist(),
        "N_common": cz.integrated.tolist(),
        "T_plus_N_common_leading": _fit_slope(r, T + cz.integrated, q),
        "predicted_a": Cf / TWO_PI,
        "m_leading": _fit_slope(r, m_f, q),
        "predicted_b": (Cf - Ch) / TWO_PI,
        "m_c_leading": _fit_slope(r, m_c, q),
        "predicted_c": (Cf - Cgc) / TWO_PI,
        "q": q,
    }
