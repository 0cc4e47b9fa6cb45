"""Zero-free regions and critical strips of normalized exponential sums.

A normalized sum is ``f(z) = 1 + H_1 e^{w_1 z} + ... + H_n e^{w_n z}`` with
real ``0 < w_1 < ... < w_n``.  On a vertical line ``Re z = x`` the term ``k``
dominates when ``|H_k| e^{w_k x} > sum_{j != k} |H_j| e^{w_j x}``; such lines
carry no zeros.  The complement of the dominance regions is a finite union
of closed vertical strips which contain all zeros.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from . import scalars as S
from .errors import NonConstantMultipliers, NotCollinear
from .expr import ExpPoly, ExpTerm, Polynomial

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class NormalizedSum:
    """``1 + sum_j H_j e^{w_j z}``; ``multipliers[0] == 1`` and ``frequencies[0] == 0``."""

    multipliers: tuple
    frequencies: tuple

    def __post_init__(self):
        H = tuple(complex(h) for h in self.multipliers)
        w = tuple(float(x) for x in self.frequencies)
        if len(H) != len(w) or not H:
            raise ValueError("multipliers and frequencies must be nonempty and of equal length")
        if w[0] != 0.0 or H[0] != 1.0:
            raise ValueError("a normalized sum starts with the term 1")
        if any(b <= a for a, b in zip(w, w[1:])):
            raise ValueError("frequencies must be strictly increasing")
        if any(h == 0 for h in H):
            raise ValueError("multipliers must be nonzero")
        object.__setattr__(self, "multipliers", H)
        object.__setattr__(self, "frequencies", w)

    @property
    def n(self) -> int:
        return len(self.frequencies) - 1

    @property
    def abs_h(self) -> np.ndarray:
        return np.abs(np.array(self.multipliers))

    @property
    def w(self) -> np.ndarray:
        return np.array(self.frequencies)

    def to_exppoly(self) -> ExpPoly:
        return ExpPoly(
            ExpTerm(Polynomial((h,)), Polynomial((0j, w))) for h, w in zip(self.multipliers, self.frequencies)
        )

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        return sum(h * np.exp(w * z) for h, w in zip(self.multipliers, self.frequencies))


@dataclass(frozen=True)
class ZeroFreeRegion:
    """Open interval ``x_interval`` of real parts where term ``dominating_index`` dominates."""

    x_interval: tuple
    dominating_index: int

    def contains(self, x) -> bool:
        a, b = self.x_interval
        return a < x < b

    def to_dict(self):
        return {"x_interval": [_jnum(v) for v in self.x_interval], "dominating_index": self.dominating_index}


@dataclass(frozen=True)
class CriticalStrip:
    """Closed interval ``x_interval`` between two zero-free regions."""

    x_interval: tuple
    left_index: int
    right_index: int

    @property
    def width(self) -> float:
        return self.x_interval[1] - self.x_interval[0]

    @property
    def degenerate(self) -> bool:
        return self.width <= 1e-12

    def to_dict(self):
        return {
            "x_interval": [_jnum(v) for v in self.x_interval],
            "left_index": self.left_index,
            "right_index": self.right_index,
            "degenerate": self.degenerate,
        }


def _jnum(v):
    if v == math.inf:
        return "inf"
    if v == -math.inf:
        return "-inf"
    return float(v)


# ---------------------------------------------------------------------------


def _direction(freqs: list[complex]) -> complex:
    """Unit direction of the line through the frequencies (sign-normalized)."""
    base = freqs[0]
    far = max(freqs, key=lambda w: abs(w - base))
    d = far - base
    d /= abs(d)
    if d.real < -1e-15 or (abs(d.real) <= 1e-15 and d.imag < 0):
        d = -d
    return d


def to_normalized_sum(f: ExpPoly, tol: float = 1e-12):
    """Write ``f(z) = unit(z) * ns(e^{i rho} z)``.

    Returns ``(unit, ns, rho)`` where ``unit`` is an :class:`ExpTerm` ``c e^{lambda z}``
    and ``ns`` a :class:`NormalizedSum`.  Zeros ``zeta`` of ``ns`` correspond to
    zeros ``z = e^{-i rho} zeta`` of ``f``.
    """
    if f.is_zero:
        raise ValueError("zero function")
    if f.order > 1:
        raise NotCollinear("exponential sums of order <= 1 are required")
    if not f.has_constant_multipliers():
        raise NonConstantMultipliers("normalized sums need constant multipliers")
    freqs = [S.to_complex(t.exponent.coeff(1)) for t in f.terms]
    mults = [S.to_complex(t.multiplier.coeff(0)) for t in f.terms]
    if len(freqs) == 1:
        unit = ExpTerm(Polynomial((mults[0],)), Polynomial((0j, freqs[0])))
        return unit, NormalizedSum((1.0,), (0.0,)), 0.0
    d = _direction(freqs)
    scale = max(abs(w) for w in freqs) + 1.0
    ts = []
    for w in freqs:
        r = (w - freqs[0]) / d
        if abs(r.imag) > tol * scale:
            raise NotCollinear(f"frequency {w} is off the line through {freqs[0]} with direction {d}")
        ts.append(r.real)
    order_ = np.argsort(ts)
    k0 = order_[0]
    lam0, c0 = freqs[k0], mults[k0]
    H, W = [], []
    for k in order_:
        H.append(mults[k] / c0)
        W.append(ts[k] - ts[k0])
    W[0] = 0.0
    H[0] = 1.0
    unit = ExpTerm(Polynomial((mults[k0],)), Polynomial((0j, lam0)))
    rho = cmath.phase(d)
    return unit, NormalizedSum(tuple(H), tuple(W)), rho


def _psi(ns: NormalizedSum, k: int, x: float) -> float:
    """``log sum_{j != k} |H_j| e^{(w_j - w_k) x}``, convex in ``x``."""
    a = ns.abs_h
    w = ns.w
    idx = [j for j in range(len(w)) if j != k]
    e = np.log(a[idx]) + (w[idx] - w[k]) * x
    m = e.max()
    return float(m + math.log(np.exp(e - m).sum()))


def _dpsi(ns: NormalizedSum, k: int, x: float) -> float:
    a = ns.abs_h
    w = ns.w
    idx = [j for j in range(len(w)) if j != k]
    e = np.log(a[idx]) + (w[idx] - w[k]) * x
    p = np.exp(e - e.max())
    return float(np.dot(p, w[idx] - w[k]) / p.sum())


def _balance_range(ns: NormalizedSum):
    a, w = ns.abs_h, ns.w
    xs = [
        math.log(a[j] / a[k]) / (w[k] - w[j]) for j in range(len(w)) for k in range(len(w)) if j < k
    ]
    return (min(xs), max(xs)) if xs else (0.0, 0.0)


def _root(g, lo, hi, step):
    """Root of increasing-or-decreasing ``g`` with a sign change in [lo, hi] (expanding)."""
    glo, ghi = g(lo), g(hi)
    k = 0
    while glo * ghi > 0:
        lo -= step
        hi += step
        step *= 2
        glo, ghi = g(lo), g(hi)
        k += 1
        if k > 200:
            raise RuntimeError("no bracket for dominance boundary")
    return brentq(g, lo, hi, xtol=1e-14, rtol=1e-15, maxiter=500)


def zero_free_regions(ns: NormalizedSum) -> list[ZeroFreeRegion]:
    """Maximal open intervals of real parts on which one term dominates.

    For each index ``k`` the set ``{x : |H_k| e^{w_k x} > sum_{j!=k} |H_j| e^{w_j x}}``
    is the sublevel set of a convex function and hence a single interval;
    its ends are found by bracketing around the pairwise balance points and
    refining with Brent's method to about 1e-14.
    """
    n = ns.n
    if n == 0:
        return [ZeroFreeRegion((-math.inf, math.inf), 0)]
    a = ns.abs_h
    lo, hi = _balance_range(ns)
    lo, hi = lo - 10.0, hi + 10.0
    regions = []
    for k in range(n + 1):
        level = math.log(a[k])
        g = lambda x, k=k, level=level: _psi(ns, k, x) - level  # noqa: E731
        if k == 0:
            b = _root(g, lo, hi, 1.0)
            regions.append(ZeroFreeRegion((-math.inf, b), 0))
            continue
        if k == n:
            b = _root(g, lo, hi, 1.0)
            regions.append(ZeroFreeRegion((b, math.inf), n))
            continue
        # middle term: psi_k is strictly convex with a minimum at dpsi = 0
        dl, dh = lo, hi
        while _dpsi(ns, k, dl) > 0:
            dl -= 10.0
        while _dpsi(ns, k, dh) < 0:
            dh += 10.0
        xm = brentq(lambda x: _dpsi(ns, k, x), dl, dh, xtol=1e-15)
        if g(xm) >= 0:
            continue
        left = _root_left(g, dl, xm)
        right = _root_right(g, xm, dh)
        regions.append(ZeroFreeRegion((left, right), k))
    regions.sort(key=lambda r: r.x_interval[0])
    return regions


def _root_left(g, lo, xm):
    step = 1.0
    while g(lo) <= 0:
        lo -= step
        step *= 2
    return brentq(g, lo, xm, xtol=1e-14, rtol=1e-15)


def _root_right(g, xm, hi):
    step = 1.0
    while g(hi) <= 0:
        hi += step
        step *= 2
    return brentq(g, xm, hi, xtol=1e-14, rtol=1e-15)


def critical_strips(ns: NormalizedSum) -> list[CriticalStrip]:
    """Closed complements of the zero-free regions with flanking dominant indices."""
    regs = zero_free_regions(ns)
    out = []
    for r1, r2 in zip(regs, regs[1:]):
        a, b = r1.x_interval[1], r2.x_interval[0]
        out.append(CriticalStrip((a, max(a, b)), r1.dominating_index, r2.dominating_index))
    return out


def rf_inequalities(ns: NormalizedSum, sigma: float) -> bool:
    """The ``n + 1`` non-strict inequalities characterizing the closure of projected zeros.

    With ``a_0 = 1`` and ``a_j = |H_j| e^{w_j sigma}``: ``a_k <= sum_{j != k} a_j``
    for every ``k``.  The set of such ``sigma`` is the union of the critical
    strips (the "candidate projection set"); density of actual zero real
    parts in it additionally needs rational independence of the ``w_j``.
    """
    if not np.isfinite(sigma):
        return False
    logs = np.log(ns.abs_h) + ns.w * sigma
    m = logs.max()
    a = np.exp(logs - m)
    tot = a.sum()
    return bool(np.all(a <= (tot - a) * (1 + 1e-15)))


def strip_density(strip: CriticalStrip, ns: NormalizedSum) -> float:
    """Predicted zeros per unit height: ``|w_j - w_k| / (2 pi)``."""
    w = ns.w
    return abs(w[strip.right_index] - w[strip.left_index]) / TWO_PI


def dominance_margin(ns: NormalizedSum, k: int, x):
    """``|H_k| e^{w_k x} - sum_{j != k} |H_j| e^{w_j x}`` (lower bound for |f| when positive)."""
    x = np.asarray(x, dtype=float)
    a, w = ns.abs_h, ns.w
    terms = a[:, None] * np.exp(w[:, None] * x.ravel()[None, :])
    out = 2 * terms[k] - terms.sum(axis=0)
    return out.reshape(x.shape)


def log_strip(theta_star: float, c: float, p: int):
    """Predicate for ``Lambda_p(theta*, c) = {r e^{i theta} : r > 1, |theta - theta*| < c log r / r^p}``."""
    if c <= 0 or p < 1:
        raise ValueError("need c > 0 and p >= 1")

    def member(z) -> bool:
        r = abs(z)
        if r <= 1:
            return False
        d = (cmath.phase(z) - theta_star + math.pi) % TWO_PI - math.pi
        return abs(d) < c * math.log(r) / r**p

    return member


def strips_report(f: ExpPoly) -> dict:
    """JSON-ready summary of regions, strips and densities for an exponential sum."""
    unit, ns, rho = to_normalized_sum(f)
    regs = zero_free_regions(ns)
    strips = critical_strips(ns)
    return {
        "rotation": rho,
        "unit": {"multiplier": S.s_str(unit.multiplier.coeff(0)), "frequency": S.s_str(unit.exponent.coeff(1))},
        "normalized": {
            "multipliers": [[h.real, h.imag] for h in ns.multipliers],
            "frequencies": list(ns.frequencies),
        },
        "zero_free_regions": [r.to_dict() for r in regs],
        "critical_strips": [dict(s.to_dict(), density=strip_density(s, ns)) for s in strips],
    }
