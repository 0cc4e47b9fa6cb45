"""Argument-principle zero counting and zero isolation.

The winding number of ``f`` along a positively oriented contour is tracked
from the phase of the scaled mantissa returned by
:meth:`ExpPoly.scaled`, so contours at large radius do not overflow.  Zeros
are isolated by recursive bisection of rectangles (winding of one half is
computed, the other follows by additivity) and refined with Newton's method
on the symbolic derivative.
"""
from __future__ import annotations

import cmath
import csv
import io
import json
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .errors import ConvergenceFailure, ZeroOnContour
from .expr import ExpPoly, RationalExpPoly
from .hullgeo import critical_rays, hull_of
from .strips import CriticalStrip, log_strip, to_normalized_sum

TWO_PI = 2.0 * math.pi
MAX_SEGMENTS = 2**20
#: relative modulus |f| / max_j |term_j| below which f counts as zero on a contour
ZERO_RATIO = 1e-13
#: located zeros closer than this to the origin are treated as zeros at 0
ORIGIN_SNAP = 1e-9


def max_workers() -> int:
    """Parallelism cap from ``EXPPOLY_THREADS`` (default: available CPUs)."""
    v = os.environ.get("EXPPOLY_THREADS")
    if v:
        try:
            return max(1, int(v))
        except ValueError:
            pass
    return max(1, os.cpu_count() or 1)


def parallel_map(fn, items):
    items = list(items)
    w = min(max_workers(), len(items))
    if w <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=w) as ex:
        return list(ex.map(fn, items))


# ---------------------------------------------------------------------------
# Contours
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Contour:
    """Positively oriented contour.

    ``kind`` is one of ``"circle"`` (params ``(r,)`` or ``(r, center)``),
    ``"rectangle"`` (``(x1, x2, y1, y2)``), ``"sector"`` (``(r, theta1, theta2)``)
    or ``"strip_rect"`` (``(a, b, y1, y2)`` built from a critical strip).
    """

    kind: str
    params: tuple

    # -- constructors -------------------------------------------------------
    @staticmethod
    def circle(r: float, center: complex = 0j) -> "Contour":
        if r <= 0:
            raise ValueError("radius must be positive")
        return Contour("circle", (float(r), complex(center)))

    @staticmethod
    def rectangle(x1, x2, y1, y2) -> "Contour":
        if not (x2 > x1 and y2 > y1):
            raise ValueError("rectangle must have nonempty interior")
        return Contour("rectangle", (float(x1), float(x2), float(y1), float(y2)))

    @staticmethod
    def sector(r, theta1, theta2) -> "Contour":
        if not (r > 0 and 0 < theta2 - theta1 <= TWO_PI):
            raise ValueError("sector needs r > 0 and 0 < theta2 - theta1 <= 2 pi")
        return Contour("sector", (float(r), float(theta1), float(theta2)))

    @staticmethod
    def strip_rect(strip: CriticalStrip, y1, y2, widen: float = 1e-6) -> "Contour":
        a, b = strip.x_interval
        return Contour("strip_rect", (float(a) - widen, float(b) + widen, float(y1), float(y2)))

    # -- geometry -----------------------------------------------------------
    def pieces(self):
        """List of ``(z0, z1, kind)`` straight pieces or arcs ``(center, r, t0, t1)``."""
        k, p = self.kind, self.params
        if k == "circle":
            r, c = p
            return [("arc", c, r, 0.0, TWO_PI)]
        if k in ("rectangle", "strip_rect"):
            x1, x2, y1, y2 = p
            c = [complex(x1, y1), complex(x2, y1), complex(x2, y2), complex(x1, y2)]
            return [("line", c[i], c[(i + 1) % 4]) for i in range(4)]
        if k == "sector":
            r, t1, t2 = p
            return [
                ("line", 0j, r * cmath.exp(1j * t1)),
                ("arc", 0j, r, t1, t2),
                ("line", r * cmath.exp(1j * t2), 0j),
            ]
        raise ValueError(f"unknown contour kind {k}")

    def inflate(self, eps: float) -> "Contour":
        k, p = self.kind, self.params
        if k == "circle":
            return Contour("circle", (p[0] + eps, p[1]))
        if k in ("rectangle", "strip_rect"):
            x1, x2, y1, y2 = p
            return Contour(k, (x1 - eps, x2 + eps, y1 - eps, y2 + eps))
        if k == "sector":
            r, t1, t2 = p
            return Contour(k, (r + eps, t1, t2))
        raise ValueError(k)

    def size(self) -> float:
        k, p = self.kind, self.params
        if k == "circle":
            return p[0] + abs(p[1])
        if k in ("rectangle", "strip_rect"):
            return max(abs(v) for v in p)
        return p[0]

    def contains(self, z, margin: float = 0.0) -> bool:
        k, p = self.kind, self.params
        if k == "circle":
            return abs(z - p[1]) <= p[0] + margin
        if k in ("rectangle", "strip_rect"):
            x1, x2, y1, y2 = p
            return x1 - margin <= z.real <= x2 + margin and y1 - margin <= z.imag <= y2 + margin
        r, t1, t2 = p
        if abs(z) > r + margin:
            return False
        if abs(z) <= margin:
            return True
        a = (cmath.phase(z) - t1) % TWO_PI
        return a <= (t2 - t1) + margin / max(abs(z), 1e-300)

    def bounding_rect(self):
        k, p = self.kind, self.params
        if k == "circle":
            r, c = p
            return (c.real - r, c.real + r, c.imag - r, c.imag + r)
        if k in ("rectangle", "strip_rect"):
            return p
        r = p[0]
        return (-r, r, -r, r)

    def to_dict(self):
        p = [[v.real, v.imag] if isinstance(v, complex) else v for v in self.params]
        return {"kind": self.kind, "params": p}


def _piece_points(piece, t):
    if piece[0] == "line":
        _, a, b = piece
        return a + (b - a) * t, abs(b - a)
    _, c, r, t0, t1 = piece
    th = t0 + (t1 - t0) * t
    return c + r * np.exp(1j * th), r * abs(t1 - t0)


def _phase_rate(f: ExpPoly, z: np.ndarray) -> np.ndarray:
    """Upper estimate of |d arg(term)/dz| over the terms of ``f``."""
    rate = np.zeros(z.shape)
    for t in f.terms:
        dq = t.exponent.derivative()
        if not dq.is_zero:
            rate = np.maximum(rate, np.abs(np.polyval(dq.numeric()[::-1], z)))
    return rate


def _wrap(d):
    return (d + np.pi) % TWO_PI - np.pi


def _fun_parts(f):
    """Return a callable z -> (s, dlog) for ExpPoly or RationalExpPoly.

    ``s`` is the scaled mantissa (same phase as ``f``, modulus relative to the
    dominant term) and ``dlog`` the logarithmic derivative ``f'/f``.
    """
    if isinstance(f, RationalExpPoly):
        parts = [(f.numerator, f.numerator.derivative(), 1), (f.denominator, f.denominator.derivative(), -1)]
    else:
        parts = [(f, f.derivative(), 1)]

    def ev(z):
        s_tot = np.ones(z.shape, dtype=complex)
        dlog = np.zeros(z.shape, dtype=complex)
        for g, gp, sign in parts:
            L, s = g.scaled(z)
            if gp.is_zero:
                d = np.zeros(z.shape, dtype=complex)
            else:
                Lp, sp_ = gp.scaled(z)
                with np.errstate(all="ignore"):
                    d = sp_ / s * np.exp(Lp - L)
            s_tot = s_tot * s if sign > 0 else s_tot / np.where(s == 0, 1, s)
            if sign < 0 and np.any(np.abs(s) < ZERO_RATIO):
                s_tot = np.where(np.abs(s) < ZERO_RATIO, 0, s_tot)
            dlog = dlog + sign * d
        return s_tot, dlog

    return ev


def argument_increment(f, contour: Contour, max_segments: int = MAX_SEGMENTS) -> float:
    """Continuous change of ``arg f`` along ``contour`` (radians).

    A segment of length ``h`` is refined until the wrapped phase increment is
    below pi/2 and ``h |f'/f| <= 1`` at both ends, so zeros of any
    multiplicity close to the contour are resolved (or reported).
    """
    ev = _fun_parts(f)
    base = f.numerator if isinstance(f, RationalExpPoly) else f
    total = 0.0
    nseg = 0
    for piece in contour.pieces():
        t = np.linspace(0.0, 1.0, 129)
        z, length = _piece_points(piece, t)
        rate = _phase_rate(base, z).max()
        if isinstance(f, RationalExpPoly):
            rate = max(rate, _phase_rate(f.denominator, z).max())
        n0 = int(min(max(64, math.ceil(length * (rate + 1.0) / (math.pi / 6))), max_segments))
        t = np.linspace(0.0, 1.0, n0 + 1)
        z, _ = _piece_points(piece, t)
        s, dl = ev(z)
        floor = 1e-13 * max(1.0, contour.size()) / max(length, 1e-300)
        while True:
            if np.any(np.abs(s) < ZERO_RATIO):
                k = int(np.argmin(np.abs(s)))
                raise ZeroOnContour(f"f vanishes (numerically) near {complex(z[k])}")
            d = _wrap(np.diff(np.angle(s)))
            dt = np.diff(t)
            adl = np.abs(dl)
            with np.errstate(invalid="ignore"):
                step = dt * length * np.maximum(adl[:-1], adl[1:])
            bad = (np.abs(d) >= math.pi / 2) | ~(step <= 1.0)
            if not bad.any():
                break
            if np.any(dt[bad] < floor):
                raise ZeroOnContour("argument increment unresolved at machine resolution")
            tm = 0.5 * (t[:-1][bad] + t[1:][bad])
            zm, _ = _piece_points(piece, tm)
            sm, dlm = ev(zm)
            t = np.concatenate([t, tm])
            order = np.argsort(t, kind="mergesort")
            t = t[order]
            s = np.concatenate([s, sm])[order]
            dl = np.concatenate([dl, dlm])[order]
            z = np.concatenate([z, zm])[order]
            if len(t) > max_segments:
                raise ConvergenceFailure(f"more than {max_segments} segments needed on a contour piece")
        nseg += len(t) - 1
        total += float(np.sum(d))
    if nseg > max_segments:
        raise ConvergenceFailure(f"more than {max_segments} segments needed")
    return total


def winding_count(f, contour: Contour) -> int:
    """Number of zeros (minus poles for quotients) inside ``contour``, with multiplicity."""
    inc = argument_increment(f, contour)
    w = inc / TWO_PI
    n = round(w)
    if abs(w - n) > 0.1:
        raise ConvergenceFailure(f"non-integral winding {w:.4f}")
    return int(n)


def winding_with_retry(f, contour: Contour, retries: int = 3):
    """Winding number, inflating the contour by ``1e-6 (1 + size)`` on ZeroOnContour."""
    c = contour
    for attempt in range(retries + 1):
        try:
            return winding_count(f, c), c
        except ZeroOnContour:
            if attempt == retries:
                raise
            c = c.inflate(1e-6 * (1.0 + contour.size()))
    raise AssertionError("unreachable")


# ---------------------------------------------------------------------------
# Zero isolation
# ---------------------------------------------------------------------------


@dataclass
class ZeroList:
    """Located zeros with multiplicities.

    Attributes
    ----------
    zeros : list of (complex, int)
        Sorted by modulus, then argument in ``[0, 2 pi)``.
    region : Contour
        The region searched (after any perturbation).
    certified : bool
        True when every zero was Newton-refined with small residual and
        the multiplicities add up to the winding count of the region.
    """

    zeros: list
    region: Contour
    certified: bool = True
    clusters: list = field(default_factory=list)

    @property
    def total(self) -> int:
        return sum(m for _, m in self.zeros)

    def points(self) -> np.ndarray:
        return np.array([z for z, _ in self.zeros], dtype=complex)

    def multiplicities(self) -> np.ndarray:
        return np.array([m for _, m in self.zeros], dtype=int)

    def to_dict(self):
        return {
            "region": self.region.to_dict(),
            "certified": self.certified,
            "count": self.total,
            "zeros": [{"re": z.real, "im": z.imag, "multiplicity": m} for z, m in self.zeros],
        }

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["re", "im", "multiplicity"])
        for z, m in self.zeros:
            w.writerow([repr(z.real), repr(z.imag), m])
        return buf.getvalue()


def _sort_zeros(zs):
    return sorted(zs, key=lambda zm: (round(abs(zm[0]), 10), cmath.phase(zm[0]) % TWO_PI))


def _newton(f: ExpPoly, fp: ExpPoly, z0: complex, mult: int = 1, maxit: int = 80):
    z = complex(z0)
    for _ in range(maxit):
        L, s = f.scaled(z)
        if s == 0:
            return z, 0.0
        Lp, sp_ = fp.scaled(z)
        if sp_ == 0:
            return z, float(abs(s))
        with np.errstate(over="ignore"):
            step = mult * complex(s / sp_ * np.exp(L - Lp))
        if not np.isfinite(step):
            return z, float(abs(s))
        z -= step
        if abs(step) <= 4e-16 * max(1.0, abs(z)):
            break
    L, s = f.scaled(z)
    return z, float(abs(s))


def _multiple_zero(f, k, centre, box, margin, residual_tol, scale):
    """Try to certify a zero of multiplicity ``k`` in ``box``.

    The point is a simple zero of ``f^(k-1)``; it is accepted when ``f`` is
    negligible there and the winding number on some small circle equals ``k``.
    """
    bx1, bx2, by1, by2 = box
    g = f.derivative(k - 1)
    z, _ = _newton(g, g.derivative(), centre)
    if not (bx1 - margin <= z.real <= bx2 + margin and by1 - margin <= z.imag <= by2 + margin):
        return None
    _, s = f.scaled(z)
    if abs(s) >= residual_tol:
        return None
    size = max(bx2 - bx1, by2 - by1)
    for rho in (size, 1e-4 * scale, 1e-3 * scale, 1e-2 * scale):
        try:
            kk = winding_count(f, Contour.circle(rho, z))
        except (ZeroOnContour, ConvergenceFailure):
            continue
        if kk == k:
            return z
        if kk > k:
            return None
    return None


def _rect_winding(f, r):
    return winding_count(f, Contour("rectangle", r))


def isolate_zeros(
    f: ExpPoly,
    contour: Contour,
    tol: float = 1e-10,
    residual_tol: float = 1e-9,
    retries: int = 3,
) -> ZeroList:
    """Locate all zeros of ``f`` inside ``contour`` (closed region).

    The region's bounding rectangle is bisected recursively; a box holding
    one zero is refined by Newton from its centre.  Boxes with several zeros
    that stay together below a cluster size are treated as one multiple zero
    (modified Newton, multiplicity confirmed by winding on a small circle).
    Circles and sectors are handled through their bounding rectangle and a
    final membership filter.
    """
    if isinstance(f, RationalExpPoly):
        raise TypeError("isolate zeros of the numerator instead")
    if f.is_zero:
        raise ValueError("the zero function has no isolated zeros")
    fp = f.derivative()
    # perturb the target region if a zero sits on its boundary
    n_target, region = winding_with_retry(f, contour, retries)
    x1, x2, y1, y2 = region.bounding_rect()
    if region.kind not in ("rectangle", "strip_rect"):
        pad = 1e-3 * (1 + region.size())
        rect = (x1 - pad, x2 + pad, y1 - pad, y2 + pad)
        n_rect, rc = winding_with_retry(f, Contour("rectangle", rect), retries)
        rect = rc.params
    else:
        rect, n_rect = (x1, x2, y1, y2), n_target
    scale = max(1.0, max(abs(v) for v in rect))
    cluster = 1e-2 * scale
    found = []
    clusters = []
    certified = True
    stack = [(rect, n_rect)]
    while stack:
        box, k = stack.pop()
        if k <= 0:
            if k < 0:
                certified = False
            continue
        bx1, bx2, by1, by2 = box
        w, h = bx2 - bx1, by2 - by1
        size = max(w, h)
        centre = complex(0.5 * (bx1 + bx2), 0.5 * (by1 + by2))
        margin = 1e-9 * scale
        if k == 1:
            z, res = _newton(f, fp, centre)
            inside = bx1 - margin <= z.real <= bx2 + margin and by1 - margin <= z.imag <= by2 + margin
            if inside and res < residual_tol:
                found.append((z, 1))
                continue
        elif size < cluster:
            z = _multiple_zero(f, k, centre, box, margin, residual_tol, scale)
            if z is not None:
                found.append((z, k))
                continue
        if size < tol * scale:
            clusters.append((centre, k))
            certified = False
            continue
        # bisect along the longer side; shift the cut if it meets a zero
        for frac in (0.5, 0.4713, 0.5389, 0.4129, 0.5917):
            if w >= h:
                xm = bx1 + frac * w
                b1, b2 = (bx1, xm, by1, by2), (xm, bx2, by1, by2)
            else:
                ym = by1 + frac * h
                b1, b2 = (bx1, bx2, by1, ym), (bx1, bx2, ym, by2)
            try:
                k1 = _rect_winding(f, b1)
            except ZeroOnContour:
                continue
            stack.append((b2, k - k1))
            stack.append((b1, k1))
            break
        else:
            clusters.append((centre, k))
            certified = False
    # membership filter for non-rectangular regions
    if region.kind not in ("rectangle", "strip_rect"):
        found = [(z, m) for z, m in found if region.contains(z, 1e-12 * scale)]
    total = sum(m for _, m in found) + sum(m for _, m in clusters if region.contains(_, 0))
    if total != n_target:
        certified = False
    zl = ZeroList(_sort_zeros(found), region, certified and not clusters, clusters)
    return zl


# ---------------------------------------------------------------------------
# Counting reports
# ---------------------------------------------------------------------------


@dataclass
class CountReport:
    """Radial counts ``n(r)``, integrated ``N(r)``, predictions and residuals."""

    r_grid: np.ndarray
    counts: np.ndarray
    integrated: np.ndarray
    predicted: np.ndarray
    residuals: np.ndarray
    certified: bool = True
    method: str = "zeros"

    def to_dict(self):
        return {
            "method": self.method,
            "certified": self.certified,
            "rows": [
                {"r": float(r), "n": int(n), "N": float(N), "predicted": _opt(p), "residual": _opt(res)}
                for r, n, N, p, res in zip(self.r_grid, self.counts, self.integrated, self.predicted, self.residuals)
            ],
        }

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["r", "n", "N", "predicted", "residual"])
        for r, n, N, p, res in zip(self.r_grid, self.counts, self.integrated, self.predicted, self.residuals):
            w.writerow([repr(float(r)), int(n), repr(float(N)), "" if p is None or np.isnan(p) else repr(float(p)),
                        "" if res is None or np.isnan(res) else repr(float(res))])
        return buf.getvalue()


def _opt(v):
    return None if v is None or (isinstance(v, float) and math.isnan(v)) else float(v)


def predicted_count(f: ExpPoly, r):
    """Leading term ``q C r^q / (2 pi)`` of ``n(r, 1/f)``."""
    if f.order == 0:
        return np.zeros_like(np.asarray(r, dtype=float))
    h = hull_of(f)
    q = f.order
    return q * h.circumference * np.asarray(r, dtype=float) ** q / TWO_PI


def integrated_from_zeros(zeros, r_grid) -> np.ndarray:
    """``N(r) = sum_{0<|z_n|<=r} log(r/|z_n|) + n(0) log r`` (exact for a step function)."""
    r_grid = np.asarray(r_grid, dtype=float)
    mods = np.array([abs(z) for z, _ in zeros])
    mult = np.array([m for _, m in zeros])
    out = np.zeros_like(r_grid)
    for i, r in enumerate(r_grid):
        at0 = mods <= ORIGIN_SNAP
        inside = (mods <= r) & ~at0
        out[i] = float(np.sum(mult[inside] * np.log(r / mods[inside]))) + float(np.sum(mult[at0])) * math.log(r)
    return out


def count_report(f: ExpPoly, r_grid, integrate: str = "zeros", retries: int = 3) -> CountReport:
    """``n(r)`` by winding on circles; ``N(r)`` by exact step integration.

    ``integrate="zeros"`` isolates all zeros in the largest disc and sums
    ``log(r/|z_n|)``.  ``integrate="jensen"`` instead evaluates Jensen's formula
    (use for functions with thousands of zeros).
    """
    r_grid = np.asarray(r_grid, dtype=float)
    if np.any(np.diff(r_grid) <= 0) or np.any(r_grid <= 0):
        raise ValueError("r_grid must be positive and increasing")

    def n_at(r):
        return winding_with_retry(f, Contour.circle(r), retries)[0]

    counts = np.array(parallel_map(n_at, r_grid), dtype=int)
    certified = True
    if integrate == "zeros":
        zl = isolate_zeros(f, Contour.circle(r_grid[-1]))
        certified = zl.certified
        N = integrated_from_zeros(zl.zeros, r_grid)
        for r, n in zip(r_grid, counts):
            nz = sum(m for z, m in zl.zeros if abs(z) <= r)
            if nz != n:
                certified = False
    elif integrate == "jensen":
        from .nevan import jensen_counting

        N = np.array([jensen_counting(f, r) for r in r_grid])
    else:
        raise ValueError("integrate must be 'zeros' or 'jensen'")
    pred = predicted_count(f, r_grid)
    return CountReport(r_grid, counts, N, pred, counts - pred, certified, integrate)


def strip_count(f: ExpPoly, strip: CriticalStrip, y1: float, y2: float, widen: float = 1e-6):
    """Zeros in ``strip x [y1, y2]`` (coordinates of the normalized sum).

    Returns ``(count, predicted, deviation)`` with predicted
    ``|w_j - w_k| (y2 - y1) / (2 pi)``.
    """
    unit, ns, rho = to_normalized_sum(f)
    g = ns.to_exppoly()
    c = Contour.strip_rect(strip, y1, y2, widen)
    n, _ = winding_with_retry(g, c)
    w = ns.w
    pred = abs(w[strip.right_index] - w[strip.left_index]) * (y2 - y1) / TWO_PI
    return n, pred, n - pred


def angular_density(zl: ZeroList, theta1: float, theta2: float, lam: float):
    """Normalized sector counts ``n_Z(r, theta1, theta2) / r^lam`` at each zero modulus."""
    if lam <= 0:
        raise ValueError("lambda must be positive")
    width = (theta2 - theta1) % TWO_PI or TWO_PI
    pts = []
    for z, m in zl.zeros:
        if abs(z) <= ORIGIN_SNAP:
            continue
        a = (cmath.phase(z) - theta1) % TWO_PI
        if a <= width:
            pts.append((abs(z), m))
    pts.sort()
    out, n = [], 0
    for r, m in pts:
        n += m
        out.append((r, n / r**lam))
    return out


def _group_by_modulus(zeros, rel=1e-9):
    pts = sorted(((abs(z), z, m) for z, m in zeros if abs(z) > ORIGIN_SNAP), key=lambda t: t[0])
    groups: list[list] = []
    for r, z, m in pts:
        if groups and abs(r - groups[-1][0]) <= rel * max(1.0, r):
            groups[-1][1].append((z, m))
        else:
            groups.append([r, [(z, m)]])
    return groups


def regularity_sum(zl: ZeroList, lam: int = 1, absolute: bool = False):
    """Partial sums ``sum_{0<|z_n|<=r} z_n^{-lam}`` (or ``|z_n|^{-lam}``) after each modulus group."""
    out = []
    acc = 0j
    for r, grp in _group_by_modulus(zl.zeros):
        for z, m in grp:
            acc += m * (abs(z) ** (-lam) if absolute else z ** (-lam))
        out.append((r, acc.real if absolute else acc))
    return out


def zeros_in_disc(f: ExpPoly, r: float) -> ZeroList:
    return isolate_zeros(f, Contour.circle(r))


def outside_strip_count(f: ExpPoly, p: int, c: float, r: float) -> int:
    """Zeros (with multiplicity) in ``|z| <= r`` outside every log-strip ``Lambda_p(theta*, c)``."""
    rays = critical_rays(f)
    preds = [log_strip(t, c, p) for t in rays]
    zl = zeros_in_disc(f, r)
    return sum(m for z, m in zl.zeros if not any(P(z) for P in preds))


def multiple_zero_report(zl: ZeroList, r: float | None = None) -> dict:
    """Split counts (and integrated counts at ``r``) into simple and multiple zeros."""
    r = r if r is not None else max([abs(z) for z, _ in zl.zeros] + [1.0])
    simple = [(z, m) for z, m in zl.zeros if m == 1]
    multi = [(z, m) for z, m in zl.zeros if m >= 2]
    return {
        "n_simple": sum(m for _, m in simple),
        "n_multiple": sum(m for _, m in multi),
        "N_simple": float(integrated_from_zeros(simple, [r])[0]) if simple else 0.0,
        "N_multiple": float(integrated_from_zeros(multi, [r])[0]) if multi else 0.0,
        "r": r,
    }
