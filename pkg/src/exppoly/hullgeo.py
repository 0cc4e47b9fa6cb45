"""Convex geometry of conjugated frequencies.

For frequencies ``w_j`` the relevant point set is ``W = {conj(w_j)}``.  Its
convex hull controls the zero distribution of an exponential polynomial:
orthogonal rays are the outer normals of hull edges, and the supporting
function ``k(theta) = max_j Re(w_j e^{i theta})`` integrates to the
circumference.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .expr import ExpPoly, NormalizedForm, normalize

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class FrequencyHull:
    """Convex hull of conjugated frequencies.

    Attributes
    ----------
    points : ndarray of complex
        The conjugated frequencies ``conj(w_j)`` (plus 0 if requested).
    vertices : ndarray of complex
        Hull vertices, counter-clockwise, starting from the lexicographic
        minimum.  A segment has two vertices, a point one.
    circumference : float
        Perimeter; a segment counts twice its length.
    orthogonal_angles : ndarray of float
        Outer-normal angles of the edges, sorted in ``[0, 2 pi)``.
    is_segment : bool
        True when the hull is a non-degenerate line segment.
    """

    points: np.ndarray
    vertices: np.ndarray
    circumference: float
    orthogonal_angles: np.ndarray
    is_segment: bool

    @property
    def frequencies(self) -> np.ndarray:
        """Un-conjugated frequencies of the vertices."""
        return np.conj(self.vertices)

    def edges(self):
        """List of (start, end, outer normal angle) for each edge."""
        v = self.vertices
        out = []
        if len(v) < 2:
            return out
        n = len(v)
        for k in range(n):
            a, b = v[k], v[(k + 1) % n]
            out.append((a, b, _normal_angle(a, b)))
        return out

    def to_dict(self) -> dict:
        return {
            "vertices": [[float(p.real), float(p.imag)] for p in self.vertices],
            "circumference": float(self.circumference),
            "orthogonal_angles": [float(a) for a in self.orthogonal_angles],
            "is_segment": bool(self.is_segment),
        }


def _cross(o, a, b) -> float:
    return (a.real - o.real) * (b.imag - o.imag) - (a.imag - o.imag) * (b.real - o.real)


def _normal_angle(a: complex, b: complex) -> float:
    """Outer normal of edge a->b of a counter-clockwise polygon."""
    d = b - a
    n = complex(d.imag, -d.real)  # rotate by -90 degrees
    return math.atan2(n.imag, n.real) % TWO_PI


def build_hull(points, include_origin: bool = False) -> FrequencyHull:
    """Monotone-chain convex hull of ``points`` (already conjugated).

    Collinear boundary points are dropped from the vertex list; the
    collinearity tolerance is ``1e-12`` relative to the hull diameter.
    """
    pts = np.atleast_1d(np.asarray(points, dtype=complex))
    if pts.size == 0 and not include_origin:
        raise ValueError("build_hull needs at least one point")
    if include_origin:
        pts = np.concatenate([pts, [0j]])
    uniq = sorted(set((float(p.real), float(p.imag)) for p in pts))
    P = [complex(x, y) for x, y in uniq]
    diam = max((abs(p - q) for p in P for q in P), default=0.0)
    tol = 1e-12 * max(diam, 1e-300) ** 2
    if len(P) == 1 or diam == 0.0:
        return FrequencyHull(pts, np.array(P[:1], dtype=complex), 0.0, np.array([]), False)

    def chain(seq):
        out = []
        for p in seq:
            while len(out) >= 2 and _cross(out[-2], out[-1], p) <= tol:
                out.pop()
            out.append(p)
        return out

    lower = chain(P)
    upper = chain(reversed(P))
    verts = lower[:-1] + upper[:-1]
    if len(verts) <= 2:
        # all points collinear: segment between the two extremes
        a, b = P[0], P[-1]
        verts = [a, b]
        L = abs(b - a)
        angs = sorted([_normal_angle(a, b), _normal_angle(b, a)])
        return FrequencyHull(pts, np.array(verts, dtype=complex), 2.0 * L, np.array(angs), True)
    v = np.array(verts, dtype=complex)
    perim = float(np.sum(np.abs(np.roll(v, -1) - v)))
    angs = sorted(_normal_angle(v[k], v[(k + 1) % len(v)]) for k in range(len(v)))
    return FrequencyHull(pts, v, perim, np.array(angs), False)


def hull_of(f, include_origin: bool = False) -> FrequencyHull:
    """Hull of the conjugated leading frequencies of ``f`` (ExpPoly or NormalizedForm).

    The frequency 0 is included when the sub-order tail ``F_0`` is nonzero;
    ``include_origin=True`` always adds it (giving ``W_0``).
    """
    nf = f if isinstance(f, NormalizedForm) else normalize(f)
    w = nf.hull_frequencies(include_tail=True)
    return build_hull(np.conj(w), include_origin=include_origin)


def supporting_function(h: FrequencyHull, theta):
    """``k(theta) = max_j Re(w_j e^{i theta})`` with ``w_j`` un-conjugated."""
    th = np.asarray(theta, dtype=float)
    w = np.conj(h.vertices)
    vals = np.max(np.real(w[:, None] * np.exp(1j * th.ravel())[None, :]), axis=0)
    vals = vals.reshape(th.shape)
    return float(vals) if np.ndim(vals) == 0 else vals


def circumference_by_quadrature(h: FrequencyHull, nodes: int = 64, tol: float = 1e-12) -> float:
    """Integrate ``k(theta)`` over ``[0, 2 pi]`` with Gauss-Legendre per smooth arc.

    The interval is split at the orthogonal angles (the cusps of ``k``); on
    each arc ``nodes`` points are used, doubling until the total changes by
    less than ``tol``.
    """
    if nodes < 64:
        raise ValueError("nodes must be >= 64")
    if len(h.vertices) <= 1:
        # k is a single cosine wave; its integral vanishes
        return 0.0
    cuts = np.concatenate([[0.0], np.sort(h.orthogonal_angles), [TWO_PI]])
    cuts = np.unique(cuts)

    def integrate(n):
        x, wts = np.polynomial.legendre.leggauss(n)
        total = 0.0
        for a, b in zip(cuts[:-1], cuts[1:]):
            if b - a <= 0:
                continue
            t = 0.5 * (b - a) * x + 0.5 * (b + a)
            total += 0.5 * (b - a) * float(np.dot(wts, supporting_function(h, t)))
        return total

    n = nodes
    prev = integrate(n)
    for _ in range(6):
        n *= 2
        cur = integrate(n)
        if abs(cur - prev) < tol:
            return cur
        prev = cur
    return prev


def indicator(nf: NormalizedForm, theta):
    """Phragmen-Lindelof indicator ``h_f(theta) = max_j Re(w_j e^{i q theta})``.

    Includes the frequency 0 when the tail of the normal form is nonzero.
    """
    w = nf.hull_frequencies(include_tail=True)
    if w.size == 0:
        raise ValueError("normal form has no frequencies")
    th = np.asarray(theta, dtype=float)
    vals = np.max(np.real(w[:, None] * np.exp(1j * nf.q * th.ravel())[None, :]), axis=0)
    vals = vals.reshape(th.shape)
    return float(vals) if np.ndim(vals) == 0 else vals


def dedup_angles(angles, tol: float = 1e-12):
    """Sort angles into ``[0, 2 pi)`` and merge those within ``tol`` (cyclically)."""
    a = np.sort(np.mod(np.asarray(angles, dtype=float), TWO_PI))
    out: list[float] = []
    for x in a:
        if TWO_PI - x < tol:
            x = 0.0
        if not out or abs(x - out[-1]) > tol:
            out.append(float(x))
    if len(out) > 1 and abs(out[0] + TWO_PI - out[-1]) <= tol:
        out.pop()
    return sorted(out)


def critical_rays(nf, tol: float = 1e-12) -> list[float]:
    """Critical-ray angles ``(theta_perp + 2 k pi)/q``, deduplicated and sorted."""
    if not isinstance(nf, NormalizedForm):
        nf = normalize(nf)
    h = hull_of(nf)
    if len(h.vertices) < 2:
        return []
    q = nf.q
    rays = [(t + TWO_PI * k) / q for t in h.orthogonal_angles for k in range(q)]
    return dedup_angles(rays, tol)


def polygon_perimeter(points) -> float:
    """Circumference of the hull of ``points`` (segment counted twice)."""
    return build_hull(points).circumference
