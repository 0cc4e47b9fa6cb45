"""Partial sums of the Riemann zeta function as exponential sums.

``n^{-z} = exp(-z log n)``, so every finite Dirichlet polynomial is an
exponential sum with real frequencies ``-log n``.  Exact scalars write
``log n`` as ``sum k_p log p``, so ``log 4 = 2 log 2`` and
``log 6 = log 2 + log 3`` merge by identity.

* :func:`partial_sum` -- ``sum_{n <= M} n^{-z}``.
* :func:`thinned_product` -- ``prod_j (1 + p_j^{-z} + ... + p_j^{-N_j z})``,
  whose zeros all lie on the imaginary axis.
* :func:`smooth_partial_sum` / :func:`pi24` -- sums over smooth integers.
* :func:`axis_zero_check` -- locate zeros and split them by ``|Re z| <= tol``.
* :func:`xi0` / :func:`xi0_symmetry` -- the symmetrized product ``Xi_0``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import product as iproduct

import numpy as np
import sympy as sp

from . import scalars as S
from .expr import ONE, ZERO, ExpPoly, Polynomial, exp_of
from .zerolab import Contour, ZeroList, isolate_zeros


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    k = 2
    while k * k <= n:
        if n % k == 0:
            return False
        k += 1
    return True


@dataclass(frozen=True)
class ThinnedSpec:
    """Primes ``p_1 < ... < p_K`` with caps ``N_1, ..., N_K >= 1``."""

    primes: tuple
    caps: tuple

    def __post_init__(self):
        object.__setattr__(self, "primes", tuple(int(p) for p in self.primes))
        object.__setattr__(self, "caps", tuple(int(c) for c in self.caps))
        if not self.primes or len(self.primes) != len(self.caps):
            raise ValueError("primes and caps must be nonempty and of equal length")
        if any(not _is_prime(p) for p in self.primes):
            raise ValueError("all entries of primes must be prime")
        if any(b <= a for a, b in zip(self.primes, self.primes[1:])):
            raise ValueError("primes must be strictly increasing")
        if any(c < 1 for c in self.caps):
            raise ValueError("caps must be >= 1")

    @property
    def term_count(self) -> int:
        return math.prod(c + 1 for c in self.caps)

    def hull_interval(self) -> tuple:
        """``co(W) = [-sum_j N_j log p_j, 0]`` (exact endpoints)."""
        return (S.canon(-sum(c * sp.log(p) for p, c in zip(self.primes, self.caps))), sp.Integer(0))


def n_power(n: int, scale=1) -> ExpPoly:
    """``n^{-scale z} = exp(-scale log(n) z)``."""
    w = S.canon(-sp.sympify(scale) * sp.log(n))
    return exp_of(Polynomial((sp.Integer(0), w)))


def partial_sum(M: int) -> ExpPoly:
    """``sum_{n=1}^{M} n^{-z}``."""
    if M < 2:
        raise ValueError("M must be >= 2")
    out = ZERO
    for n in range(1, M + 1):
        out = out + n_power(n)
    return out


def geometric_factor(p: int, N: int) -> ExpPoly:
    """``1 + p^{-z} + ... + p^{-N z}``."""
    out = ZERO
    for k in range(N + 1):
        out = out + n_power(p, k)
    return out


def thinned_product(spec: ThinnedSpec) -> ExpPoly:
    """``prod_j (1 + p_j^{-z} + ... + p_j^{-N_j z})``, expanded and canonical."""
    out = ONE
    for p, N in zip(spec.primes, spec.caps):
        out = out * geometric_factor(p, N)
    return out


def thinned_sum(spec: ThinnedSpec) -> ExpPoly:
    """``sum_j n_j^{-z}`` over the multi-indices ``0 <= j_i <= N_i`` (``n_j = p^j``)."""
    out = ZERO
    for js in iproduct(*[range(c + 1) for c in spec.caps]):
        out = out + n_power(math.prod(p**j for p, j in zip(spec.primes, js)))
    return out


def smooth_partial_sum(M: int, primes=(2, 3)) -> ExpPoly:
    """``sum n^{-z}`` over ``n <= M`` whose prime factors all lie in ``primes``."""
    out = ZERO
    for n in range(1, M + 1):
        m = n
        for p in primes:
            while m % p == 0:
                m //= p
        if m == 1:
            out = out + n_power(n)
    return out


def pi24() -> ExpPoly:
    """The eleven-term sum over the 3-smooth integers up to 24.

    ``1 + 2^{-z} + 3^{-z} + 4^{-z} + 6^{-z} + 8^{-z} + 9^{-z} + 12^{-z} +
    16^{-z} + 18^{-z} + 24^{-z}``; unlike a thinned product it has zeros off
    the imaginary axis.
    """
    return smooth_partial_sum(24, (2, 3))


def _real_frequencies(f: ExpPoly) -> np.ndarray:
    if f.order > 1:
        raise ValueError("f must have order 1")
    ws = []
    for t in f.terms:
        w = complex(S.to_complex(t.exponent.coeff(1))) if t.exponent.degree >= 1 else 0j
        if abs(w.imag) > 1e-12 * max(1.0, abs(w)):
            raise ValueError("frequencies must be real")
        ws.append(w.real)
    return np.array(ws)


def axis_zero_check(f: ExpPoly, y_max: float, tol: float = 1e-8):
    """Locate the zeros of ``f`` in ``[-w_max-1, 1] x [-y_max, y_max]``.

    ``w_max`` is the largest ``|frequency|``.  Returns
    ``(on_axis_count, off_axis, all_zeros)`` where ``off_axis`` is a
    :class:`ZeroList` of the zeros with ``|Re z| > tol``.
    """
    ws = _real_frequencies(f)
    w_max = float(np.max(np.abs(ws))) if ws.size else 0.0
    region = Contour.rectangle(-w_max - 1.0, 1.0, -float(y_max), float(y_max))
    zl = isolate_zeros(f, region)
    on = sum(m for z, m in zl.zeros if abs(z.real) <= tol)
    off = ZeroList([(z, m) for z, m in zl.zeros if abs(z.real) > tol], zl.region, zl.certified)
    return on, off, zl


def xi0(spec: ThinnedSpec) -> ExpPoly:
    """``Xi_0(z) = prod_j sum_{k=0}^{N_j} p_j^{(N_j/2 - k) z}`` (half-integer frequencies are exact)."""
    out = ONE
    for p, N in zip(spec.primes, spec.caps):
        fac = ZERO
        for k in range(N + 1):
            fac = fac + n_power(p, sp.Rational(k, 1) - sp.Rational(N, 2))
        out = out * fac
    return out


def xi0_symmetry(spec: ThinnedSpec, samples=None, exact: bool = True) -> float:
    """Deviation of ``Xi_0`` from evenness.

    Exact mode compares ``Xi_0(z)`` and ``Xi_0(-z)`` as canonical
    expressions (0.0 when identical, inf otherwise).  Float mode returns
    ``max |Xi_0(z) - Xi_0(-z)| / max(1, |Xi_0(z)|)`` over ``samples``
    (default: 200 seeded points in ``|z| <= 10``).
    """
    X = xi0(spec)
    if exact:
        return 0.0 if X.equals(X.compose_linear(-1)) else math.inf
    Xf = X.to_float()
    if samples is None:
        rng = np.random.default_rng(0)
        r = 10 * np.sqrt(rng.random(200))
        samples = r * np.exp(2j * np.pi * rng.random(200))
    zs = np.asarray(samples, dtype=complex)
    a, b = Xf(zs), Xf(-zs)
    return float(np.max(np.abs(a - b) / np.maximum(1.0, np.abs(a))))


def symmetric_relation_holds(spec: ThinnedSpec) -> bool:
    """Exact identity ``G(-z) prod p_j^{-N_j z/2} = G(z) prod p_j^{N_j z/2}`` for ``G`` the thinned product."""
    G = thinned_product(spec)
    left, right = G.compose_linear(-1), G
    for p, N in zip(spec.primes, spec.caps):
        left = left * n_power(p, sp.Rational(N, 2))
        right = right * n_power(p, -sp.Rational(N, 2))
    return left.equals(right)
