"""Exponential polynomials: symbolic core, zero geometry and value distribution."""

from .expr import (  # noqa: F401
    ExpPoly,
    ExpTerm,
    NormalizedForm,
    Polynomial,
    RationalExpPoly,
    Z,
    canonicalize,
    const,
    differentiate,
    evaluate,
    exp_of,
    normalize,
    order,
    parse,
    ring_op,
    shift,
)

__version__ = "0.1.0"
