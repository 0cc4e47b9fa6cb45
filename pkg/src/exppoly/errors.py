"""Exception hierarchy shared by all modules."""


class ExpPolyError(Exception):
    """Base class for computation errors raised by the library."""


class ExpressionSyntaxError(SyntaxError, ExpPolyError):
    """Malformed expression text; ``position`` is the 0-based offset."""

    def __init__(self, message, position=None, text=None):
        self.position = position
        self.text_source = text
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


class NonPolynomialExponent(ExpressionSyntaxError):
    """An exponent is not a polynomial in z."""


class NotTranscendental(ExpPolyError):
    """Operation needs at least one non-constant exponent."""


class NotCollinear(ExpPolyError):
    """Frequencies do not lie on a common line through the origin."""


class NonConstantMultipliers(ExpPolyError):
    """An exponential sum with constant multipliers was required."""


class ZeroOnContour(ExpPolyError):
    """The function (numerically) vanishes on the integration contour."""


class ConvergenceFailure(ExpPolyError):
    """An adaptive or iterative procedure exceeded its budget."""


class DegenerateQuotient(ExpPolyError):
    """The quotient g/h is constant or no normal form was found."""


class RootFindingFailure(ExpPolyError):
    """Polynomial root finding did not produce a certified factorization."""


class FactorizationIncomplete(ExpPolyError):
    """Multivariate factorization gave up; ``partial`` holds what was found."""

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class BasisMismatch(ExpPolyError):
    """A frequency is not representable in the given support basis."""


class Unsupported(ExpPolyError):
    """Input lies outside the implemented cases of an operation."""


class NonRepresentable(ExpPolyError):
    """The result is not an exponential polynomial."""
