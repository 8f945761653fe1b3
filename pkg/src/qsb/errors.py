"""Exception types raised across the package."""


class QSBError(Exception):
    """Base class for all package errors."""


class RealInput(QSBError, ValueError):
    """A real quaternion was given where an imaginary unit is needed."""


class OutOfDomain(QSBError, ValueError):
    """Evaluation point lies outside the domain of the function."""


class NotSliceValued(QSBError, ValueError):
    """A series has coefficients outside span{1, i} of its frame."""


class BadOrder(QSBError, ValueError):
    """Invalid quadrature order."""


class IllConditioned(QSBError, ArithmeticError):
    """Gram matrix condition number exceeds the allowed bound."""


class NearBoundary(QSBError, ValueError):
    """Kernel evaluation too close to the boundary for series truncation."""


class DegreeTooHigh(QSBError, ValueError):
    """Polynomial degree exceeds the kernel truncation."""


class GramNotReal(QSBError, ArithmeticError):
    """Quadrature Gram entries carry a non-negligible imaginary part."""


class ParseError(QSBError, ValueError):
    """Malformed JSON input or command-line specification."""
