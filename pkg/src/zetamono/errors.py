"""Exception types raised by the library.

Every library error derives from :class:`SpecialFunctionError` so callers (the
CLI in particular) can map the whole family to a single exit status.
"""


class SpecialFunctionError(Exception):
    """Base class for all library errors."""


class DomainError(SpecialFunctionError, ValueError):
    """An argument lies outside the domain where the function is defined."""


class PoleError(DomainError):
    """The argument sits exactly on a pole."""


class SingularityError(DomainError):
    """The denominator of a kernel vanishes at the evaluation point."""


class RangeError(SpecialFunctionError, ValueError):
    """An index is outside the tabulated range."""


class ConvergenceError(SpecialFunctionError, ArithmeticError):
    """An iterative method exhausted its budget before reaching tolerance."""


class ToleranceNotMet(ConvergenceError):
    """Adaptive quadrature ran out of panels before meeting the tolerance."""
