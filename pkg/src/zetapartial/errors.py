"""Exception hierarchy shared by all zetapartial modules."""


class ZetaPartialError(Exception):
    """Base class for every error raised by this package."""


class DomainError(ZetaPartialError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class CapacityError(ZetaPartialError, MemoryError):
    """A table would exceed the configured memory cap."""


class RangeError(ZetaPartialError, ArithmeticError):
    """A query or intermediate value falls outside a representable range."""


class BoundaryZeroError(ZetaPartialError):
    """The polynomial (nearly) vanishes on a contour edge.

    ``point`` is the offending boundary sample so callers can move the contour.
    """

    def __init__(self, message, point=None):
        super().__init__(message)
        self.point = point


class RefinementFailed(ZetaPartialError):
    """Zero localization did not converge within the configured depth."""

    def __init__(self, message, leaf=None):
        super().__init__(message)
        self.leaf = leaf
