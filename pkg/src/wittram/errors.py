"""Exception types shared across the package."""


class ParameterError(ValueError):
    """Raised when inputs are mismatched or outside the supported range."""


class NotInvertibleError(ArithmeticError):
    """Raised when an inverse is requested for a non-unit."""


class PrecisionError(ArithmeticError):
    """Raised when the tracked precision is too small for the request.

    ``required`` carries the precision that would have sufficed, when known.
    """

    def __init__(self, message, required=None):
        super().__init__(message)
        self.required = required


class HypothesisFailure(ValueError):
    """A precondition of a construction does not hold for the given data.

    ``entry`` names the offending coefficient index when there is one.
    """

    def __init__(self, message, entry=None):
        super().__init__(message)
        self.entry = entry


class UnknownEntry(KeyError):
    """A coefficient outside the range where a table is known was requested."""
