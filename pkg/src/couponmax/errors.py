"""Exception types shared across the package.

Domain and range violations are plain ``ValueError``; the two classes here
carry extra state the caller may want to inspect.
"""


class ConvergenceError(ArithmeticError):
    """A numerical procedure could not meet its requested tolerance.

    ``value`` and ``error_estimate`` hold the best partial result, so callers
    (the CLI in particular) can still report it with a flag.
    """

    def __init__(self, message, value=float("nan"), error_estimate=float("inf")):
        super().__init__(message)
        self.value = value
        self.error_estimate = error_estimate


class ResourceError(RuntimeError):
    """Requested work exceeds a configured budget."""
