"""Exception hierarchy shared by all modules."""


class ExpmeanError(Exception):
    """Base class for all errors raised by this package."""


class InputError(ExpmeanError, ValueError):
    """A caller-supplied value violates a documented precondition."""


class NumericalError(ExpmeanError, RuntimeError):
    """A numeric routine failed to reach its accuracy target."""

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class ResourceLimitError(ExpmeanError, RuntimeError):
    """A search exceeded its configured node or iteration budget."""


class ContourTooCloseError(NumericalError):
    """A contour passes too close to a zero for reliable quadrature."""


class ContourOnZeroError(NumericalError):
    """A sampled contour point landed on (or numerically at) a zero."""
