class L3KitError(Exception):
    """Base class for toolkit errors."""


class ShapeError(L3KitError, ValueError):
    """Structure constants or operators have inconsistent dimensions."""


class PreconditionError(L3KitError, ValueError):
    """An input fails the identity a construction requires."""

    def __init__(self, message: str, report=None):
        super().__init__(message)
        self.report = report
