"""Exception hierarchy shared by all dadcert layers."""


class DadcertError(Exception):
    """Base class for every error raised by this package."""


class DimensionMismatch(DadcertError, ValueError):
    pass


class PreconditionError(DadcertError, ValueError):
    """A documented precondition of an operation does not hold."""


class OverlapError(DadcertError):
    """Two tiles of a would-be tiling intersect."""

    def __init__(self, first, second):
        self.pair = (first, second)
        super().__init__(f"cubes around {first} and {second} overlap")


class WindowTooSmall(DadcertError):
    """The known window cannot decide the question being asked."""


class BudgetExceeded(DadcertError):
    """Exhaustive enumeration would exceed its candidate budget."""


class InsufficientDepth(DadcertError):
    """An odometer tower or a point lacks the levels an operation needs."""
