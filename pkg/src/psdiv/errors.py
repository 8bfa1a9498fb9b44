"""Exception hierarchy shared by all modules."""


class PsdivError(Exception):
    """Base class for every error raised by the package."""


class InvalidInput(PsdivError, ValueError):
    """A precondition on the input failed."""


class ParseError(InvalidInput):
    def __init__(self, message: str, position: int | None = None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


class NotPrimitive(InvalidInput):
    pass


class HyperbolicityError(InvalidInput):
    pass


class DegenerateRay(PsdivError):
    pass


class IncompleteGeometry(InvalidInput):
    """Geometric data needed by a computation was not supplied."""


class PositiveDimensional(PsdivError):
    """A polynomial system expected to be zero-dimensional has a curve of solutions."""


class NonrationalCenter(PsdivError):
    """A blow-up center is not defined over the rationals."""

    def __init__(self, message: str, where: dict | None = None, partial=None):
        super().__init__(message)
        self.where = where or {}
        self.partial = partial


class DomainViolation(PsdivError):
    pass


class ResolutionGuard(PsdivError):
    """Internal safety stop for runaway blow-up sequences."""


class InconsistentCertificates(PsdivError):
    """Two certificates that must not coexist were both produced."""
