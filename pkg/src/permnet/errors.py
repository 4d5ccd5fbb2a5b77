"""Exception hierarchy.

Guard violations (size caps) derive from :class:`GuardViolation`; everything
that indicates a malformed argument also derives from :class:`ValueError`.
"""


class PermnetError(Exception):
    """Base class for all errors raised by this package."""


class GuardViolation(PermnetError):
    """A computation was refused because it would exceed a size cap."""


class DimensionTooLarge(GuardViolation, ValueError):
    pass


class EnumerationTooLarge(GuardViolation, ValueError):
    pass


class MultiplicityMismatch(PermnetError, ValueError):
    pass


class PatternMismatch(PermnetError, ValueError):
    pass


class IndexOutOfRange(PermnetError, ValueError):
    pass


class DimensionMismatch(PermnetError, ValueError):
    pass


class PhotonDeficit(PermnetError, ValueError):
    pass


class NotUnitary(PermnetError, ValueError):
    pass


class NotNormalized(PermnetError, ValueError):
    pass


class OutOfRange(PermnetError, ValueError):
    pass
