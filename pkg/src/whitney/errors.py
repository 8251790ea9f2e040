"""Exception hierarchy shared by every module of the package."""


class WhitneyError(Exception):
    """Base class for all errors raised by this package."""


class DivisionByZero(WhitneyError, ZeroDivisionError):
    pass


class ModeMixError(WhitneyError, TypeError):
    """An exact scalar met a floating one (or vice versa)."""


class DimensionMismatch(WhitneyError, ValueError):
    pass


class IndexOutOfRange(WhitneyError, IndexError):
    pass


class NotOnQuadric(WhitneyError, ValueError):
    pass


class NonUnitDirection(WhitneyError, ValueError):
    pass


class BlockStraddlesSignature(WhitneyError, ValueError):
    pass


class NodeUndefined(WhitneyError, ValueError):
    pass


class NonConstantViolation(WhitneyError, ValueError):
    """All data values are equal; the fitting problem requires a nonconstant function."""


class NotInGeneralPosition(WhitneyError):
    pass


class SingularSystem(WhitneyError):
    """The interpolation matrix is singular.

    ``pair`` holds the offending pair of point indices when two nodes coincide,
    ``zero_index`` the index of a vanishing node.
    """

    def __init__(self, message, pair=None, zero_index=None):
        super().__init__(message)
        self.pair = pair
        self.zero_index = zero_index


class NeedsPerturbation(SingularSystem):
    pass


class ToleranceUnreachable(WhitneyError):
    """Residual target not met; ``extension`` carries the best attempt, if any."""

    def __init__(self, message, extension=None, residual=None):
        super().__init__(message)
        self.extension = extension
        self.residual = residual


class MaximalityUnreachable(WhitneyError):
    def __init__(self, message, extension=None):
        super().__init__(message)
        self.extension = extension


class MissingPerturbationRecord(WhitneyError):
    pass


class ExceptionalElement(WhitneyError, ValueError):
    pass


class OutsideDomain(WhitneyError, ValueError):
    pass


class ExactModeUnsupported(WhitneyError, ValueError):
    pass
