"""Exception types raised across the package.

The CLI maps ``InvalidInputError`` to exit code 1 and ``ResourceLimitError``
to exit code 3.
"""


class MSDError(Exception):
    """Base class for all package errors."""


class InvalidInputError(MSDError, ValueError):
    pass


class ParseError(InvalidInputError):
    def __init__(self, message, line=None, source=None):
        self.message = message
        self.line = line
        self.source = source
        where = ""
        if source is not None:
            where += f"{source}:"
        if line is not None:
            where += f"{line}:"
        super().__init__(f"{where} {message}" if where else message)


class RankMismatchError(InvalidInputError):
    pass


class NotSelfOrthogonalError(InvalidInputError):
    pass


class EvenLengthError(InvalidInputError):
    pass


class DependentRowsError(InvalidInputError):
    pass


class NonCommutingRowsError(InvalidInputError):
    def __init__(self, i, j):
        self.pair = (i, j)
        super().__init__(f"rows {i} and {j} do not commute")


class LogicalNotInDualError(InvalidInputError):
    pass


class DegenerateShorteningError(InvalidInputError):
    pass


class UnsupportedError(InvalidInputError):
    pass


class ResourceLimitError(MSDError):
    pass


class InexactDivisionError(MSDError, ArithmeticError):
    pass


class InconsistentEnumeratorError(MSDError):
    pass


class NotDistillableError(MSDError):
    pass


class ZeroSuccessProbabilityError(MSDError, ZeroDivisionError):
    pass
