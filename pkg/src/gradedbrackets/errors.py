"""Exception types shared across the package."""


class GradedBracketError(Exception):
    """Base class for all errors raised by this package."""


class ChartMismatch(GradedBracketError):
    pass


class UnknownCoordinate(GradedBracketError):
    pass


class SpaceMismatch(GradedBracketError):
    pass


class DegreeError(GradedBracketError):
    pass


class StructureError(GradedBracketError):
    """An algebroid, cocycle or Jacobi structure fails a required identity."""


class NotSkewError(GradedBracketError):
    pass


class NotFirstOrderError(GradedBracketError):
    pass


class InhomogeneousError(GradedBracketError):
    pass


class ParseError(GradedBracketError):
    """Syntax error in scalar or document text.

    ``line`` and ``column`` are 1-based when known.
    """

    def __init__(self, message, line=None, column=None):
        self.message = message
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}, column {column}: "
        elif column is not None:
            where = f"column {column}: "
        super().__init__(where + message)
