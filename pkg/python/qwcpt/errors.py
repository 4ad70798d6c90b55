"""
    Exception hierarchy shared by every `qwcpt` module.
"""

from typing import Optional


class QwcptError(Exception):
    """Root of all errors raised by the package."""


class ConfigurationError(QwcptError):
    """Bad user input: parameters, documents, files. CLI exit code 2."""


class SolverError(QwcptError):
    """The linear algebra could not produce a unique answer. CLI exit code 3."""


class InvalidParams(ConfigurationError):
    pass


class NotHermitian(ConfigurationError):
    pass


class RangeError(ConfigurationError):
    pass


class UnknownKey(ConfigurationError):
    pass


class UnknownFigure(ConfigurationError):
    pass


class FormatError(ConfigurationError):
    pass


class EmptySelection(ConfigurationError):
    pass


class GridTooSmall(ConfigurationError):
    pass


class GridNotCoveringZero(ConfigurationError):
    pass


class ParseError(ConfigurationError):
    """
    Malformed config document. `line` and `column` are 1-based and point
    either at the syntax error or at the key whose value was rejected.
    """

    def __init__(self, message: str, line: int = 0, column: int = 0):
        self.line = line
        self.column = column
        super().__init__(f'{message} (line {line}, column {column})')


class DegenerateSteadyState(SolverError):
    """
    The stationary system has no unique solution. When raised from a sweep,
    `parameter` and `value` name the grid point that failed.
    """

    def __init__(self, message: str, parameter: Optional[str] = None, value: Optional[float] = None):
        self.parameter = parameter
        self.value = value
        if parameter is not None:
            message = f'{message} at {parameter}={value!r}'
        super().__init__(message)


class SingularStep(SolverError):
    pass
