"""Exceptions raised by the PyMini front end and interpreter."""

from __future__ import annotations


class PyMiniError(Exception):
    pass


class ParseError(PyMiniError):
    """Syntax error with position and, when known, an expected-token hint."""

    def __init__(self, message: str, line: int, col: int, expected: str | None = None):
        self.line = line
        self.col = col
        self.expected = expected
        hint = f" (expected {expected})" if expected else ""
        super().__init__(f"{message} at {line}:{col}{hint}")


class UnsupportedFeature(PyMiniError):
    """Valid Python, but outside the supported subset."""

    def __init__(self, message: str, line: int = 0, col: int = 0):
        self.line = line
        self.col = col
        where = f" at {line}:{col}" if line else ""
        super().__init__(f"{message}{where}")


class InterpError(PyMiniError):
    pass


class ArityMismatch(InterpError):
    pass


class TypeMismatch(InterpError):
    pass


class DivisionByZero(InterpError):
    pass


class Overflow(InterpError):
    pass


class StepLimitExceeded(InterpError):
    pass
