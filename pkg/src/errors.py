"""
Errors
Exception hierarchy shared by the quiver, rewriting and frontend layers.
"""

from typing import Optional


class GroebnerError(Exception):
    """Base class for every error raised by this package."""


class UsageError(GroebnerError, ValueError):
    """Invalid call: zero inputs, paths from another quiver, bad witnesses."""


class QuiverError(GroebnerError, ValueError):
    """Invalid quiver declaration or refused path enumeration."""


class NonAdmissibleOrderError(GroebnerError):
    """A non-well-ordered path order was used without the unsafe flag."""


class StepCapExceededError(GroebnerError):
    """Division under an unsafe order ran past its step cap."""

    def __init__(self, message: str, partial=None):
        super().__init__(message)
        self.partial = partial


class OracleInconclusiveError(GroebnerError):
    """The brute-force membership oracle cannot decide within its bound."""


class ProblemSyntaxError(GroebnerError):
    """Parse error in a problem file, carrying a 1-based line and column."""

    def __init__(self, message: str, line: int, column: int, source: Optional[str] = None):
        self.message = message
        self.line = line
        self.column = column
        self.source = source
        super().__init__(str(self))

    def __str__(self) -> str:
        prefix = f"{self.source}:" if self.source else ""
        return f"{prefix}{self.line}:{self.column}: {self.message}"
