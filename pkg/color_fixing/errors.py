# color_fixing/errors.py
"""
Exception hierarchy shared by the solvers, the file formats and the CLI.
"""

from typing import Optional


class ColorFixError(Exception):
    """Base class for all errors raised by color_fixing."""


class MalformedInputError(ColorFixError, ValueError):
    """Input objects are inconsistent (missing vertex, colour outside the palette, ...)."""


class ParseError(MalformedInputError):
    """A text file does not follow its declared format."""

    def __init__(self, message: str, line_number: Optional[int] = None):
        self.line_number = line_number
        if line_number is not None:
            message = f"line {line_number}: {message}"
        super().__init__(message)


class TreeDecompositionError(MalformedInputError):
    """A tree decomposition violates one of its defining conditions."""

    def __init__(self, condition: str, detail: str = ""):
        self.condition = condition
        message = f"invalid tree decomposition ({condition})"
        if detail:
            message += f": {detail}"
        super().__init__(message)


class SizeGuardError(ColorFixError):
    """An instance exceeds the configured size guard of an exponential routine."""

    def __init__(self, what: str, size, limit):
        self.what = what
        self.size = size
        self.limit = limit
        super().__init__(f"{what} = {size} exceeds the guard {limit} (use force to override)")


class InfeasibleError(ColorFixError):
    """The requested quantity is infinite because r < chi(G)."""
