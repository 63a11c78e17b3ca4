from typing import Optional


class OrthoRankError(Exception):
    """Base class for every error raised by the package."""


class ValidationError(OrthoRankError, ValueError):
    """Raised when an input violates a documented precondition."""


class ConfigError(OrthoRankError, ValueError):
    """Raised when a setting from the environment cannot be parsed."""


class GraphFormatError(ValidationError):
    """
    Raised for malformed graph6 input.

    Args:
        message: What went wrong
        offset: Byte offset inside the graph6 line
        line: Optional 1-based line number inside a batch file
        source: Optional file name the line came from
    """

    def __init__(
        self,
        message: str,
        offset: int,
        line: Optional[int] = None,
        source: Optional[str] = None,
    ):
        self.message = message
        self.offset = offset
        self.line = line
        self.source = source
        super().__init__(str(self))

    def __str__(self) -> str:
        where = f"byte {self.offset}"
        if self.line is not None:
            where = f"line {self.line}, {where}"
        if self.source:
            where = f"{self.source}: {where}"
        return f"{where}: {self.message}"

    def at(self, line: int, source: Optional[str] = None) -> "GraphFormatError":
        return GraphFormatError(self.message, self.offset, line, source)


class BoundUndefinedError(OrthoRankError, ArithmeticError):
    """Raised when a bound expression has a non-positive denominator."""


class LimitExceededError(OrthoRankError):
    """Raised when an operation refuses an input beyond its size or retry limit."""


class InconsistencyError(OrthoRankError, RuntimeError):
    """Raised when an internal invariant fails. Always a bug."""
