from __future__ import annotations


class PrlabError(Exception):
    """Root of every error raised by prlab."""


class InvalidArgumentError(PrlabError, ValueError):
    """An argument violates an operation's precondition."""


class ResourceLimitError(PrlabError):
    """An input exceeds one of the exhaustive-search caps."""

    def __init__(self, what: str, limit_name: str, limit: int, value: int) -> None:
        super().__init__(f"{what}: {value} exceeds {limit_name}={limit}")
        self.limit_name = limit_name
        self.limit = limit
        self.value = value


class ParseError(PrlabError):
    """Malformed pattern token or input file."""

    def __init__(self, message: str, line: int | None = None) -> None:
        super().__init__(message if line is None else f"line {line}: {message}")
        self.line = line


class PatternParseError(ParseError):
    pass


class ColoringParseError(ParseError):
    pass


class ConfigError(PrlabError):
    """Invalid search budget or solver configuration."""


class SatSolverError(PrlabError):
    """The external SAT binary failed or produced unreadable output."""


__all__ = [
    "PrlabError",
    "InvalidArgumentError",
    "ResourceLimitError",
    "ParseError",
    "PatternParseError",
    "ColoringParseError",
    "ConfigError",
    "SatSolverError",
]
