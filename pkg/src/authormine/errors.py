"""Exception types shared across the package."""


class AuthormineError(Exception):
    """Base class for all errors raised by this package."""


class ConfigError(AuthormineError):
    """Invalid or unreadable configuration (flags, rules, alias map, releases)."""


class LogParseError(AuthormineError):
    """A commit-log line is not valid JSON."""

    def __init__(self, message: str, line_no: int):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


class LogSchemaError(LogParseError):
    """A commit-log record is valid JSON but violates the record schema."""

    def __init__(self, message: str, line_no: int, field: str):
        super().__init__(f"field '{field}': {message}", line_no)
        self.field = field


class BoundaryNotFoundError(AuthormineError):
    """A release boundary commit never appeared in the record stream."""
