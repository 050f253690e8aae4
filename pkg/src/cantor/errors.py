"""Shared exception types.

The service layer maps these onto HTTP status codes (ValidationError and
ConfigError -> 400, NotFoundError -> 404, ConflictError -> 409), so library
code should raise the most specific one that applies.
"""


class CantorError(Exception):
    """Base class for all toolkit errors."""


class ValidationError(CantorError):
    """A value violates a structural invariant (malformed IRI, bad rate...)."""


class ParseError(CantorError):
    """A document could not be parsed.

    Carries the 1-based line number (text formats) or byte offset (binary
    formats) when known.
    """

    def __init__(self, message, line=None, offset=None):
        self.line = line
        self.offset = offset
        where = ""
        if line is not None:
            where = f" (line {line})"
        elif offset is not None:
            where = f" (byte offset {offset})"
        super().__init__(f"{message}{where}")


class ConfigError(CantorError):
    """A configuration references something unknown or inconsistent."""


class NotFoundError(CantorError):
    """A referenced resource, concept or mapping does not exist."""


class ConflictError(CantorError):
    """An operation collides with existing state (e.g. duplicate mapping)."""
