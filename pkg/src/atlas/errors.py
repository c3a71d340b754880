"""Shared exception types for the engine."""


class AtlasError(Exception):
    """Base class for every error raised by this package."""


class FormatError(AtlasError):
    """A document is structurally unusable (not a bundle, missing id/type, bad JSON)."""


class ValidationError(AtlasError):
    """Content fails a semantic rule; carries a path to the offending element."""

    def __init__(self, message: str, path: str = ""):
        super().__init__(message)
        self.path = path

    def __str__(self) -> str:
        base = super().__str__()
        return f"{self.path}: {base}" if self.path else base


class NotFoundError(AtlasError):
    """Lookup by id or name matched nothing."""


class DuplicateIdError(AtlasError):
    """An id that must be unique was seen twice."""


class AmbiguousNameError(AtlasError):
    """A name or alias resolves to more than one object."""
