"""Exception types shared across the package."""


class DiagLabError(Exception):
    """Base class for all diaglab errors."""


class GroupParseError(DiagLabError, ValueError):
    """A group expression or table file could not be parsed."""


class GroupValidationError(DiagLabError, ValueError):
    """A multiplication table violates the group axioms."""


class CapExceededError(DiagLabError, RuntimeError):
    """An operation would exceed a configured size cap."""
