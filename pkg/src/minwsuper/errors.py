"""Shared exception types; the CLI maps these onto exit codes."""


class UnsupportedFamilyError(ValueError):
    """Requested algebra family is outside the supported list."""


class PreconditionError(ValueError):
    """An operation was called with inputs violating its contract."""


class ConsistencyError(RuntimeError):
    """An internal cross-check failed; signals a bug, not bad input."""
