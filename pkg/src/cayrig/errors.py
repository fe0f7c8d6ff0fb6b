"""Exception types shared across the package."""


class CayrigError(Exception):
    """Base class for all package errors."""


class GroupSpecError(CayrigError):
    """Malformed group description (bad table, bad parameters, unknown family)."""


class BudgetError(CayrigError):
    """A configurable size or work budget was exceeded."""


class PreconditionError(CayrigError):
    """An operation's hypothesis is violated (names the failing hypothesis)."""


class SearchError(CayrigError):
    """A guided search exhausted its candidates without a verified result."""

    def __init__(self, message, histogram=None):
        super().__init__(message)
        self.histogram = dict(histogram or {})
