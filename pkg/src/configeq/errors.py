class ConfigEqError(Exception):
    """Base class for errors raised by this package."""


class EngineMismatch(ConfigEqError, ValueError):
    pass


class InvalidTable(ConfigEqError, ValueError):
    pass


class NotGenerating(ConfigEqError, ValueError):
    pass


class InfiniteGroupError(ConfigEqError, ValueError):
    """An operation that needs a finite carrier got an infinite engine."""


class DomainError(ConfigEqError, KeyError):
    """Element outside the domain of a partial (ball-explicit) partition."""

    def __str__(self):
        return Exception.__str__(self)


class BudgetExceeded(ConfigEqError, RuntimeError):
    pass


class ParseError(ConfigEqError, ValueError):
    pass
