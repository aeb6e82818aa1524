"""Exception types raised across the package."""


class ZetacorrError(Exception):
    """Base class for all package errors."""


class DomainError(ZetacorrError, ValueError):
    """An argument lies outside the region where an operation is defined."""


class PoleError(DomainError):
    """Evaluation requested at a pole."""


class ConvergenceError(ZetacorrError, ArithmeticError):
    """A requested tolerance cannot be reached at working precision."""


class CoverageError(ZetacorrError, ValueError):
    """A computation needs ordinates beyond the catalog's coverage ceiling."""


class ParseError(ZetacorrError, ValueError):
    """A zero-table or multiset file could not be parsed."""

    def __init__(self, message, lineno=None):
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)
        self.lineno = lineno


class MonotonicityError(ParseError):
    """Ordinates in a zero table are out of order."""


class MissedZeroError(ZetacorrError, RuntimeError):
    """The zero finder's count disagrees with the counting-function main term."""


class QuadratureDisagreement(ZetacorrError, ArithmeticError):
    """A numerical quadrature disagrees with the corresponding closed form."""


class MemoryBudgetError(ZetacorrError, MemoryError):
    """A materialized object would exceed the configured memory budget."""


class ConfigError(ZetacorrError, ValueError):
    """An experiment configuration failed validation."""


class StanzaError(ZetacorrError):
    """A module error raised while running one stanza of an experiment."""

    def __init__(self, stanza, error):
        self.stanza = stanza
        self.error = error
        super().__init__(f"stanza {stanza!r} failed: {type(error).__name__}: {error}")
