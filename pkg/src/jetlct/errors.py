"""Exception hierarchy shared by every layer of the package."""

from __future__ import annotations


class JetLctError(Exception):
    """Base class for all package errors."""


class FieldMismatchError(JetLctError, TypeError):
    """Operands live in different coefficient fields."""


class RingMismatchError(JetLctError, TypeError):
    """Polynomials belong to different variable contexts."""


class ParseError(JetLctError, ValueError):
    """Malformed polynomial or ideal-file text.

    ``line`` and ``column`` are 1-based; either may be ``None`` when unknown.
    """

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.message = message
        self.line = line
        self.column = column
        super().__init__(str(self))

    def __str__(self) -> str:
        where = []
        if self.line is not None:
            where.append(f"line {self.line}")
        if self.column is not None:
            where.append(f"column {self.column}")
        if where:
            return f"{', '.join(where)}: {self.message}"
        return self.message


class IneligibleIdealError(JetLctError, ValueError):
    """The ideal violates a precondition (constant terms, coefficients, ...)."""


class ResourceExhausted(JetLctError):
    """A Groebner computation hit its degree, pair or time limit.

    ``stats`` carries the partial statistics gathered before giving up.
    """

    def __init__(self, reason: str, stats=None):
        self.reason = reason
        self.stats = stats
        super().__init__(reason)


class GroebnerVerificationError(JetLctError, AssertionError):
    """A computed basis failed its own S-pair / membership self-check."""


class InvariantViolation(JetLctError, AssertionError):
    """A run produced data contradicting a proven inequality (a bug)."""
