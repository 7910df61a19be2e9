"""Exception types shared across the package."""

from __future__ import annotations


class DomainError(ValueError):
    """An argument lies outside the domain of an operation (r <= 0, k < 0, ...)."""


class PreconditionError(ValueError):
    """Input data violates a documented precondition."""


class NonFiniteError(ArithmeticError):
    """An integrand produced a non-finite value at a quadrature node."""

    def __init__(self, message: str, node: tuple[float, float, float] | None = None):
        super().__init__(message)
        self.node = node


class ParseError(ValueError):
    """Syntax error in a polynomial expression.

    ``offset`` is the byte offset (UTF-8) of the offending token and
    ``expected`` the set of token descriptions that would have been accepted.
    """

    def __init__(self, message: str, offset: int, expected: frozenset[str] = frozenset()):
        self.offset = offset
        self.expected = frozenset(expected)
        detail = message
        if self.expected:
            detail += f" (expected one of: {', '.join(sorted(self.expected))})"
        super().__init__(f"{detail} at offset {offset}")
