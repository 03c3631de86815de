"""Exception hierarchy shared across the package."""


class BlowupLabError(Exception):
    """Base class for all package errors."""


class StructureError(BlowupLabError):
    """Operands are structurally incompatible (dimension, ring, or table shape)."""


class DomainError(BlowupLabError):
    """An argument violates an operation's precondition."""


class ParseError(BlowupLabError):
    """A document or expression failed to parse."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class JacobiError(BlowupLabError):
    """A bracket table fails the Jacobi identity."""

    def __init__(self, violations):
        triples = ", ".join(str(triple) for triple, _ in violations)
        super().__init__(f"Jacobi identity fails on triples: {triples}")
        self.violations = violations


class InternalError(BlowupLabError):
    """An internal consistency check failed; this signals a bug, not bad input."""


class DisagreementError(InternalError):
    """Two independent computations of the same quantity disagree."""


class WitnessSearchError(BlowupLabError):
    """A witness search hit its sample cap without finding the guaranteed witness."""


class UsageError(BlowupLabError):
    """Invalid command-line usage."""
