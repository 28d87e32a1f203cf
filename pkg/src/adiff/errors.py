"""Exception types shared across the package.

Every error raised on purpose derives from :class:`AdiffError`, so callers
(and the CLI) can distinguish expected failures from genuine bugs.
"""


class AdiffError(Exception):
    """Base class for all errors raised by this package."""


class NonFiniteInput(AdiffError):
    """An argument that must be a finite real was NaN or infinite."""


class NonPositiveShift(AdiffError):
    """A shift (h, period, step) that must be positive was not."""


class ZeroLambda(AdiffError):
    """A factor coefficient that must be nonzero was zero."""


class PoleError(AdiffError):
    """A special function was evaluated at one of its poles."""


class DomainError(AdiffError):
    """An argument lies outside the mathematical domain of the operation."""


class CapExceeded(AdiffError):
    """A combinatorial argument exceeds the supported table size."""


class BoundsError(AdiffError):
    """A summation range has its lower bound above its upper bound."""


class NoConvergence(AdiffError):
    """An iterative sum hit its term limit before meeting its tail criterion."""


class TermBudgetExceeded(AdiffError):
    """A nested sum would need more term evaluations than the budget allows."""


class CrossCheckError(AdiffError):
    """Two independent computations of the same quantity disagree."""


class SignViolation(AdiffError):
    """A function required to be sign-constrained changed sign at a sample."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class PeriodicityViolation(AdiffError):
    """A function required to be (anti)periodic failed the check at a sample."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class ParseError(AdiffError):
    """Expression text could not be parsed.

    Attributes:
        position: 0-based character offset of the offending token.
        message: human-readable description.
        expected: optional description of what would have been accepted.
    """

    def __init__(self, position, message, expected=None):
        self.position = position
        self.message = message
        self.expected = expected
        detail = f"{message} (at position {position})"
        if expected:
            detail += f", expected {expected}"
        super().__init__(detail)


class EvalError(AdiffError):
    """Expression evaluation failed at a specific node.

    ``kind`` is one of ``"division-by-zero"``, ``"domain"``, ``"pole"``.
    ``node`` is the AST node that failed; ``position`` its source offset
    when the tree came out of the parser, else None.
    """

    DIVISION_BY_ZERO = "division-by-zero"
    DOMAIN = "domain"
    POLE = "pole"

    def __init__(self, kind, message, node=None):
        self.kind = kind
        self.node = node
        self.position = getattr(node, "pos", None)
        detail = f"{kind}: {message}"
        if self.position is not None:
            detail += f" (at position {self.position})"
        super().__init__(detail)
