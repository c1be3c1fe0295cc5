"""Domain errors shared across the package.

Everything raised here is a *domain* error (CLI exit status 1).  Malformed
documents that fail structural validation raise :class:`SchemaError`
instead (CLI exit status 2).
"""


class KZeroError(Exception):
    """Base class for domain errors."""


class InputError(KZeroError):
    """Structurally valid input that violates an operation's precondition."""


class GradingError(KZeroError):
    """Operation applied to a complex with the wrong kind of grading."""


class PeriodError(KZeroError):
    """Periodic operation invoked with an unsupported (odd) period."""


class ChainMapError(KZeroError):
    """Degreewise data that fails to commute with the differentials."""

    def __init__(self, message, witness_degree=None):
        super().__init__(message)
        self.witness_degree = witness_degree


class UnstableError(KZeroError):
    """A truncated computation whose answer has not stabilized."""


class SchemaError(Exception):
    """Malformed input document (wrong shape, missing keys, bad types)."""
