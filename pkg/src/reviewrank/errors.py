"""Exception hierarchy shared by the whole engine.

ValidationError subclasses mean "your input data is bad" (CLI exit code 1),
UsageError means "you called the tool wrong" (exit code 2). Anything else
escaping to the CLI is an internal error (exit code 3).
"""


class EngineError(Exception):
    """Base class for all errors raised by this package."""


class ValidationError(EngineError):
    """Input data violates the corpus/fixture contracts."""


class RangeError(ValidationError):
    """A numeric value or rating level is outside the scale's range."""


class CompletenessError(ValidationError):
    """A (expert, alternative) pair required in complete mode has no review."""


class DuplicateReviewError(ValidationError):
    """Two reviews share the same (expert, alternative) pair."""


class SchemaError(ValidationError):
    """A file does not match the expected column/field layout."""


class MappingError(ValidationError):
    """An external category label has no entry in the active mapping."""


class ExchangeError(ValidationError):
    """An opinion-exchange line is malformed or references an unknown review."""


class UnknownLabelError(EngineError):
    """A matrix lookup used a row or column label that does not exist."""


class UsageError(EngineError):
    """The operation was invoked with arguments that can never be valid."""
