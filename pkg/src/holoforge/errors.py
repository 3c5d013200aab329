"""Engine error hierarchy.

Every error carries a stable ``code`` string that is also the value surfaced
on wire messages and interpreter reports, so tests and clients can match on
it without parsing prose.
"""

from __future__ import annotations


class EngineError(Exception):
    """Base class for all engine errors."""

    code = "ENGINE_ERROR"

    def __init__(self, message: str = ""):
        super().__init__(message or self.code)
        self.message = message or self.code


class DuplicateNameError(EngineError):
    code = "DUPLICATE_NAME"


class OutOfBoundsError(EngineError):
    code = "OUT_OF_BOUNDS"


class OverlapError(EngineError):
    code = "OVERLAP"


class DegenerateExtentsError(EngineError):
    code = "DEGENERATE_EXTENTS"


class NonpositiveMassError(EngineError):
    code = "NONPOSITIVE_MASS"


class UnknownJointError(EngineError):
    code = "UNKNOWN_JOINT"


class UnknownEntityError(EngineError):
    code = "UNKNOWN_ENTITY"


class EmptyLabelError(EngineError):
    code = "EMPTY_LABEL"


class EmptyCompletionError(EngineError):
    code = "EMPTY_COMPLETION"


class ClientTimeoutError(EngineError):
    code = "CLIENT_TIMEOUT"


class ClientError(EngineError):
    code = "CLIENT_ERROR"


class AssetNotFoundError(EngineError):
    code = "NOT_FOUND"


class AllAttemptsTimedOutError(EngineError):
    code = "ALL_ATTEMPTS_TIMED_OUT"


class BudgetExceededError(EngineError):
    code = "BUDGET_EXCEEDED"


class UnknownClientError(EngineError):
    code = "UNKNOWN_CLIENT"


class CapacityError(EngineError):
    code = "CAPACITY"


class ValidationFailedError(EngineError):
    code = "VALIDATION_FAILED"

    def __init__(self, message: str = "", diagnostics=None):
        super().__init__(message)
        self.diagnostics = list(diagnostics or [])
