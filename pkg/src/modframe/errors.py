"""Exception types raised across the package."""


class ModFrameError(Exception):
    """Base class for all package errors."""


class InputError(ModFrameError, ValueError):
    """Malformed or dimension-inconsistent input."""


class DomainError(ModFrameError, ValueError):
    """Input outside the mathematical domain of an operation (e.g. sqrt of a non-PSD element)."""


class NotAdjointable(ModFrameError):
    """Raised when the A-valued adjoint identity fails on a sampled pair.

    ``witness`` holds the worst ``(x, y)`` coordinate pair and ``error`` its
    relative defect.
    """

    def __init__(self, message, witness=None, error=None):
        super().__init__(message)
        self.witness = witness
        self.error = error
