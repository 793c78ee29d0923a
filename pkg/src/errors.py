"""
Exception hierarchy shared by every module.

The CLI turns these into exit codes: input problems and caps give 3,
failed verifications and corrupt caches give 2.
"""


class McCoolError(Exception):
    """Base class for all errors raised by this package."""


class InputError(McCoolError, ValueError):
    """Malformed input or a violated precondition."""


class LimitExceeded(McCoolError):
    """A configured size cap was hit."""


class SearchBudgetExceeded(LimitExceeded):
    """Backtracking ran out of its expansion budget."""


class CacheCorruption(McCoolError):
    """A cache file failed its header or digest check."""


class ReconstructionError(McCoolError):
    """An auxiliary graph does not come from a hypertree."""


class VerificationError(McCoolError):
    """A machine-checked identity did not hold."""
