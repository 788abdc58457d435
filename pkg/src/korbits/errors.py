"""Shared exception types.

The CLI maps these to exit codes: ContractViolation and UsageError are the
caller's fault (exit 2), VerificationFailure means a checked identity failed
(exit 1), and InternalError signals a broken invariant inside the library
itself (exit 3).
"""


class UsageError(ValueError):
    """Malformed command-line input or parameter string."""


class ContractViolation(ValueError):
    """An operation was called with arguments violating its preconditions."""


class VerificationFailure(Exception):
    """A fixture row or localization check did not hold."""


class InternalError(RuntimeError):
    """A mathematically guaranteed invariant failed; indicates a bug."""
