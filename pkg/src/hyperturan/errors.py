"""Shared exception types.

The CLI maps these onto exit codes: ValidationError (and bad command
grammar) -> 2, CapacityError -> 3.  A failed claim check is not an
exception; it is reported data and exit code 1.
"""


class HyperturanError(Exception):
    pass


class ValidationError(HyperturanError, ValueError):
    """Invalid input: bad edge, vertex out of range, parameter outside a window."""


class CapacityError(HyperturanError, RuntimeError):
    """Instance exceeds a configured cap for exact computation."""


class PreconditionError(HyperturanError, ValueError):
    """A documented hypothesis of an operation fails (e.g. a deficient row sum)."""


class InternalCheckError(HyperturanError, AssertionError):
    """Two independent computation paths disagreed; indicates a bug, not bad input."""
