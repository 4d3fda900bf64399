"""Exception taxonomy shared by all modules.

The CLI maps these onto its exit-code contract: bad input -> 2,
internal invariant breach -> 3.  Theorem failures are not exceptions;
they are recorded in reports.
"""


class EpsilocalError(Exception):
    """Base class for all package errors."""


class InputError(EpsilocalError):
    """Caller supplied an invalid value (bad polynomial, descriptor, prime...)."""


class PrecisionError(EpsilocalError):
    """A computation would need more p-adic digits than were budgeted."""

    def __init__(self, message, required=None, available=None):
        super().__init__(message)
        self.required = required
        self.available = available


class InternalInvariantError(EpsilocalError):
    """A mathematically guaranteed invariant failed; indicates a bug."""
