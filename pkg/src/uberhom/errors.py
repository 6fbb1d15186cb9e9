"""Shared exception types."""


class SizeGuardExceeded(RuntimeError):
    """Input exceeds the configured vertex guard for an exponential enumeration."""


class StandardSimplexError(ValueError):
    """The anti-star construction degenerates on a standard simplex."""


class NotConnectedError(ValueError):
    """Raised by operations whose input must be connected."""


class SolveFailure(RuntimeError):
    """A vector expected to lie in a span (e.g. a cycle image) failed to reduce."""


class LiftFailure(RuntimeError):
    """Internal page-turning inconsistency; impossible on valid input."""
