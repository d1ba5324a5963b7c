"""Exception types shared across the package."""


class MockCongError(Exception):
    """Base class for all errors raised by mockcong."""


class InvalidArgument(MockCongError, ValueError):
    pass


class NotInvertible(MockCongError, ValueError):
    pass


class PrecisionError(MockCongError):
    """A computation needed coefficients beyond the stored precision."""


class HypothesisViolation(MockCongError, ValueError):
    """Inputs fall outside the hypotheses of the routine being called."""


class ConstructionError(MockCongError, AssertionError):
    """An internal consistency check of a constructive algorithm failed."""
