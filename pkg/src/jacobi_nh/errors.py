"""Exception types raised across the package."""


class JacobiError(Exception):
    """Base class for all errors raised by jacobi_nh."""


class SingularIndex(JacobiError):
    """The Jacobi index is not invertible."""


class HypothesisViolated(JacobiError):
    """A weight bound such as ``k - d > h/2`` fails.

    ``diagnostic`` lists ``(nu, r, constant)`` triples whose ladder constant
    is zero or negative, when such triples exist.
    """

    def __init__(self, message, diagnostic=()):
        super().__init__(message)
        self.diagnostic = list(diagnostic)


class WeightMismatch(JacobiError):
    pass


class ShapeMismatch(JacobiError):
    pass


class DegreeMismatch(JacobiError):
    pass


class ZeroScale(JacobiError):
    pass


class DepthExceeded(JacobiError):
    pass


class InternalInvariant(JacobiError):
    """An identity that must hold by construction failed."""


class NotHalfIntegral(JacobiError):
    pass


class OddRank(JacobiError):
    pass


class TruncationTooLarge(JacobiError):
    pass


class ParseError(JacobiError):
    """Malformed serialized data; ``location`` is a JSON-path-like string."""

    def __init__(self, message, location="$"):
        super().__init__(f"{location}: {message}")
        self.location = location
