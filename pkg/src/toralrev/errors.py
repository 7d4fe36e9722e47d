"""Exception types raised by the decision procedures."""


class ToralRevError(Exception):
    """Base class for all library errors."""


class ParseError(ToralRevError, ValueError):
    """Malformed matrix, rational or torus-point text."""


class NotUnimodular(ToralRevError, ValueError):
    pass


class ZeroVector(ToralRevError, ValueError):
    pass


class SingularAminusI(ToralRevError, ValueError):
    """det(A - I) = 0 where a nondegenerate parallelogram is required."""


class NotInvolution(ToralRevError, ValueError):
    pass


class NotHyperbolic(ToralRevError, ValueError):
    pass


class EigenvalueOne(ToralRevError, ValueError):
    """1 is an eigenvalue of the linear part, so A - I is not invertible."""


class InvariantViolation(ToralRevError, AssertionError):
    """A computed certificate failed its own re-verification."""
