"""Exception types shared across the package."""


class BinaryKError(Exception):
    """Base class for all errors raised by binaryk."""


class DimensionMismatch(BinaryKError, ValueError):
    pass


class RingMismatch(BinaryKError, ValueError):
    pass


class NotAField(BinaryKError, ValueError):
    pass


class NotAcyclic(BinaryKError, ValueError):
    pass


class InvalidInput(BinaryKError, ValueError):
    """Raised when an operation's precondition fails on a structurally valid object."""


class ParseError(BinaryKError, ValueError):
    """Malformed JSON payload or ring descriptor."""


class CalibrationError(BinaryKError):
    """No single exponent makes the evaluator agree with the determinant oracle."""
