"""Exception hierarchy shared by all modules."""


class UncertaintyError(Exception):
    """Base class for every error raised by this package."""


class ValidationError(UncertaintyError, ValueError):
    """Input violates a documented precondition or invariant."""


class NonSquare(ValidationError):
    pass


class NotHermitian(ValidationError):
    pass


class NotPSD(ValidationError):
    pass


class DimensionMismatch(ValidationError):
    pass


class InvalidState(ValidationError):
    pass


class NotPureState(ValidationError):
    pass


class BlochOutOfBall(ValidationError):
    pass


class WrongDimension(ValidationError):
    pass


class TooFewObservables(ValidationError):
    pass


class TooManyObservables(ValidationError):
    pass


class ParseError(ValidationError):
    """Malformed instance or matrix file; the message carries line/field context."""


class NoConvergence(UncertaintyError, ArithmeticError):
    pass


class InvariantViolation(UncertaintyError, AssertionError):
    """An internal consistency check failed.

    This never signals bad input; it means two computations that must agree
    did not, which is a bug.
    """


class NonRealExpectation(InvariantViolation):
    pass


class IdentityViolation(InvariantViolation):
    pass
