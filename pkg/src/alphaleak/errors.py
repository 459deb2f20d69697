"""Exception hierarchy shared by every alphaleak module."""


class AlphaLeakError(Exception):
    """Base class for all errors raised by alphaleak."""


class ValidationError(AlphaLeakError, ValueError):
    """An input object violates one of its invariants.

    ``field`` names the offending field (``"prior"``, ``"channel[1]"``, ...)
    when the error is raised while validating a structured document.
    """

    def __init__(self, message, field=None):
        if field is not None:
            message = f"{field}: {message}"
        super().__init__(message)
        self.field = field


class NegativeMass(ValidationError):
    pass


class NotNormalized(ValidationError):
    pass


class DuplicateLabel(ValidationError):
    pass


class DimensionMismatch(ValidationError):
    pass


class EmptyConditioningSet(ValidationError):
    pass


class ResolutionNotUnitFraction(ValidationError):
    pass


class AbsoluteContinuityViolation(AlphaLeakError, ValueError):
    """Positive frequency mass sits where the reference has none."""


class ZeroProbabilityOutput(AlphaLeakError, ValueError):
    """Conditioning on a channel output that has zero probability."""


class UnsupportedOrder(AlphaLeakError, ValueError):
    pass


class InvalidSpec(AlphaLeakError, ValueError):
    pass


class NoConvergence(AlphaLeakError, RuntimeError):
    """Iterative solver ran out of iterations.

    The best iterate found so far is attached as ``result``.
    """

    def __init__(self, message, result=None):
        super().__init__(message)
        self.result = result


class ParseError(AlphaLeakError, ValueError):
    pass


class VerificationFailure(AlphaLeakError):
    """One or more verification properties failed.

    ``failed`` lists the property names.
    """

    def __init__(self, failed):
        super().__init__("verification failed: " + ", ".join(failed))
        self.failed = list(failed)
