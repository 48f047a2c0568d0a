"""Exception types shared across the package."""


class SoficError(Exception):
    """Base class for all package errors."""


class AlphabetMismatch(SoficError):
    pass


class SideMismatch(SoficError):
    pass


class EmptySubshift(SoficError):
    pass


class NotEquivalence(SoficError):
    pass


class PointNotInSubshift(SoficError):
    pass


class UnknownVertex(SoficError):
    pass


class HypothesisViolated(SoficError):
    pass


class NotHyperbolic(SoficError):
    pass


class NotClosedUnderComposition(SoficError):
    pass


class NotAValidDStar(SoficError):
    def __init__(self, message, shift=None):
        super().__init__(message)
        self.shift = shift


class VerificationMismatch(SoficError):
    pass


class EmptyComplex(SoficError):
    pass


class ParseError(SoficError):
    pass
