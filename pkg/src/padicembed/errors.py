"""Exception hierarchy shared by every module."""


class PadicEmbedError(Exception):
    """Base class for all library errors."""


class ZeroPolynomial(PadicEmbedError, ValueError):
    pass


class DegreeTooSmall(PadicEmbedError, ValueError):
    pass


class NotPrimitiveContent(PadicEmbedError, ValueError):
    pass


class NoConvergence(PadicEmbedError, ArithmeticError):
    pass


class InequalityViolated(PadicEmbedError, AssertionError):
    """A constant-free inequality failed on computed data; indicates a bug."""


class FieldMismatch(PadicEmbedError, ValueError):
    pass


class ZeroElement(PadicEmbedError, ZeroDivisionError):
    pass


class NotGenerating(PadicEmbedError):
    """No small integer combination of the generators is primitive."""


class ZeroReduction(PadicEmbedError, ValueError):
    """The polynomial vanishes identically modulo p."""


class SearchExhausted(PadicEmbedError):
    def __init__(self, p_max, message=None):
        self.p_max = p_max
        super().__init__(message or f"no suitable prime up to {p_max}")


class InternalAssertionFailed(PadicEmbedError, AssertionError):
    pass


class PreconditionViolated(PadicEmbedError, ValueError):
    pass


class HypothesisNotMet(PadicEmbedError, ValueError):
    pass


class FactorizationTimeout(PadicEmbedError):
    pass


class NotSimpleRoot(PadicEmbedError, ValueError):
    pass


class ZeroValuation(PadicEmbedError, ValueError):
    """Valuation of zero requested (it is infinite)."""


class PrecisionExhausted(PadicEmbedError):
    pass


class MissingInput(PadicEmbedError, KeyError):
    pass


class NotPrimePair(PadicEmbedError, ValueError):
    pass


class DivisionByZero(PadicEmbedError, ZeroDivisionError):
    pass
