"""Exception types raised by zcorr."""


class ZCorrError(ValueError):
    """Base class for all zcorr input/validation errors."""


class NormViolation(ZCorrError):
    pass


class NonFinite(ZCorrError):
    pass


class ZeroVector(ZCorrError):
    pass


class DegenerateObservable(ZCorrError):
    """Observable would have a single repeated eigenvalue."""


class NonHermitianInput(ZCorrError):
    pass


class UnclassifiableState(RuntimeError):
    """Case guards were inconsistent. Indicates a bug, never bad input."""


class DegenerateValues(ZCorrError):
    """A classical variable takes the same value twice."""


class InvalidDistribution(ZCorrError):
    pass
