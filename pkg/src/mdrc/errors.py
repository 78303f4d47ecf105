"""Exception types raised across the package."""


class MdrcError(Exception):
    """Base class for all errors raised by mdrc."""


class NumericalError(MdrcError):
    """A numerical routine could not produce a trustworthy result."""


class SingularMatrix(NumericalError):
    pass


class NonFinite(NumericalError):
    pass


class ZeroDcGain(NumericalError):
    pass


class ShapeMismatch(MdrcError, ValueError):
    pass


class UnsupportedShape(ShapeMismatch):
    pass


class InvalidPlant(MdrcError, ValueError):
    pass


class Uncontrollable(InvalidPlant):
    pass


class Unobservable(InvalidPlant):
    pass


class UnstableRequest(MdrcError, ValueError):
    """A requested closed-loop or observer pole lies on or outside the unit circle."""


class ObserverUnstable(MdrcError, ValueError):
    pass


class MissingGain(MdrcError, ValueError):
    pass


class HorizonZero(MdrcError, ValueError):
    pass


class EmptyTrace(MdrcError, ValueError):
    pass
