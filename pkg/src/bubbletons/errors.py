"""Exception hierarchy shared by all modules."""


class BubbletonError(Exception):
    """Base class for every domain error raised by this package."""


class NearZeroQuaternion(BubbletonError, ZeroDivisionError):
    pass


class ParameterOutOfRange(BubbletonError, ValueError):
    pass


class SingularCharacteristic(BubbletonError, ValueError):
    """The pole of the third-kind integrand lies on the integration path."""


class InvalidNecksize(BubbletonError, ValueError):
    pass


class ExcludedParameter(BubbletonError, ValueError):
    pass


class BranchPoint(BubbletonError, ValueError):
    """t = 0: the y-system is not diagonalisable and no multiplier basis exists."""


class SingularDenominator(BubbletonError, ZeroDivisionError):
    pass


class ZeroSection(BubbletonError, ZeroDivisionError):
    pass


class SingularT(BubbletonError, ZeroDivisionError):
    pass


class NotAdmissible(BubbletonError, ValueError):
    pass


class NotClosed(BubbletonError, ValueError):
    pass


class EqualSpectralParams(BubbletonError, ValueError):
    pass


class DegenerateMetric(BubbletonError, ArithmeticError):
    pass


class ConfigError(BubbletonError, ValueError):
    pass
