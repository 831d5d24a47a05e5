"""Exception hierarchy shared by all modules."""


class ClonalWavesError(Exception):
    """Base class for every error raised by this package."""


class NonSupercritical(ClonalWavesError, ValueError):
    pass


class InvalidDensity(ClonalWavesError, ValueError):
    pass


class InvalidTail(ClonalWavesError, ValueError):
    pass


class InvalidParameter(ClonalWavesError, ValueError):
    pass


class UnboundedLaw(ClonalWavesError, TypeError):
    """Raised when a bounded-fitness quantity is requested for an unbounded law."""


class ZeroRate(ClonalWavesError, ValueError):
    pass


class QuadFail(ClonalWavesError, RuntimeError):
    pass


class UnsupportedK(ClonalWavesError, ValueError):
    pass


class DegenerateAlpha(ClonalWavesError, ValueError):
    pass


class BudgetExceeded(ClonalWavesError, RuntimeError):
    """The exact simulation phase used more events than allowed."""


class InsufficientTail(ClonalWavesError, ValueError):
    pass


class EmptySample(ClonalWavesError, ValueError):
    pass


class ConfigError(ClonalWavesError, ValueError):
    pass
