"""Exception hierarchy shared by all sdkappa modules."""


class SdKappaError(Exception):
    """Base class for every error raised by this package."""


class CycleError(SdKappaError):
    """The generated relation is not antisymmetric."""


class DuplicateLabelError(SdKappaError):
    pass


class UnknownElement(SdKappaError, KeyError):
    pass


class NotOrderPreserving(SdKappaError):
    pass


class CompositionMismatch(SdKappaError):
    """Consecutive maps in a sequence do not compose."""


class NotSimplicial(SdKappaError):
    """A proposed simplicial map does not commute with face operators."""


class NotCofibration(SdKappaError):
    pass


class SingularInput(SdKappaError):
    """Geometric realization was requested for a singular simplicial set."""


class NotNerveMap(SdKappaError):
    pass


class DegenerateChain(SdKappaError):
    pass


class NotAChain(SdKappaError):
    pass


class EmptyResult(SdKappaError):
    pass


class PointNotOnPath(SdKappaError):
    pass


class PointNotInBase(SdKappaError):
    pass


class BadCase(SdKappaError):
    pass


class SequenceNotFromPaths(SdKappaError):
    pass


class ScaleGuard(SdKappaError):
    """A configured size bound would be exceeded."""


class InconsistentVerdict(SdKappaError):
    """Both a proof and a refutation were produced for the same object."""
