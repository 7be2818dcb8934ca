class EntropiaError(Exception):
    """Base class for all library errors."""


class IncompatibleModels(EntropiaError):
    pass


class NotRepresentable(EntropiaError):
    pass


class QuotientNotRepresentable(NotRepresentable):
    pass


class NotContained(EntropiaError):
    pass


class NotAGroup(EntropiaError):
    pass


class NotAHomomorphism(EntropiaError):
    pass


class TooLarge(EntropiaError):
    pass


class NotNormal(EntropiaError):
    pass


class NotInvariant(EntropiaError):
    pass


class NotAutomorphism(EntropiaError):
    pass


class NotAbelian(EntropiaError):
    pass


class NotConstantPattern(EntropiaError):
    pass


class NotStable(EntropiaError):
    pass


class ZeroMultiplier(EntropiaError):
    pass


class PreconditionFailed(EntropiaError):
    pass


class HypothesisFailed(EntropiaError):
    pass


class IterationBudgetExceeded(EntropiaError):
    pass


class ScenarioError(EntropiaError):
    """Malformed scenario input; ``path`` locates the offending JSON field."""

    def __init__(self, message, path=()):
        self.path = tuple(path)
        where = "/".join(str(p) for p in self.path) or "<root>"
        super().__init__(f"{where}: {message}")


class InconsistentResult(EntropiaError):
    """Two independent computations of the same quantity disagree."""
