"""Exception hierarchy shared by all modules."""


class CopolarError(ValueError):
    """Base class for invalid-input conditions."""


class EmptyInput(CopolarError):
    pass


class NonPositiveNormal(CopolarError):
    """A facet normal has a coordinate <= 0; the body has infinite covolume."""

    def __init__(self, message, normal=None):
        super().__init__(message)
        self.normal = normal


class NotCobounded(CopolarError):
    """The completed hull has an unbounded complement in the orthant."""

    def __init__(self, message, normal=None):
        super().__init__(message)
        self.normal = normal


class Infeasible(CopolarError):
    pass


class DimensionMismatch(CopolarError):
    pass


class DimensionOverflow(CopolarError):
    pass


class TOutOfRange(CopolarError):
    pass


class AllInfinite(CopolarError):
    pass


class EmptySublevel(CopolarError):
    pass


class TruncationTooSmall(CopolarError):
    pass
