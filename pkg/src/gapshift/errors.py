"""Exception hierarchy shared by every gapshift module."""


class GapShiftError(Exception):
    """Base class for all library errors."""


class QueryBeyondBound(GapShiftError):
    """A predicate gap set was asked about integers past its enumeration bound."""

    def __init__(self, n, bound):
        super().__init__(f"query at {n} exceeds enumeration bound {bound}")
        self.n = n
        self.bound = bound


class NotPrimitive(GapShiftError):
    pass


class NotAFactor(GapShiftError):
    pass


class NotInLanguage(GapShiftError):
    pass


class BudgetExceeded(GapShiftError):
    pass


class WrongVariant(GapShiftError):
    pass


class DivergentAt(GapShiftError):
    def __init__(self, lam, depth):
        super().__init__(f"no finite upper bound for the characteristic sum at lambda={lam!r} "
                         f"(depth {depth})")
        self.lam = lam
        self.depth = depth


class DepthExhausted(GapShiftError):
    """Certification failed within the depth limit.

    ``partial`` carries the best enclosure found so far, flagged uncertain.
    """

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class SynchronizationViolation(GapShiftError):
    def __init__(self, u, v):
        super().__init__(f"u0={u + '0'!r} and 0v={'0' + v!r} allowed but u0v is not")
        self.u = u
        self.v = v
