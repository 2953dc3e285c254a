"""Exception hierarchy shared by every module."""


class AlgebraError(Exception):
    """Base class for all errors raised by gencomm."""


class DimensionMismatch(AlgebraError):
    pass


class RingMismatch(AlgebraError):
    """Two objects live in different rings."""


class NonAssociative(AlgebraError):
    def __init__(self, i: int, j: int, k: int, left, right, labels=None):
        self.triple = (i, j, k)
        self.left = left
        self.right = right
        a, b, c = (labels[x] if labels else f"e{x + 1}" for x in (i, j, k))
        super().__init__(
            f"basis triple ({i + 1}, {j + 1}, {k + 1}): "
            f"({a}*{b})*{c} = {list(left)} but {a}*({b}*{c}) = {list(right)}"
        )


class BadUnity(AlgebraError):
    pass


class BadParameter(AlgebraError):
    pass


class BudgetExceeded(AlgebraError):
    pass


class InfiniteScalar(AlgebraError):
    """Operation needs a finite ring but the scalars are the integers."""


class ZeroBeta(AlgebraError):
    """beta is zero (or not a unit modulo m)."""


class NotFree(AlgebraError):
    """A subgroup of (Z/m)^d has no free basis, so it cannot carry structure constants."""


class ParseError(AlgebraError):
    pass


class UnknownIdentity(AlgebraError):
    pass


class UnknownScenario(AlgebraError):
    pass
