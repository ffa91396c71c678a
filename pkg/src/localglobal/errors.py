"""Exception hierarchy shared by every module.

The CLI prints the class name of a :class:`LocalGlobalError` on stderr, so the
names are part of the external contract.
"""


class LocalGlobalError(Exception):
    """Base class for domain errors (CLI exit code 1)."""


# modular
class Unsolvable(LocalGlobalError):
    pass


class Degenerate(LocalGlobalError):
    pass


class NotCoprime(LocalGlobalError):
    def __init__(self, m1, m2):
        super().__init__(f"moduli {m1} and {m2} are not coprime")
        self.pair = (m1, m2)


class NotOddPrime(LocalGlobalError):
    pass


class NonResidue(LocalGlobalError):
    pass


# padic
class ZeroDenominator(LocalGlobalError, ZeroDivisionError):
    pass


class PrimeMismatch(LocalGlobalError):
    pass


class DivisionByZero(LocalGlobalError, ZeroDivisionError):
    pass


class ZeroInput(LocalGlobalError):
    pass


class StartConditionFailed(LocalGlobalError):
    def __init__(self, message, ratio_abs=None):
        super().__init__(message)
        self.ratio_abs = ratio_abs


class NotPrincipalUnit(LocalGlobalError):
    pass


# lindioph
class DimensionMismatch(LocalGlobalError):
    pass


# quadforms
class ZeroArgument(LocalGlobalError):
    pass


class DegenerateForm(LocalGlobalError):
    pass


class DefiniteForm(LocalGlobalError):
    pass


class LocallyUnsolvable(LocalGlobalError):
    def __init__(self, message, place=None):
        super().__init__(message)
        self.place = place


class NotReduced(LocalGlobalError):
    pass


class VertexPoint(LocalGlobalError):
    pass


class BadParameters(LocalGlobalError):
    pass


# elliptic
class PointNotOnCurve(LocalGlobalError):
    pass


class SingularCurve(LocalGlobalError):
    pass


class BadReduction(LocalGlobalError):
    pass


class SmallCharacteristic(LocalGlobalError):
    pass


class MazurViolation(LocalGlobalError):
    pass


class NeedConductor(LocalGlobalError):
    pass


class NeedRootNumber(LocalGlobalError):
    pass


class OutOfConvergenceRegion(LocalGlobalError):
    pass


class SIsOne(LocalGlobalError):
    pass
