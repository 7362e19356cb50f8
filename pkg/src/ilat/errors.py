"""Exception hierarchy shared by every module.

All domain failures derive from :class:`IlatError`; the CLI maps these to
exit code 1 and anything else (argument parsing) to exit code 2.
"""


class IlatError(Exception):
    """Base class for domain errors."""


class DenominatorNotUnit(IlatError):
    pass


class NotAUnit(IlatError):
    pass


class InsufficientPrecision(IlatError):
    pass


class PrecisionMismatch(IlatError):
    pass


class IndistinguishableFromZero(IlatError):
    pass


class TruncationTooShort(IlatError):
    pass


class RangeError(IlatError):
    pass


class EvenCharacter(IlatError):
    pass


class EigenvaluesNotDistinctModP(IlatError):
    pass


class EigenvaluesNotRational(IlatError):
    pass


class InfiniteWithinPrecision(IlatError):
    """Every examined product b(w)c(w') vanishes at the working precision."""


class OrdTooSmall(IlatError):
    pass


class NonIntegralRepresentation(IlatError):
    pass


class UncertifiedFactorization(IlatError):
    """Counting needs every height-one factor to be known irreducible."""


class NotNested(IlatError):
    pass


class OutOfRange(IlatError):
    pass
