"""Exception hierarchy.

Two families matter to callers: UsageError for bad inputs or violated
preconditions, and VerificationError for a failed mathematical cross-check
(a counting formula or model correspondence that should hold did not).
The CLI maps them to exit codes 64 and 2 respectively.
"""


class ChainGeoError(Exception):
    pass


class UsageError(ChainGeoError):
    """Bad input, unsupported parameters, or a violated precondition."""


class VerificationError(ChainGeoError):
    """An internal cross-check against a known identity failed."""


# field
class NonPrimeCharacteristic(UsageError):
    pass


class ReducibleModulus(UsageError):
    pass


class UnsupportedOrder(UsageError):
    pass


class DivisionByZero(UsageError):
    pass


# algebra
class NonAssociative(UsageError):
    pass


class NoUnity(UsageError):
    pass


class BadSpec(UsageError):
    pass


class ScalarsNotCentral(UsageError):
    pass


class NotAUnit(UsageError):
    pass


class NotLocal(UsageError):
    pass


# projline
class OrbitCountMismatch(VerificationError):
    pass


# chains
class NotMutuallyDistant(UsageError):
    pass


class SolveFailed(VerificationError):
    pass


class ChainCountMismatch(VerificationError):
    pass


class LambdaMismatch(VerificationError):
    pass


class DesignViolation(VerificationError):
    pass


# blocking
class BadParameters(UsageError):
    pass


class PolynomialMismatch(VerificationError):
    pass


class UnknownPoint(UsageError):
    pass


class NotApplicable(UsageError):
    pass


class CounterexampleFound(VerificationError):
    pass


class NotBlockingDownstairs(UsageError):
    pass


# quadric
class WrongRing(UsageError):
    pass


class NotCoplanar(VerificationError):
    pass


class TangentPlane(VerificationError):
    pass


class ModelViolation(VerificationError):
    pass
