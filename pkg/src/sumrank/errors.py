"""Exception types raised across the package."""


class SumRankError(Exception):
    """Base class for every error raised by this package."""


# field construction / arithmetic
class NotPrime(SumRankError, ValueError):
    pass


class SizeGuardExceeded(SumRankError, ValueError):
    pass


class ZeroConjugator(SumRankError, ZeroDivisionError):
    pass


class NotEnoughClasses(SumRankError, ValueError):
    pass


class BadAutomorphism(SumRankError, ValueError):
    pass


# linear algebra / shapes
class ShapeMismatch(SumRankError, ValueError):
    pass


class NoSolution(SumRankError, ValueError):
    pass


class PartExceedsM(SumRankError, ValueError):
    pass


class LengthClassViolation(SumRankError, ValueError):
    pass


# code parameters
class InvalidParams(SumRankError, ValueError):
    """A GLRS parameter set violates one of its invariants."""


class ConjugacyViolation(InvalidParams):
    pass


class DependentLocators(InvalidParams):
    pass


class ZeroMultiplier(InvalidParams):
    pass


class BadDimension(InvalidParams):
    pass


class DegreeTooLarge(SumRankError, ValueError):
    pass


class NonzeroDerivation(SumRankError, ValueError):
    pass


class NontrivialMultipliers(SumRankError, ValueError):
    pass


class ZeroEvaluationParameter(SumRankError, ValueError):
    pass


# distinguishers
class PreconditionViolated(SumRankError, ValueError):
    pass


class NoValidJ(SumRankError, ValueError):
    pass


class BadJ(SumRankError, ValueError):
    pass


class BudgetExhausted(SumRankError, RuntimeError):
    pass


# recovery
class StructureNotFound(SumRankError, RuntimeError):
    pass


class KernelNotOneDimensional(StructureNotFound):
    pass


class IntersectionNotOneDimensional(StructureNotFound):
    pass


class DegenerateSolution(StructureNotFound):
    pass


class VerificationFailed(StructureNotFound):
    pass


class UnsupportedRegime(SumRankError, ValueError):
    pass
