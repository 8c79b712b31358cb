"""Exception types raised across the package."""


class NonCongruentError(ValueError):
    """Base class for every input or precondition failure."""


class EvenInput(NonCongruentError):
    pass


class NotSquarefree(NonCongruentError):
    pass


class FactorizationTimeout(NonCongruentError):
    pass


class DivisibleInput(NonCongruentError):
    pass


class NotCoprime(NonCongruentError):
    pass


class NotQuadraticResidue(NonCongruentError):
    pass


class BadModulus(NonCongruentError):
    pass


class ZeroInput(NonCongruentError):
    pass


class DimensionMismatch(NonCongruentError):
    pass


class NotInvertible(NonCongruentError):
    pass


class NotDivisor(NonCongruentError):
    pass


class CapExceeded(NonCongruentError):
    pass


class NoSolution(NonCongruentError):
    pass


class BadInput(NonCongruentError):
    pass


class BudgetExceeded(NonCongruentError):
    pass


class SearchExhausted(NonCongruentError):
    """Bounded ternary search found nothing; the cap is too small or the
    divisor is not locally solvable."""


class UnsupportedFourRank(NonCongruentError):
    pass


class UnsupportedSplit(NonCongruentError):
    pass


class BadResidue(NonCongruentError):
    pass


class DomainError(NonCongruentError):
    pass
