"""Exception hierarchy shared by every module."""


class CanonError(Exception):
    """Base class for all library errors."""


class InvalidLabel(CanonError, ValueError):
    pass


class MalformedRelation(CanonError, ValueError):
    pass


class NotAFunction(CanonError, ValueError):
    """A relation failed one of the two function predicates.

    ``predicate`` is ``"transmits elements"`` or ``"reflects distinctions"``
    and ``witness`` the offending element or pair.
    """

    def __init__(self, predicate, witness):
        self.predicate = predicate
        self.witness = witness
        super().__init__(f"not a function: fails to {predicate.replace('s ', ' ', 1)} at {witness}")


class CompositionMismatch(CanonError, ValueError):
    pass


class EnumerationBudgetExceeded(CanonError, RuntimeError):
    def __init__(self, needed, budget):
        self.needed = needed
        self.budget = budget
        super().__init__(f"enumeration needs {needed} candidates, budget is {budget}")


class UniverseMismatch(CanonError, ValueError):
    pass


class NotASubset(CanonError, ValueError):
    pass


class EmptyUniverse(CanonError, ValueError):
    pass


class InvalidPartition(CanonError, ValueError):
    pass


class NotARefinement(CanonError, ValueError):
    pass


class DomainMismatch(CanonError, ValueError):
    pass


class CodomainMismatch(CanonError, ValueError):
    pass


class NotParallel(CanonError, ValueError):
    pass


class ConeConditionViolated(CanonError, ValueError):
    def __init__(self, message, witness=None):
        self.witness = witness
        super().__init__(message)


class ShapeMismatch(CanonError, ValueError):
    pass


class NotBothUniversal(CanonError, ValueError):
    pass


class BasepointNotInCarrier(CanonError, ValueError):
    pass


class NotAPointedMap(CanonError, ValueError):
    pass
