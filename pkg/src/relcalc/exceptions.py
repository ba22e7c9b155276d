"""Exception types shared across the package."""


class RelcalcError(Exception):
    """Base class for all package errors."""


class DimensionMismatchError(RelcalcError, ValueError):
    """Vectors, frames or relations live in incompatible ambient spaces."""


class DomainMembershipError(RelcalcError, ValueError):
    """A vector expected to lie in a domain does not."""


class HypothesisError(RelcalcError):
    """The mathematical preconditions of an analysis are not met.

    ``failed`` lists the names of the clauses that did not hold.
    """

    def __init__(self, message, failed=()):
        super().__init__(message)
        self.failed = tuple(failed)


class TransformUndefinedError(RelcalcError, ValueError):
    """A certificate transform was requested outside its range of validity."""


class NonConvergenceError(RelcalcError):
    """An adaptive procedure hit its refinement limit."""
