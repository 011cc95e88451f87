"""Exception hierarchy.

The CLI maps ``ValidationError`` to exit code 1 and ``SearchError`` to exit
code 2, so every error raised by the library derives from one of the two.
"""


class IsoforgeError(Exception):
    pass


class ValidationError(IsoforgeError, ValueError):
    """Input violates a structural contract (group axioms, metric axioms...)."""


class SearchError(IsoforgeError):
    """A bounded search ran out of room."""


# groups
class NotLatinSquare(ValidationError):
    pass


class NoIdentity(ValidationError):
    pass


class NotAssociative(ValidationError):
    pass


class NoInverse(ValidationError):
    pass


class NotHomomorphism(ValidationError):
    pass


class NotEffective(ValidationError):
    pass


class OrderLimitExceeded(SearchError):
    pass


# doubling / zoo
class InvalidBasePair(ValidationError):
    pass


class UnknownName(ValidationError):
    pass


# metrics
class AsymmetricEntry(ValidationError):
    pass


class NegativeOrZeroOffDiagonal(ValidationError):
    pass


class NonzeroDiagonal(ValidationError):
    pass


class TriangleViolation(ValidationError):
    pass


class SearchBudgetExceeded(SearchError):
    pass


# perturb
class InfeasibleSeparation(ValidationError):
    pass


class BudgetUnderflow(SearchError):
    pass


class NotOutsideHull(ValidationError):
    pass


# rigidify / classify
class ForbiddenCardinality(ValidationError):
    pass


class VerificationFailed(IsoforgeError):
    """The isometry oracle disagreed with the predicted group. Always a defect."""


class RouteMismatch(IsoforgeError):
    """Structural and hull classification disagree. Always a defect."""
