"""Exception types raised across the package.

Every structural validation failure gets its own class so callers can
distinguish "the input is malformed" from "the search gave up".
"""


class CovertowerError(Exception):
    """Base class for all package-specific errors."""


class BadDegree(CovertowerError):
    """Permutation data does not match the declared number of sheets."""


class RelatorNotTrivial(CovertowerError):
    """The surface relator does not act as the identity permutation."""


class NotTransitive(CovertowerError):
    """The permutation action has more than one orbit on sheets."""


class SearchBudgetExceeded(CovertowerError):
    """An enumeration or refinement search exceeded its candidate budget."""


class GenusMismatch(CovertowerError):
    """A genus implied by combinatorial data disagrees with a declared genus."""


class InvalidIdentification(CovertowerError):
    """Edge-to-word identification data does not define a valid composite cover."""


class ComplexMismatch(CovertowerError):
    """Chain or cochain data does not fit the cell structure it was given with."""


class KindMismatch(CovertowerError):
    """An operation was applied to a limit element of the wrong payload kind."""


class BaseMismatch(CovertowerError):
    """Two objects that must live over the same base do not."""


class IncompatibleTower(CovertowerError):
    """Covers that should fit into a common tower fail to do so."""


class SwitchViolation(CovertowerError):
    """A weight vector violates a switch balance condition."""


class NegativeWeight(CovertowerError):
    """A weight vector has a negative entry where nonnegativity is required."""


class NonIntegerWeights(CovertowerError):
    """Integer weights were required but fractional values appeared."""


class DimensionMismatch(CovertowerError):
    """A vector or matrix has the wrong shape for the object it acts on."""


class ConeViolation(CovertowerError):
    """A matrix fails to map one weight cone into another."""


class InvalidAutomorphism(CovertowerError):
    """A candidate substitution fails to define a surface-group automorphism."""
