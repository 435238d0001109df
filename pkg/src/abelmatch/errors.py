"""Exception hierarchy shared by every module of the package."""


class AbelMatchError(ValueError):
    """Base class for all errors raised by abelmatch."""


class StructureError(AbelMatchError):
    """An element or set does not conform to its group context."""


class DomainError(AbelMatchError):
    """An argument lies outside the domain of the operation."""


class UnsupportedOrderError(AbelMatchError):
    """A global compatible order was requested on a group with torsion."""


class TorsionCollisionError(AbelMatchError):
    """Two multiples ia and ja with i != j coincide."""


class SizeLimitError(AbelMatchError):
    """An exhaustive search was asked to run beyond its desk-scale limit."""


class InvalidBasisSystemError(AbelMatchError):
    """A family of sets violates the basis axioms."""


class LoopError(AbelMatchError):
    """A ground element lies in no basis."""


class DisjointnessError(AbelMatchError):
    """Ground sets that must be disjoint share an element."""


class OrderUnavailableError(AbelMatchError):
    """No compatible order is guaranteed for the requested construction."""


class RankMismatchError(AbelMatchError):
    """Two matroids or bases that must have equal rank do not."""
