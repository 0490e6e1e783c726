"""
Exceptions raised by toricdual.

All of them derive from ``ValueError`` so that code checking for invalid input the
usual way keeps working.
"""

from typing import Optional


class ToricDualError(ValueError):
    """Base class of every error raised by the package."""


class DegenerateInput(ToricDualError):
    """The input points do not affinely span three-space."""


class OriginNotInterior(ToricDualError):
    """The polar dual is only defined for polytopes with the origin in the interior."""


class NotReflexive(ToricDualError):
    pass


class FacetInteriorRay(ToricDualError):
    """The ray lies in the relative interior of a facet; its divisor misses a generic K3."""


class NotSimplicialOrSmooth(ToricDualError):
    pass


class NontrivialToricContribution(ToricDualError):
    def __init__(self, message: str, l0: int):
        super().__init__(message)
        self.l0 = l0


class NoUnimodularComplement(ToricDualError):
    pass


class DegenerateLattice(ToricDualError):
    pass


class OddLattice(ToricDualError):
    pass


class DimensionMismatch(ToricDualError):
    pass


class NotSquare(DimensionMismatch):
    pass


class MonomialDegreeMismatch(ToricDualError):
    pass


class PointNotInBasisSpan(ToricDualError):
    pass


class InvariantViolation(ToricDualError):
    pass


class ParseError(ToricDualError):
    """Malformed input; ``location`` names the offending line or field when known."""

    def __init__(self, message: str, location: Optional[str] = None):
        super().__init__(message)
        self.location = location
