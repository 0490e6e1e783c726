"""Module of general toricdual utilities."""

from .exceptions import (
    ToricDualError,
    DegenerateInput,
    OriginNotInterior,
    NotReflexive,
    FacetInteriorRay,
    NotSimplicialOrSmooth,
    NontrivialToricContribution,
    NoUnimodularComplement,
    DegenerateLattice,
    OddLattice,
    DimensionMismatch,
    NotSquare,
    MonomialDegreeMismatch,
    PointNotInBasisSpan,
    InvariantViolation,
    ParseError,
)
from .misc import parallel_map, digest
