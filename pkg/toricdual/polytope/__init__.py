"""Convex lattice polytopes in three dimensions."""

from .isomorphism import iso_gl3z
from .polytope import (
    ORIGIN,
    Edge,
    Face,
    Facet,
    LatticePoint,
    Polytope3,
    as_point,
    dual_face,
    hull,
    interior_count,
    interior_points,
    is_reflexive,
    lattice_points,
    polar_dual,
    toric_contribution,
)
