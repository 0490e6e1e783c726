"""
Complete simplicial fans from reflexive polytopes.

The fan over a reflexive polytope ``delta`` uses every nonzero lattice point of
``polar_dual(delta)`` as a ray. Each facet of the dual polytope is triangulated
with all of its lattice points, so every cone is unimodular.
"""

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple

from loguru import logger as log

from toricdual.linalg.matrix import IntMatrix, int_matrix
from toricdual.linalg.small import det3
from toricdual.polytope import ORIGIN, Polytope3, is_reflexive, polar_dual
from toricdual.utils.exceptions import NotReflexive, NotSimplicialOrSmooth

Triangle = Tuple[int, int, int]


@dataclass(frozen=True)
class Fan3:
    """
    Simplicial fan in three dimensions.

    Attributes
    ----------
    rays : tuple
        Primitive ray generators. Index ``i`` is the divisor ``D_{i+1}``.
    cones : tuple
        Maximal cones as sorted index triples.
    ray_kinds : tuple
        ``"vertex"``, ``"edge"`` or ``"facet"`` for each ray, according to the
        smallest face of the dual polytope containing it in its relative
        interior.
    """

    rays: Tuple[Tuple[int, int, int], ...]
    cones: Tuple[Triangle, ...]
    ray_kinds: Tuple[str, ...]

    @cached_property
    def walls(self) -> Dict[Tuple[int, int], Tuple[int, ...]]:
        """Two-dimensional cones mapped to the third rays of adjacent cones."""
        walls: Dict[Tuple[int, int], List[int]] = {}
        for cone in self.cones:
            for pair in combinations(cone, 2):
                (third,) = set(cone) - set(pair)
                walls.setdefault(pair, []).append(third)
        return {pair: tuple(sorted(t)) for pair, t in walls.items()}

    @cached_property
    def is_smooth(self) -> bool:
        return all(
            abs(det3(*(self.rays[i] for i in cone))) == 1 for cone in self.cones
        ) and all(len(t) == 2 for t in self.walls.values())

    def cones_containing(self, i: int) -> List[Triangle]:
        return [cone for cone in self.cones if i in cone]

    def non_facet_rays(self) -> List[int]:
        return [i for i, kind in enumerate(self.ray_kinds) if kind != "facet"]


def _orient(rays: Sequence, a: int, b: int, c: int) -> int:
    return det3(rays[a], rays[b], rays[c])


def _triangulate(points: List[int], rays: Sequence) -> List[Triangle]:
    """
    Triangulate the lattice points of one facet of the dual polytope.

    Points are placed in the given order. A point inside the current
    triangulation splits the triangle, or the triangles along the edge, it
    falls on; a point outside is joined to every boundary edge it sees.
    Orientation is the sign of the 3x3 determinant of the ray vectors, which
    is consistent across a facet.
    """
    start = next(
        (t for t in combinations(points, 3) if _orient(rays, *t) != 0), None
    )
    if start is None:
        raise NotSimplicialOrSmooth("Facet lattice points are collinear")
    a, b, c = start
    triangles = [(a, b, c) if _orient(rays, a, b, c) > 0 else (a, c, b)]

    for p in points:
        if p in start:
            continue
        split = False
        updated = []
        for x, y, z in triangles:
            d1 = _orient(rays, x, y, p)
            d2 = _orient(rays, y, z, p)
            d3 = _orient(rays, z, x, p)
            if d1 > 0 and d2 > 0 and d3 > 0:
                updated += [(x, y, p), (y, z, p), (z, x, p)]
                split = True
            elif min(d1, d2, d3) == 0 and sorted((d1, d2, d3))[1] > 0:
                # p lies on the edge with the zero orientation
                if d1 == 0:
                    updated += [(x, p, z), (p, y, z)]
                elif d2 == 0:
                    updated += [(y, p, x), (p, z, x)]
                else:
                    updated += [(z, p, y), (p, x, y)]
                split = True
            else:
                updated.append((x, y, z))
        if not split:
            directed = {(x, y) for t in triangles for x, y in zip(t, t[1:] + t[:1])}
            boundary = [(x, y) for x, y in directed if (y, x) not in directed]
            for x, y in sorted(boundary):
                if _orient(rays, x, y, p) < 0:
                    updated.append((y, x, p))
        triangles = updated
    return triangles


def mpcp_fan(
    delta: Polytope3, ray_order: Optional[Sequence[Sequence[int]]] = None
) -> "Fan3":
    """
    Simplicial fan resolving the toric variety of the reflexive ``delta``.

    Parameters
    ----------
    delta : Polytope3
        Reflexive polytope; rays are taken from its polar dual.
    ray_order : sequence of points, optional
        Rays to number first, in this order. Remaining rays follow
        lexicographically. Entries that are not rays are ignored.

    Raises
    ------
    NotReflexive
        If ``delta`` is not reflexive.
    """
    if not is_reflexive(delta):
        raise NotReflexive("The polytope is not reflexive")
    dual = polar_dual(delta)
    candidates = [lp for lp in dual.lattice_points if lp.point != ORIGIN]
    by_point = {lp.point: lp for lp in candidates}

    ordered: List[Tuple[int, int, int]] = []
    for ray in ray_order or []:
        ray = tuple(int(x) for x in ray)
        if ray in by_point and ray not in ordered:
            ordered.append(ray)
    ordered += [lp.point for lp in candidates if lp.point not in ordered]
    index = {ray: i for i, ray in enumerate(ordered)}

    cones = set()
    for k in range(len(dual.facets)):
        on_facet = sorted(index[lp.point] for lp in candidates if k in lp.facets)
        for triangle in _triangulate(on_facet, ordered):
            cones.add(tuple(sorted(triangle)))

    fan = Fan3(
        rays=tuple(ordered),
        cones=tuple(sorted(cones)),
        ray_kinds=tuple(by_point[ray].kind for ray in ordered),
    )
    log.debug(f"fan with {len(fan.rays)} rays and {len(fan.cones)} cones")
    return fan


def check_smooth(fan: Fan3) -> bool:
    """True iff every maximal cone is unimodular and every wall has two sides."""
    return fan.is_smooth


def divisor_relations(fan: Fan3) -> IntMatrix:
    """
    Linear relations among the toric divisors.

    Row ``j`` is ``sum_i <e_j, v_i> D_i = 0``, so the matrix is the transpose
    of the ray matrix.
    """
    return int_matrix([[ray[j] for ray in fan.rays] for j in range(3)])
