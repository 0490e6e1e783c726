"""
Intersection numbers of toric divisors restricted to an anticanonical K3.

For a ray ``v_i`` the divisor ``D_i`` meets the K3 surface in a curve. Two
divisors of adjacent rays meet along the wall they share; the count follows
from the linear relations on either side of that wall. A self-intersection is
``2 l(F) - 2`` where ``l(F)`` counts interior lattice points of the face of
``delta`` dual to the ray.
"""

from dataclasses import dataclass
from itertools import combinations
from typing import List, Optional, Sequence, Tuple

import numpy as np
from loguru import logger as log

from toricdual.linalg.matrix import IntMatrix, int_matrix, integer_inverse
from toricdual.linalg.small import det3, dot, dual_covectors
from toricdual.polytope import Polytope3, interior_count, toric_contribution
from toricdual.utils.exceptions import (
    FacetInteriorRay,
    NoUnimodularComplement,
    NontrivialToricContribution,
    NotSimplicialOrSmooth,
)

from .fan import Fan3, Triangle


def _require_smooth(fan: Fan3) -> None:
    if not fan.is_smooth:
        raise NotSimplicialOrSmooth("The fan has a non-unimodular cone")


def _covector(fan: Fan3, i: int, cone: Triangle) -> tuple:
    rays = [fan.rays[k] for k in cone]
    return dual_covectors(*rays)[cone.index(i)]


def dual_face_of_ray(i: int, fan: Fan3, delta: Polytope3):
    """Face of ``delta`` on which ``<v_i, x> = -1``."""
    ray = fan.rays[i]
    corners = [k for k, x in enumerate(delta.vertices) if dot(ray, x) == -1]
    return delta.face_with_vertices(corners)


def self_intersection(i: int, fan: Fan3, delta: Polytope3) -> int:
    """
    ``D_i^2`` on the K3 surface, equal to ``2 l(F) - 2``.

    Raises
    ------
    FacetInteriorRay
        If ``v_i`` lies in the interior of a facet of the dual polytope, where
        ``D_i`` does not meet a general K3 hypersurface.
    """
    if fan.ray_kinds[i] == "facet":
        raise FacetInteriorRay(f"Ray {fan.rays[i]} is interior to a facet")
    face = dual_face_of_ray(i, fan, delta)
    if face is None or face.dim == 0:
        raise FacetInteriorRay(f"Ray {fan.rays[i]} has a vertex as dual face")
    return 2 * interior_count(face, delta) - 2


def pairwise_intersection(i: int, j: int, fan: Fan3) -> int:
    """
    ``D_i . D_j`` on the K3 surface for distinct rays.

    Non-adjacent rays give 0. For a wall ``{v_i, v_j}`` with neighbours
    ``v_l`` and ``v_l'``, let ``m_i`` and ``m_j`` be the covectors dual to
    ``v_i`` and ``v_j`` in the cone ``(v_i, v_j, v_l)``. Then
    ``D_i . D_j = 2 - <m_i, v_l'> - <m_j, v_l'>``.
    """
    if i == j:
        raise ValueError("Use self_intersection for D_i^2")
    _require_smooth(fan)
    pair = (min(i, j), max(i, j))
    thirds = fan.walls.get(pair)
    if thirds is None:
        return 0
    near, far = thirds
    cone = (i, j, near)
    m_i, m_j, _ = dual_covectors(*(fan.rays[k] for k in cone))
    v = fan.rays[far]
    return 2 - dot(m_i, v) - dot(m_j, v)


def self_intersection_oracle(
    i: int, fan: Fan3, cone: Optional[Triangle] = None
) -> int:
    """
    ``D_i^2`` from the linear relation ``sum_k <m, v_k> D_k = 0``.

    ``m`` is the covector dual to ``v_i`` in ``cone`` (by default the first
    maximal cone containing ``v_i``), so ``<m, v_i> = 1`` and
    ``D_i^2 = -sum_{k != i} <m, v_k> D_i . D_k``.
    """
    _require_smooth(fan)
    if cone is None:
        cone = fan.cones_containing(i)[0]
    m = _covector(fan, i, tuple(cone))
    return -sum(
        dot(m, fan.rays[k]) * pairwise_intersection(i, k, fan)
        for k in range(len(fan.rays))
        if k != i
    )


@dataclass(frozen=True)
class RestrictedIntersection:
    """
    Picard lattice of the K3 surface from toric divisor classes.

    Attributes
    ----------
    rays : tuple
        Fan indices of the divisors meeting the surface, in fan order.
    gram_full : IntMatrix
        Intersection matrix of all divisors in ``rays``.
    basis : tuple
        Fan indices of the basis divisors.
    gram : IntMatrix
        Intersection matrix of the basis.
    coordinates : IntMatrix
        Row ``k`` expresses the class of divisor ``rays[k]`` in the basis.
    """

    rays: Tuple[int, ...]
    gram_full: IntMatrix
    basis: Tuple[int, ...]
    gram: IntMatrix
    coordinates: IntMatrix

    def class_of(self, ray: int) -> Tuple[int, ...]:
        """Basis coordinates of ``D_{ray+1}``."""
        return tuple(int(x) for x in self.coordinates[self.rays.index(ray)])

    @property
    def consistent(self) -> bool:
        e = self.coordinates
        return bool(np.all(e @ self.gram @ e.T == self.gram_full))


def class_coordinates(
    fan: Fan3, rays: Sequence[int], complement: Sequence[int]
) -> IntMatrix:
    """
    Coordinates of the divisors ``rays`` in the basis ``rays \\ complement``.

    The three complement divisors are eliminated with the linear relations:
    ``D_C = -R_C^{-1} R_S D_S`` where ``R`` holds the ray vectors as columns.
    """
    basis = [k for k in rays if k not in complement]
    r_c = int_matrix([[fan.rays[k][j] for k in complement] for j in range(3)])
    r_s = int_matrix(
        [[fan.rays[k][j] for k in basis] for j in range(3)], cols=len(basis)
    )
    eliminated = -(integer_inverse(r_c) @ r_s)
    rows = []
    for k in rays:
        if k in complement:
            rows.append(list(eliminated[list(complement).index(k)]))
        else:
            rows.append([1 if b == k else 0 for b in basis])
    return int_matrix(rows, cols=len(basis))


def _unimodular_complement(fan: Fan3, rays: Sequence[int]) -> Tuple[int, int, int]:
    best = None
    for complement in combinations(rays, 3):
        if abs(det3(*(fan.rays[k] for k in complement))) != 1:
            continue
        basis = tuple(k for k in rays if k not in complement)
        if best is None or basis < best[0]:
            best = (basis, complement)
    if best is None:
        raise NoUnimodularComplement("No three rays span the lattice")
    return best[1]


def picard_gram(fan: Fan3, delta: Polytope3) -> RestrictedIntersection:
    """
    Gram matrix of the toric part of the Picard lattice.

    Divisors of facet-interior rays are dropped. Of the remaining ``n``
    divisors, three with unimodular ray matrix are eliminated through the
    linear relations; the lexicographically smallest surviving basis is used.

    Raises
    ------
    NontrivialToricContribution
        If the toric contribution of ``delta`` is not zero.
    """
    l0 = toric_contribution(delta)
    if l0 != 0:
        raise NontrivialToricContribution(
            f"Toric contribution is {l0}; divisors are reducible on the K3", l0
        )
    _require_smooth(fan)
    rays = tuple(fan.non_facet_rays())
    dropped = len(fan.rays) - len(rays)
    if dropped:
        log.info(f"dropping {dropped} facet-interior rays from the Picard basis")

    gram_full: List[List[int]] = []
    for a in rays:
        row = []
        for b in rays:
            if a == b:
                row.append(self_intersection(a, fan, delta))
            else:
                row.append(pairwise_intersection(a, b, fan))
        gram_full.append(row)
    gram_full = int_matrix(gram_full)

    complement = _unimodular_complement(fan, rays)
    coordinates = class_coordinates(fan, rays, complement)
    basis = tuple(k for k in rays if k not in complement)
    positions = [rays.index(k) for k in basis]
    gram = int_matrix(gram_full[np.ix_(positions, positions)])

    result = RestrictedIntersection(
        rays=rays,
        gram_full=gram_full,
        basis=basis,
        gram=gram,
        coordinates=coordinates,
    )
    if not result.consistent:
        log.warning("intersection matrix does not respect the divisor relations")
    return result


def picard_number_check(fan: Fan3, delta: Polytope3) -> Tuple[int, int]:
    """
    Picard number from the rays and from the faces of ``delta``.

    Returns ``(rho_rays, rho_faces)`` where ``rho_rays`` counts divisors
    meeting the surface minus three plus ``L0``, and ``rho_faces`` is the sum
    of interior points over edges of ``delta`` plus its vertex count plus
    ``L0`` minus three.
    """
    l0 = toric_contribution(delta)
    rho_rays = len(fan.non_facet_rays()) - 3 + l0
    rho_faces = (
        sum(interior_count(edge, delta) for edge in delta.faces(1))
        + len(delta.vertices)
        + l0
        - 3
    )
    return rho_rays, rho_faces
