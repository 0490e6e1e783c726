"""
Three-dimensional convex lattice polytopes: hulls, polar duals, lattice points.

Points are tuples. Coordinates are Python ints, or ``sympy.Rational`` for the
vertices of a non-integral polar dual. A facet is stored as a primitive inner
normal ``n`` and an offset ``c`` so that the polytope satisfies
``<n, x> >= -c``.
"""

import math
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

import numpy as np
import sympy
from loguru import logger as log

from toricdual.linalg.small import cross, det3, dot, sub
from toricdual.utils.exceptions import (
    DegenerateInput,
    NotReflexive,
    OriginNotInterior,
)

Point = Tuple
ORIGIN = (0, 0, 0)


def _coordinate(value):
    entry = sympy.Rational(sympy.sympify(value))
    return int(entry) if entry.q == 1 else entry


def as_point(values: Sequence) -> Point:
    point = tuple(_coordinate(v) for v in values)
    if len(point) != 3:
        raise DegenerateInput(f"Expected a point in three dimensions, got {values!r}")
    return point


def _primitive(vector: Sequence) -> Tuple[int, int, int]:
    scale = 1
    for x in vector:
        scale = math.lcm(scale, sympy.Rational(x).q)
    scaled = [int(x * scale) for x in vector]
    g = math.gcd(*scaled)
    return tuple(x // g for x in scaled)


@dataclass(frozen=True)
class Facet:
    normal: Tuple[int, int, int]
    offset: object
    vertices: Tuple[int, ...]


@dataclass(frozen=True)
class Edge:
    vertices: Tuple[int, int]
    facets: Tuple[int, int]


@dataclass(frozen=True)
class Face:
    """A face of a polytope, given by its dimension and vertex indices."""

    dim: int
    vertices: FrozenSet[int]


@dataclass(frozen=True)
class LatticePoint:
    """A lattice point together with the facets it lies on."""

    point: Tuple[int, int, int]
    facets: FrozenSet[int]

    @property
    def kind(self) -> str:
        return {0: "interior", 1: "facet", 2: "edge"}.get(len(self.facets), "vertex")


@dataclass(frozen=True)
class Polytope3:
    """
    Full-dimensional convex polytope in three dimensions.

    Use :func:`hull` to construct one. Vertices are sorted lexicographically,
    facets by normal and edges by vertex indices.
    """

    vertices: Tuple[Point, ...]
    facets: Tuple[Facet, ...]
    edges: Tuple[Edge, ...] = field(repr=False)

    @property
    def is_integral(self) -> bool:
        return all(isinstance(x, int) for v in self.vertices for x in v)

    @property
    def contains_origin_in_interior(self) -> bool:
        return all(f.offset > 0 for f in self.facets)

    def faces(self, dim: int) -> List[Face]:
        if dim == 0:
            return [Face(0, frozenset([i])) for i in range(len(self.vertices))]
        if dim == 1:
            return [Face(1, frozenset(e.vertices)) for e in self.edges]
        if dim == 2:
            return [Face(2, frozenset(f.vertices)) for f in self.facets]
        raise ValueError(f"No faces of dimension {dim} in a 3-polytope")

    def face_with_vertices(self, vertices: Iterable[int]) -> Optional[Face]:
        """The face whose vertex set is exactly ``vertices``."""
        wanted = frozenset(vertices)
        dim = {1: 0, 2: 1}.get(len(wanted), 2)
        return next((f for f in self.faces(dim) if f.vertices == wanted), None)

    def facet_index(self, normal: Sequence[int]) -> Optional[int]:
        normal = tuple(normal)
        return next(
            (k for k, f in enumerate(self.facets) if f.normal == normal), None
        )

    @cached_property
    def lattice_points(self) -> Tuple[LatticePoint, ...]:
        return tuple(_enumerate_lattice_points(self))


def _affinely_spanning(points: Sequence[Point]) -> bool:
    base = points[0]
    differences = [sub(p, base) for p in points[1:]]
    for a, b, c in combinations(differences, 3):
        if det3(a, b, c) != 0:
            return True
    return False


def hull(points: Iterable[Sequence]) -> Polytope3:
    """
    Convex hull of a finite point set in three dimensions.

    Every plane through three non-collinear input points is tested as a
    supporting plane; those with all points on one side become facets.

    Raises
    ------
    DegenerateInput
        If the points do not span three dimensions.
    """
    pts = sorted(set(as_point(p) for p in points))
    if len(pts) < 4 or not _affinely_spanning(pts):
        raise DegenerateInput(
            f"{len(pts)} distinct points do not span a 3-dimensional polytope"
        )

    planes: Dict[Tuple[int, int, int], object] = {}
    for a, b, c in combinations(pts, 3):
        normal = cross(sub(b, a), sub(c, a))
        if normal == (0, 0, 0):
            continue
        normal = _primitive(normal)
        level = dot(normal, a)
        values = [dot(normal, p) for p in pts]
        if all(v >= level for v in values):
            planes[normal] = _coordinate(-level)
        elif all(v <= level for v in values):
            planes[tuple(-x for x in normal)] = _coordinate(level)

    incidence = {
        p: frozenset(n for n, c in planes.items() if dot(n, p) == -c) for p in pts
    }
    vertices = [p for p in pts if len(incidence[p]) >= 3]
    normals = sorted(planes)
    facet_of = {n: k for k, n in enumerate(normals)}
    facets = tuple(
        Facet(
            normal=n,
            offset=planes[n],
            vertices=tuple(
                i for i, v in enumerate(vertices) if n in incidence[v]
            ),
        )
        for n in normals
    )
    edges = []
    for i, j in combinations(range(len(vertices)), 2):
        shared = incidence[vertices[i]] & incidence[vertices[j]]
        if len(shared) >= 2:
            incident = tuple(sorted(facet_of[n] for n in shared))[:2]
            edges.append(Edge(vertices=(i, j), facets=incident))
    return Polytope3(vertices=tuple(vertices), facets=facets, edges=tuple(edges))


def polar_dual(p: Polytope3) -> Polytope3:
    """
    Polar dual ``{y : <x, y> >= -1 for all x in p}``.

    Each facet ``<n, x> >= -c`` of ``p`` gives the dual vertex ``n / c``. The
    result may have rational vertices; check :attr:`Polytope3.is_integral`.

    Raises
    ------
    OriginNotInterior
        If the origin is not strictly inside ``p``.
    """
    if not p.contains_origin_in_interior:
        raise OriginNotInterior("The origin is not an interior point of the polytope")
    return hull(
        tuple(sympy.Rational(x) / sympy.Rational(f.offset) for x in f.normal)
        for f in p.facets
    )


def _enumerate_lattice_points(p: Polytope3) -> List[LatticePoint]:
    coords = np.array([[float(x) for x in v] for v in p.vertices])
    low = np.floor(coords.min(axis=0)).astype(np.int64)
    high = np.ceil(coords.max(axis=0)).astype(np.int64)
    grid = np.stack(
        np.meshgrid(
            *[np.arange(lo, hi + 1) for lo, hi in zip(low, high)], indexing="ij"
        ),
        axis=-1,
    ).reshape(-1, 3)
    normals = np.array([f.normal for f in p.facets], dtype=np.int64)
    # <n, x> is an integer, so the bound may be rounded up
    bounds = np.array(
        [int(sympy.ceiling(-f.offset)) for f in p.facets], dtype=np.int64
    )
    values = grid @ normals.T
    inside = np.all(values >= bounds, axis=1)
    exact = np.array(
        [sympy.Rational(f.offset).q == 1 for f in p.facets], dtype=bool
    )
    on_facet = (values == bounds) & exact

    points = []
    for row in np.nonzero(inside)[0]:
        point = tuple(int(x) for x in grid[row])
        points.append(
            LatticePoint(point, frozenset(int(k) for k in np.nonzero(on_facet[row])[0]))
        )
    return sorted(points, key=lambda lp: lp.point)


def lattice_points(p: Polytope3) -> List[LatticePoint]:
    """All lattice points of ``p``, sorted lexicographically and tagged by face."""
    return list(p.lattice_points)


def interior_points(p: Polytope3) -> List[Tuple[int, int, int]]:
    return [lp.point for lp in p.lattice_points if not lp.facets]


def is_reflexive(p: Polytope3) -> bool:
    """
    True iff ``p`` is a lattice polytope whose only interior lattice point is
    the origin and whose polar dual is a lattice polytope.
    """
    if not p.is_integral or not p.contains_origin_in_interior:
        return False
    if interior_points(p) != [ORIGIN]:
        return False
    # with primitive normals the dual vertex n / c is integral iff c == 1
    return all(f.offset == 1 for f in p.facets)


def interior_count(face: Face, p: Polytope3) -> int:
    """Number of lattice points in the relative interior of ``face``."""
    if face.dim == 0:
        return 0
    if face.dim == 1:
        a, b = (p.vertices[i] for i in sorted(face.vertices))
        if p.is_integral:
            return math.gcd(*sub(b, a)) - 1
        facets = {
            k for k, f in enumerate(p.facets) if face.vertices <= set(f.vertices)
        }
        return sum(1 for lp in p.lattice_points if lp.facets == facets)
    index = next(
        k for k, f in enumerate(p.facets) if frozenset(f.vertices) == face.vertices
    )
    return sum(1 for lp in p.lattice_points if lp.facets == {index})


def dual_face(face: Face, p: Polytope3, dual: Optional[Polytope3] = None) -> Face:
    """
    Dual face of ``face`` in the polar dual of the reflexive polytope ``p``.

    It consists of the dual points ``y`` with ``<x, y> = -1`` on all of
    ``face``, and has dimension ``2 - face.dim``.
    """
    if dual is None:
        if not is_reflexive(p):
            raise NotReflexive("Dual faces are only defined for reflexive polytopes")
        dual = polar_dual(p)
    corners = [p.vertices[i] for i in face.vertices]
    matching = [
        k for k, w in enumerate(dual.vertices) if all(dot(w, x) == -1 for x in corners)
    ]
    result = dual.face_with_vertices(matching)
    if result is None or result.dim != 2 - face.dim:
        raise DegenerateInput("Face does not have a dual face in the polar dual")
    return result


def toric_contribution(p: Polytope3) -> int:
    """
    Sum over edges of ``p`` of interior points on the edge times interior
    points on its dual edge. Zero means every toric divisor meets the K3
    hypersurface in an irreducible curve.
    """
    if not is_reflexive(p):
        raise NotReflexive("Toric contribution needs a reflexive polytope")
    dual = polar_dual(p)
    total = 0
    for edge in p.faces(1):
        own = interior_count(edge, p)
        if own == 0:
            continue
        total += own * interior_count(dual_face(edge, p, dual), dual)
    log.debug(f"toric contribution L0 = {total}")
    return total
