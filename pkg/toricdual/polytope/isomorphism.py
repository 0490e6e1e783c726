"""Lattice equivalence of polytopes under GL(3, Z)."""

from collections import Counter
from itertools import combinations, permutations
from typing import List, Optional, Tuple

from loguru import logger as log

from toricdual.linalg.matrix import IntMatrix, int_matrix
from toricdual.linalg.small import adjugate3, apply3, det3

from .polytope import Polytope3


def _vertex_degrees(p: Polytope3) -> List[int]:
    counts = Counter(i for e in p.edges for i in e.vertices)
    return [counts[i] for i in range(len(p.vertices))]


def _base_triple(p: Polytope3) -> Tuple[int, int, int]:
    return next(
        t for t in combinations(range(len(p.vertices)), 3)
        if det3(*(p.vertices[i] for i in t)) != 0
    )


def iso_gl3z(p: Polytope3, q: Polytope3) -> Optional[IntMatrix]:
    """
    Find ``U`` in GL(3, Z) with ``U(p) == q``.

    A linearly independent vertex triple of ``p`` is sent to every ordered
    vertex triple of ``q`` with matching edge degrees and determinant; the
    first candidate ``U`` that is integral and maps the vertex set of ``p``
    onto that of ``q`` is returned. The search order is fixed, so the result
    is deterministic.

    Returns
    -------
    IntMatrix or None
        ``U`` as a 3x3 matrix acting on column vectors, or ``None`` when the
        polytopes are not lattice equivalent.
    """
    if not (p.is_integral and q.is_integral):
        return None
    shape_p = (len(p.vertices), len(p.edges), len(p.facets))
    shape_q = (len(q.vertices), len(q.edges), len(q.facets))
    if shape_p != shape_q:
        return None

    degrees_p = _vertex_degrees(p)
    degrees_q = _vertex_degrees(q)
    if sorted(degrees_p) != sorted(degrees_q):
        return None

    base = _base_triple(p)
    columns = [p.vertices[i] for i in base]
    volume = det3(*columns)
    # rows of adj(V), so V^-1 = adj(V) / det(V)
    adjugate = adjugate3(*columns)
    targets = set(q.vertices)

    candidates = [
        [k for k in range(len(q.vertices)) if degrees_q[k] == degrees_p[i]]
        for i in base
    ]
    for image in permutations(range(len(q.vertices)), 3):
        if any(image[k] not in candidates[k] for k in range(3)):
            continue
        w = [q.vertices[k] for k in image]
        if abs(det3(*w)) != abs(volume):
            continue
        # U = W adj(V) / det(V), computed entrywise
        numerator = [
            [sum(w[k][r] * adjugate[k][c] for k in range(3)) for c in range(3)]
            for r in range(3)
        ]
        if any(x % volume for row in numerator for x in row):
            continue
        u = [[x // volume for x in row] for row in numerator]
        if all(apply3(u, v) in targets for v in p.vertices):
            log.debug(f"lattice equivalence found: {u}")
            return int_matrix(u)
    return None
