import pytest

CUBE = [(x, y, z) for x in (-1, 1) for y in (-1, 1) for z in (-1, 1)]
OCTAHEDRON = [(1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0), (0, 0, 1), (0, 0, -1)]
# triangle times segment: every vertical edge has an interior point, and so
# does its dual edge
PRISM = [(1, 0, 1), (1, 0, -1), (0, 1, 1), (0, 1, -1), (-1, -1, 1), (-1, -1, -1)]


def test_hull_of_cube():
    from toricdual.polytope import hull

    cube = hull(CUBE + [(0, 0, 0), (1, 0, 0)])
    assert sorted(cube.vertices) == sorted(CUBE)
    assert len(cube.facets) == 6
    assert len(cube.edges) == 12
    assert all(f.offset == 1 for f in cube.facets)
    assert cube.contains_origin_in_interior


def test_hull_rejects_flat_input():
    from toricdual.polytope import hull
    from toricdual.utils.exceptions import DegenerateInput

    with pytest.raises(DegenerateInput):
        hull([(0, 0, 0), (1, 0, 0), (0, 1, 0), (1, 1, 0)])
    with pytest.raises(DegenerateInput):
        hull([(0, 0, 0), (1, 0, 0), (0, 1, 0)])
    with pytest.raises(DegenerateInput):
        hull([(0, 0), (1, 0), (0, 1), (1, 1)])


def test_polar_dual_of_cube_is_octahedron():
    from toricdual.polytope import hull, polar_dual

    dual = polar_dual(hull(CUBE))
    assert sorted(dual.vertices) == sorted(OCTAHEDRON)
    assert sorted(polar_dual(dual).vertices) == sorted(CUBE)


def test_polar_dual_needs_interior_origin():
    from toricdual.polytope import hull, polar_dual
    from toricdual.utils.exceptions import OriginNotInterior

    corner = hull([(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)])
    with pytest.raises(OriginNotInterior):
        polar_dual(corner)


def test_polar_dual_can_be_rational():
    import sympy

    from toricdual.polytope import hull, is_reflexive, polar_dual

    simplex = hull([(2, 0, 0), (0, 2, 0), (0, 0, 2), (-1, -1, -1)])
    assert not is_reflexive(simplex)
    dual = polar_dual(simplex)
    assert not dual.is_integral
    half = sympy.Rational(-1, 2)
    assert (half, half, half) in dual.vertices


def test_lattice_points_of_cube():
    from toricdual.polytope import hull, interior_points, lattice_points

    points = lattice_points(hull(CUBE))
    assert len(points) == 27
    kinds = [lp.kind for lp in points]
    assert kinds.count("vertex") == 8
    assert kinds.count("edge") == 12
    assert kinds.count("facet") == 6
    assert kinds.count("interior") == 1
    assert interior_points(hull(CUBE)) == [(0, 0, 0)]


@pytest.mark.parametrize(
    "vertices, expected",
    [
        pytest.param(
            [(1, 0, 0), (0, 1, 0), (0, 0, 1), (-1, -1, -1)],
            {"vertex": 4, "interior": 1},
            id="simplex",
        ),
        pytest.param(
            PRISM, {"vertex": 6, "edge": 3, "facet": 2, "interior": 1}, id="prism"
        ),
    ],
)
def test_lattice_point_face_tags(vertices, expected):
    from collections import Counter

    from toricdual.polytope import hull, interior_points, is_reflexive, lattice_points

    p = hull(vertices)
    points = lattice_points(p)
    assert Counter(lp.kind for lp in points) == expected
    assert interior_points(p) == [(0, 0, 0)]
    assert is_reflexive(p)
    for lp in points:
        if lp.point in p.vertices:
            assert len(lp.facets) >= 3
        for k in lp.facets:
            facet = p.facets[k]
            value = sum(n * x for n, x in zip(facet.normal, lp.point))
            assert value == -facet.offset


def test_prism_edge_and_facet_points():
    from toricdual.polytope import hull, lattice_points

    kinds = {lp.point: lp.kind for lp in lattice_points(hull(PRISM))}
    for point in [(1, 0, 0), (0, 1, 0), (-1, -1, 0)]:
        assert kinds[point] == "edge"
    assert kinds[(0, 0, 1)] == "facet"
    assert kinds[(0, 0, -1)] == "facet"
    assert kinds[(0, 0, 0)] == "interior"


def test_is_reflexive():
    from toricdual.polytope import hull, is_reflexive

    assert is_reflexive(hull(CUBE))
    assert is_reflexive(hull(OCTAHEDRON))
    assert is_reflexive(hull(PRISM))
    # the origin is not the only interior point
    assert not is_reflexive(hull([(3, 0, 0), (0, 3, 0), (0, 0, 3), (-1, -1, -1)]))


def test_interior_count():
    from toricdual.polytope import hull, interior_count

    cube = hull(CUBE)
    assert all(interior_count(face, cube) == 1 for face in cube.faces(1))
    assert all(interior_count(face, cube) == 1 for face in cube.faces(2))
    assert all(interior_count(face, cube) == 0 for face in cube.faces(0))


def test_toric_contribution():
    from toricdual.polytope import hull, toric_contribution
    from toricdual.utils.exceptions import NotReflexive

    assert toric_contribution(hull(CUBE)) == 0
    assert toric_contribution(hull(OCTAHEDRON)) == 0
    assert toric_contribution(hull(PRISM)) == 6
    with pytest.raises(NotReflexive):
        toric_contribution(hull([(2, 0, 0), (0, 2, 0), (0, 0, 2), (-1, -1, -1)]))


def test_iso_gl3z():
    import numpy as np

    from toricdual.linalg.small import apply3
    from toricdual.polytope import hull, iso_gl3z

    shear = [[1, 1, 0], [0, 1, 0], [2, 0, 1]]
    cube = hull(CUBE)
    moved = hull([apply3(shear, v) for v in CUBE])
    u = iso_gl3z(cube, moved)
    assert u is not None
    assert abs(int(round(np.linalg.det(np.array(u.tolist(), dtype=float))))) == 1
    images = sorted(apply3(u.tolist(), v) for v in cube.vertices)
    assert images == sorted(moved.vertices)

    assert iso_gl3z(cube, hull(OCTAHEDRON)) is None
    # same combinatorics, different lattice
    doubled = hull([tuple(2 * x for x in v) for v in OCTAHEDRON])
    assert iso_gl3z(hull(OCTAHEDRON), doubled) is None


@pytest.mark.slow
def test_builtin_polytopes_are_reflexive_with_trivial_contribution():
    from toricdual.duality import build_polytope, builtin_pairs
    from toricdual.polytope import is_reflexive, polar_dual, toric_contribution

    for pair in builtin_pairs():
        for spec in (pair.delta, pair.delta_prime):
            delta = build_polytope(spec)
            assert is_reflexive(delta), pair.id
            dual = polar_dual(delta)
            assert is_reflexive(dual), pair.id
            # polar duality is an involution
            assert polar_dual(dual).vertices == delta.vertices, pair.id
            assert toric_contribution(delta) == 0, pair.id
