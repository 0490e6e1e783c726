import pytest

CUBE = [(x, y, z) for x in (-1, 1) for y in (-1, 1) for z in (-1, 1)]
OCTAHEDRON = [(1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0), (0, 0, 1), (0, 0, -1)]
PRISM = [(1, 0, 1), (1, 0, -1), (0, 1, 1), (0, 1, -1), (-1, -1, 1), (-1, -1, -1)]


def _label_index(fan, labels, label):
    return fan.rays.index(labels.points[label])


def test_cube_fan_is_smooth():
    from toricdual.polytope import hull
    from toricdual.toric import check_smooth, mpcp_fan

    fan = mpcp_fan(hull(CUBE))
    assert sorted(fan.rays) == sorted(OCTAHEDRON)
    assert len(fan.cones) == 8
    assert set(fan.ray_kinds) == {"vertex"}
    assert check_smooth(fan)
    # every wall of a complete fan separates two cones
    assert len(fan.walls) == 12


def test_ray_order_is_respected():
    from toricdual.polytope import hull
    from toricdual.toric import mpcp_fan

    fan = mpcp_fan(hull(CUBE), ray_order=[(0, 0, 1), (9, 9, 9), (-1, 0, 0)])
    assert fan.rays[0] == (0, 0, 1)
    assert fan.rays[1] == (-1, 0, 0)
    assert len(fan.rays) == 6


def test_octahedron_fan_kinds():
    from toricdual.polytope import hull
    from toricdual.toric import mpcp_fan

    fan = mpcp_fan(hull(OCTAHEDRON))
    kinds = fan.ray_kinds
    assert len(fan.rays) == 26
    assert kinds.count("vertex") == 8
    assert kinds.count("edge") == 12
    assert kinds.count("facet") == 6
    assert len(fan.non_facet_rays()) == 20
    assert fan.is_smooth


def test_fan_needs_reflexive():
    from toricdual.polytope import hull
    from toricdual.toric import mpcp_fan
    from toricdual.utils.exceptions import NotReflexive

    with pytest.raises(NotReflexive):
        mpcp_fan(hull([(2, 0, 0), (0, 2, 0), (0, 0, 2), (-1, -1, -1)]))


def test_divisor_relations():
    from toricdual.polytope import hull
    from toricdual.toric import divisor_relations, mpcp_fan

    fan = mpcp_fan(hull(CUBE))
    relations = divisor_relations(fan)
    assert relations.shape == (3, 6)
    for j in range(3):
        assert [int(x) for x in relations[j]] == [ray[j] for ray in fan.rays]


def test_cube_intersections():
    from toricdual.polytope import hull
    from toricdual.toric import mpcp_fan, pairwise_intersection, self_intersection

    delta = hull(CUBE)
    fan = mpcp_fan(delta)
    for i, ray in enumerate(fan.rays):
        assert self_intersection(i, fan, delta) == 0
        for j, other in enumerate(fan.rays):
            if i == j:
                continue
            opposite = all(a == -b for a, b in zip(ray, other))
            assert pairwise_intersection(i, j, fan) == (0 if opposite else 2)

    with pytest.raises(ValueError):
        pairwise_intersection(0, 0, fan)


def test_cube_picard_gram():
    from toricdual.lattice import IntLattice
    from toricdual.polytope import hull
    from toricdual.toric import mpcp_fan, picard_gram, picard_number_check

    delta = hull(CUBE)
    fan = mpcp_fan(delta)
    restricted = picard_gram(fan, delta)
    assert restricted.consistent
    assert len(restricted.basis) == 3

    lattice = IntLattice(restricted.gram)
    assert lattice.rank == 3
    assert abs(lattice.discriminant) == 16
    assert lattice.signature == (1, 2)
    assert lattice.is_even
    # the face count describes the mirror family
    assert picard_number_check(fan, delta) == (3, 17)


def test_octahedron_picard_gram():
    from toricdual.lattice import IntLattice
    from toricdual.polytope import hull
    from toricdual.toric import mpcp_fan, picard_gram, picard_number_check

    delta = hull(OCTAHEDRON)
    fan = mpcp_fan(delta)
    restricted = picard_gram(fan, delta)
    assert restricted.consistent
    assert len(restricted.rays) == 20

    lattice = IntLattice(restricted.gram)
    assert lattice.rank == 17
    assert lattice.is_even
    assert lattice.signature == (1, 16)
    assert all(restricted.gram_full[k, k] == -2 for k in range(20))
    assert picard_number_check(fan, delta) == (17, 3)


def test_class_of_basis_divisor():
    from toricdual.polytope import hull
    from toricdual.toric import mpcp_fan, picard_gram

    delta = hull(CUBE)
    restricted = picard_gram(mpcp_fan(delta), delta)
    for position, ray in enumerate(restricted.basis):
        expected = [0] * len(restricted.basis)
        expected[position] = 1
        assert restricted.class_of(ray) == tuple(expected)


def test_facet_interior_ray():
    from toricdual.polytope import hull
    from toricdual.toric import mpcp_fan, self_intersection
    from toricdual.utils.exceptions import FacetInteriorRay

    delta = hull(OCTAHEDRON)
    fan = mpcp_fan(delta)
    facet_ray = fan.ray_kinds.index("facet")
    with pytest.raises(FacetInteriorRay):
        self_intersection(facet_ray, fan, delta)


def test_nontrivial_toric_contribution():
    from toricdual.polytope import hull
    from toricdual.toric import mpcp_fan, picard_gram
    from toricdual.utils.exceptions import NontrivialToricContribution

    delta = hull(PRISM)
    fan = mpcp_fan(delta)
    with pytest.raises(NontrivialToricContribution) as excinfo:
        picard_gram(fan, delta)
    assert "6" in str(excinfo.value)


@pytest.mark.parametrize("vertices", [CUBE, OCTAHEDRON])
def test_self_intersection_matches_oracle_small(vertices):
    from toricdual.polytope import hull
    from toricdual.toric import mpcp_fan, self_intersection, self_intersection_oracle

    delta = hull(vertices)
    fan = mpcp_fan(delta)
    for i in fan.non_facet_rays():
        expected = self_intersection(i, fan, delta)
        for cone in fan.cones_containing(i):
            assert self_intersection_oracle(i, fan, cone) == expected


@pytest.mark.slow
def test_self_intersection_matches_oracle_builtin(labelled_family_factory):
    from toricdual.duality import builtin_pairs
    from toricdual.toric import self_intersection, self_intersection_oracle

    for pair in builtin_pairs():
        for side in ("delta", "delta_prime"):
            fan, delta, _ = labelled_family_factory(pair.id, side)
            for i in fan.non_facet_rays():
                assert self_intersection_oracle(i, fan) == self_intersection(
                    i, fan, delta
                ), f"{pair.id} {side} ray {fan.rays[i]}"


@pytest.mark.slow
def test_first_case_of_family_11_self_intersections(labelled_family_factory):
    from toricdual.toric import self_intersection

    fan, delta, labels = labelled_family_factory("11-14:1", "delta")
    assert len(labels.points) == 14
    values = [
        self_intersection(_label_index(fan, labels, k), fan, delta)
        for k in range(1, 15)
    ]
    assert values == [0, 2, 8] + [-2] * 11


@pytest.mark.slow
def test_family_15_self_intersections(labelled_family_factory):
    from toricdual.toric import self_intersection

    fan, delta, labels = labelled_family_factory("15-18", "delta")
    assert len(labels.points) == 15
    values = [
        self_intersection(_label_index(fan, labels, k), fan, delta)
        for k in range(1, 16)
    ]
    assert values == [2, -2, -2, 0, 4] + [-2] * 10


@pytest.mark.slow
def test_family_35_rank_and_first_divisor(labelled_family_factory):
    from toricdual.lattice import IntLattice
    from toricdual.toric import picard_gram, self_intersection

    fan, delta, labels = labelled_family_factory("35-37", "delta")
    restricted = picard_gram(fan, delta)
    assert IntLattice(restricted.gram).rank == 18
    assert self_intersection(_label_index(fan, labels, 1), fan, delta) == 2
