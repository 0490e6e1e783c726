import pytest


def _lattice(text):
    from toricdual.lattice import NamedLatticeExpr

    return NamedLatticeExpr.parse(text).lattice()


def test_parse_named_expression():
    from toricdual.lattice import NamedLatticeExpr

    expr = NamedLatticeExpr.parse("U ⊕ A₁ ⊕ E8^2")
    assert str(expr) == "U+A1+E8^2"
    assert expr.pretty() == "U ⊕ A1 ⊕ E8^2"
    assert expr.rank == 19

    rank_one = NamedLatticeExpr.parse("U+⟨-2⟩+E8^2")
    assert str(rank_one) == "U+<-2>+E8^2"
    assert rank_one.pretty() == "U ⊕ ⟨-2⟩ ⊕ E8^2"

    block = NamedLatticeExpr.parse("gram:[[2,1],[1,-2]]")
    assert str(block) == "gram:[[2,1],[1,-2]]"
    assert block.lattice().discriminant == -5


@pytest.mark.parametrize(
    "text", ["", "U+", "F4", "A0", "E9", "<0>", "U^0", "gram:[[1,2],[3,4]]"]
)
def test_parse_rejects(text):
    from toricdual.lattice import NamedLatticeExpr
    from toricdual.utils.exceptions import ParseError

    with pytest.raises(ParseError):
        NamedLatticeExpr.parse(text)


def test_root_lattices():
    from toricdual.lattice import IntLattice, root_gram

    for kind, n, disc in [("A", 1, 2), ("A", 2, 3), ("D", 4, 4), ("E", 6, 3)]:
        lattice = IntLattice(root_gram(kind, n))
        assert lattice.signature == (0, n)
        assert abs(lattice.discriminant) == disc
        assert lattice.is_even

    e8 = IntLattice(root_gram("E", 8))
    assert e8.discriminant == 1
    e7 = IntLattice(root_gram("E", 7))
    assert e7.invariant_factors == (2,)


def test_catalog_invariants():
    from toricdual.lattice import CATALOG, nikulin_primitive_check

    for text in CATALOG:
        lattice = _lattice(text)
        assert lattice.is_even, text
        assert lattice.is_nondegenerate, text
        assert lattice.signature[0] >= 1, text
        assert nikulin_primitive_check(lattice).passed, text


@pytest.mark.parametrize("k", [2, 4])
def test_catalog_names_both_signs(k):
    from toricdual.duality.pipeline import match_catalog

    assert match_catalog(_lattice(f"U+<{k}>+E8^2")) == f"U+<{k}>+E8^2"
    assert match_catalog(_lattice(f"U+<-{k}>+E8^2")) == f"U+<-{k}>+E8^2"
    # same rank and |disc|, opposite signature
    assert _lattice(f"U+<{k}>+E8^2").signature == (2, 17)


def test_lattice_basics():
    from toricdual.lattice import IntLattice
    from toricdual.utils.exceptions import DimensionMismatch

    u = IntLattice([[0, 1], [1, 0]])
    assert u.signature == (1, 1)
    assert u.discriminant == -1
    assert u.inertia == (1, 1, 0)

    total = u + IntLattice([[-2]])
    assert total.rank == 3
    assert total.invariants() == {
        "rank": 3,
        "signature": [1, 2],
        "discriminant": 2,
        "invariant_factors": [2],
        "even": True,
    }
    assert not IntLattice([[1]]).is_even

    sub = total.pullback([[1], [1], [0]])
    assert sub.gram.tolist() == [[2]]

    with pytest.raises(DimensionMismatch):
        IntLattice([[0, 1], [2, 0]])
    with pytest.raises(DimensionMismatch):
        total.pullback([[1], [0]])


def test_discriminant_forms():
    from toricdual.lattice import (
        IntLattice,
        discriminant_form,
        discriminant_group,
        forms_isomorphic,
    )
    from toricdual.utils.exceptions import DegenerateLattice, OddLattice

    a1 = discriminant_form(_lattice("A1"))
    assert a1.describe() == {"orders": ["2"], "q": ["3/2"]}
    assert a1.length == 1

    plus_two = discriminant_form(_lattice("<2>"))
    assert not forms_isomorphic(a1, plus_two)
    assert forms_isomorphic(a1.negate(), plus_two)

    a2 = discriminant_form(_lattice("U+A2"))
    assert a2.orders == (3,)
    assert str(a2.q((1,))) == "4/3"
    e6 = discriminant_form(_lattice("U+E6+E8"))
    assert not forms_isomorphic(a2, e6)
    assert forms_isomorphic(a2, e6.negate())
    assert not forms_isomorphic(a2, a2.negate())

    assert discriminant_form(_lattice("E8")).order == 1
    assert discriminant_group(_lattice("D4")) == (2, 2)

    with pytest.raises(OddLattice):
        discriminant_form(_lattice("<1>"))
    with pytest.raises(DegenerateLattice):
        discriminant_form(IntLattice([[0]]))


@pytest.mark.parametrize(
    "left, right",
    [
        ("A1", "E7"),
        ("A2", "<4>"),
        ("U+A1", "gram:[[2,1],[1,-2]]"),
        ("D4", "A1"),
    ],
)
def test_discriminant_form_of_direct_sum(left, right):
    from toricdual.lattice import discriminant_form, forms_isomorphic

    combined = discriminant_form(_lattice(f"{left}+{right}"))
    parts = discriminant_form(_lattice(left)).direct_sum(
        discriminant_form(_lattice(right))
    )
    assert combined.order == parts.order
    assert combined.invariant_factors == parts.invariant_factors
    assert forms_isomorphic(combined, parts)


@pytest.mark.parametrize(
    "text, summary",
    [
        ("gram:[[2,1],[1,-6]]+E8", "19-t_-=10, 3-t_+=2, 12>1"),
        ("E7+E8", "19-t_-=4, 3-t_+=3, 7>1"),
        ("gram:[[2,1],[1,-2]]+E8^2", "19-t_-=2, 3-t_+=2, 4>1"),
        ("U+E6+E8", "19-t_-=4, 3-t_+=2, 6>1"),
        ("U+<-2>+E8^2", "19-t_-=1, 3-t_+=2, 3>1"),
    ],
)
def test_nikulin_summary(text, summary):
    from toricdual.lattice import nikulin_primitive_check

    report = nikulin_primitive_check(_lattice(text))
    assert report.summary() == summary
    assert report.passed
    assert bool(report)


def test_nikulin_failures():
    from toricdual.lattice import nikulin_primitive_check

    too_positive = nikulin_primitive_check(_lattice("U^4"))
    assert not too_positive.passed
    assert too_positive.positive_room == -1

    odd = nikulin_primitive_check(_lattice("<1>"))
    assert not odd.passed

    # A1^11 has a discriminant group of length 11 and corank 11
    crowded = nikulin_primitive_check(_lattice("A1^11"))
    assert crowded.summary().endswith("11<=11")
    assert not crowded.passed


@pytest.mark.parametrize(
    "s, t",
    [
        ("U+A1+E8", "U+U+E7"),
        ("U+A2+E8", "U+U+E6"),
        ("U+A1+E7", "U+U+A1+E7"),
        ("U+E8^2", "U+U"),
        ("U+<-2>+E8^2", "U+<2>"),
        ("U+<-4>+E8^2", "U+<4>"),
    ],
)
def test_orthogonal_pairs(s, t):
    from toricdual.lattice import orthogonal_pair_check

    assert orthogonal_pair_check(_lattice(s), _lattice(t))
    assert orthogonal_pair_check(_lattice(t), _lattice(s))


@pytest.mark.parametrize(
    "s, t",
    [
        ("U+A1+E8", "U+U+E6"),
        ("U+<-4>+E8^2", "U+<2>"),
        ("U+A1+E8", "U+E7"),
        ("U+E8^2", "<1>+<1>+<-1>+<-1>"),
        ("U+A1+E8", "U+U+A1+E6"),
    ],
)
def test_orthogonal_pair_negative_controls(s, t):
    from toricdual.lattice import orthogonal_pair_check

    assert not orthogonal_pair_check(_lattice(s), _lattice(t))


def test_e8_complements():
    from toricdual.lattice import e8_complement, invariants_match

    e7 = e8_complement("A1")
    assert e7.rank == 7
    assert e7.signature == (0, 7)
    assert abs(e7.discriminant) == 2
    assert e7.is_even
    assert invariants_match(e7, "E7")

    e6 = e8_complement("A2")
    assert e6.rank == 6
    assert abs(e6.discriminant) == 3
    assert invariants_match(e6, "E6")

    d6 = e8_complement("A1+A1")
    assert d6.rank == 6
    assert abs(d6.discriminant) == 4
    assert invariants_match(d6, "D6")

    with pytest.raises(ValueError):
        e8_complement("A3")


def test_e8_complement_rejects_wrong_roots(monkeypatch):
    from toricdual.lattice import embedding
    from toricdual.utils.exceptions import InvariantViolation

    # first and second simple roots are orthogonal, so they span A1+A1, not A2
    monkeypatch.setitem(embedding._E8_ROOTS, "A2", ([0, 1], "E6"))
    with pytest.raises(InvariantViolation):
        embedding.e8_complement("A2")


def test_u_complement():
    from toricdual.lattice import u_complement

    vector, complement = u_complement(2)
    assert vector == (1, 2)
    assert complement.gram.tolist() == [[-4]]

    with pytest.raises(ValueError):
        u_complement(0)


def test_invariants_match():
    from toricdual.lattice import IntLattice, invariants_match

    # U(2)+<-4> and the Gram matrix of three pairwise meeting conics
    conics = IntLattice([[0, 2, 2], [2, 0, 2], [2, 2, 0]])
    assert invariants_match(conics, "gram:[[0,2],[2,0]]+<-4>")
    assert not invariants_match(conics, "U+<-16>")
    assert invariants_match(_lattice("U+E7+A1"), "U+A1+E7")
    assert not invariants_match(_lattice("U+A1+E7"), "U+D8")


def test_find_isotropic():
    from toricdual.lattice import find_isotropic

    assert find_isotropic(_lattice("U")) == (1, 0)
    assert find_isotropic(_lattice("E8")) is None
    assert find_isotropic(_lattice("<2>+<-2>")) in {(1, 1), (1, -1)}
    # G e is even for every isotropic e, so no e extends to a copy of U
    assert find_isotropic(_lattice("<2>+<-2>"), split_ready=True) is None


def test_split_off_u():
    import numpy as np

    from toricdual.lattice import split_off_U
    from toricdual.linalg.matrix import det
    from toricdual.utils.exceptions import OddLattice

    lattice = _lattice("U+A1")
    split = split_off_U(lattice)
    assert split is not None
    assert split.complement.gram.tolist() == [[-2]]
    assert abs(det(split.basis)) == 1
    gram = lattice.gram
    e = np.array(split.e, dtype=object)
    f = np.array(split.f, dtype=object)
    assert e @ gram @ e == 0
    assert f @ gram @ f == 0
    assert e @ gram @ f == 1

    assert split_off_U(_lattice("E8")) is None
    with pytest.raises(OddLattice):
        split_off_U(_lattice("<1>+<-1>"))


def test_split_off_u_hidden_plane():
    from toricdual.lattice import split_off_U

    # U+A1 in a basis without isotropic basis vectors
    lattice = _lattice("U+A1").pullback([[1, 0, 0], [1, 1, 0], [0, 1, 1]])
    assert lattice.gram.tolist() == [[2, 1, 0], [1, -2, -2], [0, -2, -2]]
    split = split_off_U(lattice)
    assert split is not None
    assert split.complement.gram.tolist() == [[-2]]


@pytest.mark.parametrize(
    "matrix",
    [
        [[1, 0, 0], [0, 1, 0], [0, 0, 1]],
        # third column mixes the A1 root with the second vector
        [[1, 0, 0], [0, 1, 1], [0, 0, 1]],
        # isotropic vector listed second
        [[0, 1, 0], [1, 0, 0], [0, 0, 1]],
    ],
)
def test_split_from_basis(matrix):
    from toricdual.lattice import IntLattice, split_from_basis

    # U+A1 with the plane written as [[0, 1], [1, -2]]
    lattice = IntLattice([[0, 1, 0], [1, -2, 0], [0, 0, -2]])
    split = split_from_basis(lattice, matrix)
    assert split is not None
    assert split.e == (1, 0, 0)
    assert split.f == (1, 1, 0)
    assert split.complement.gram.tolist() == [[-2]]
    assert lattice.pullback(split.basis).gram.tolist() == [
        [0, 1, 0],
        [1, 0, 0],
        [0, 0, -2],
    ]


def test_split_from_basis_rejects():
    from toricdual.lattice import IntLattice, split_from_basis
    from toricdual.utils.exceptions import OddLattice

    lattice = _lattice("U+A1")
    # second vector is orthogonal to the isotropic one
    assert split_from_basis(lattice, [[1, 0, 0], [0, 0, 1], [0, 1, 0]]) is None
    # index 2 sublattice
    assert split_from_basis(lattice, [[1, 0, 0], [0, 1, 0], [0, 0, 2]]) is None
    assert split_from_basis(lattice, [[1, 0], [0, 1], [0, 0]]) is None

    odd = IntLattice([[1, 0, 0], [0, 1, 0], [0, 0, -1]])
    with pytest.raises(OddLattice):
        split_from_basis(odd, [[1, 0, 0], [0, 1, 0], [0, 0, 1]])


def test_certificates():
    from toricdual.lattice import (
        BasisCertificate,
        NamedLatticeExpr,
        align_certificate,
        certificate_gram,
        verify_certificate,
    )
    from toricdual.utils.exceptions import DimensionMismatch

    lattice = _lattice("U+A1")
    target = NamedLatticeExpr.parse("U+A1")
    identity = BasisCertificate(
        source="delta", matrix=[[1, 0, 0], [0, 1, 0], [0, 0, 1]], target=target
    )
    assert verify_certificate(lattice, identity)

    # columns D3, D1, -D2
    shuffled = BasisCertificate(
        source="delta",
        matrix=[[0, 1, 0], [0, 0, -1], [1, 0, 0]],
        target=target,
        labels=("D3", "D1", "D2"),
    )
    assert not verify_certificate(lattice, shuffled)
    aligned = align_certificate(lattice, shuffled)
    assert aligned is not None
    assert verify_certificate(lattice, aligned)
    assert aligned.matrix.tolist() == [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
    assert aligned.labels == ("D1", "-D2", "D3")

    short = BasisCertificate(source="delta", matrix=[[1], [0]], target=target)
    with pytest.raises(DimensionMismatch):
        certificate_gram(lattice, short)

    no_plane = _lattice("<2>+<-2>+<-2>")
    assert align_certificate(no_plane, identity) is None


def test_certificate_needs_unimodular_matrix():
    from toricdual.lattice import BasisCertificate, NamedLatticeExpr, verify_certificate

    lattice = _lattice("<2>")
    doubled = BasisCertificate(
        source="delta_prime", matrix=[[2]], target=NamedLatticeExpr.parse("<8>")
    )
    assert not verify_certificate(lattice, doubled)
