import pytest


def test_import_():
    from toricdual.utils.io import check_import, import_

    json = import_("json")
    assert json.loads("[1]") == [1]
    check_import("json")

    with pytest.raises(ImportError) as excinfo:
        import_("toricdual_missing_module")
    assert "toricdual_missing_module" in str(excinfo.value)


def test_read_json(data_path):
    from toricdual.utils.exceptions import ParseError
    from toricdual.utils.io import read_json

    assert len(read_json(data_path("cube.json"))["vertices"]) == 8
    with pytest.raises(ParseError) as excinfo:
        read_json(data_path("malformed.json"))
    assert excinfo.value.location.startswith("line")


def test_parallel_map_serial():
    from toricdual.utils.misc import parallel_map

    assert parallel_map(abs, [-3, 1, -2]) == [3, 1, 2]
    assert parallel_map(abs, [], progress=True) == []
    # a single item never leaves the current process
    assert parallel_map(abs, [-4], backend="other") == [4]
    with pytest.raises(ValueError):
        parallel_map(abs, [-1, -2], backend="other")


def test_digest():
    from toricdual.utils.misc import digest

    a = digest({"x": 1, "y": [1, 2]})
    assert a == digest({"y": [1, 2], "x": 1})
    assert a != digest({"x": 2, "y": [1, 2]})
    assert len(a) == 16


def test_exceptions():
    from toricdual.utils import exceptions

    for name in (
        "DegenerateInput",
        "OriginNotInterior",
        "NotReflexive",
        "FacetInteriorRay",
        "NotSimplicialOrSmooth",
        "NoUnimodularComplement",
        "DegenerateLattice",
        "OddLattice",
        "DimensionMismatch",
        "MonomialDegreeMismatch",
        "PointNotInBasisSpan",
        "InvariantViolation",
    ):
        error = getattr(exceptions, name)
        assert issubclass(error, exceptions.ToricDualError)
        assert issubclass(error, ValueError)

    assert issubclass(exceptions.NotSquare, exceptions.DimensionMismatch)
    assert exceptions.NontrivialToricContribution("reducible", 6).l0 == 6
    assert exceptions.ParseError("bad", location="line 3").location == "line 3"
    assert exceptions.ParseError("bad").location is None
