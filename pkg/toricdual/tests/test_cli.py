import json

import pytest


def _cube_pair_file(tmp_path, data_path):
    with open(data_path("cube.json")) as file:
        cube = json.load(file)
    path = tmp_path / "cube_cube.json"
    path.write_text(json.dumps({"id": "cube-cube", "delta": cube, "delta_prime": cube}))
    return str(path)


def test_dual_of_cube(data_path):
    from toricdual.cli.main import run

    envelope = run(["dual", data_path("cube.json")])
    assert envelope.exit_status == 0
    assert envelope.command == "dual"
    results = envelope.results
    assert results["reflexive"]
    assert results["lattice_points"] == 27
    assert results["l0"] == 0
    assert sorted(map(tuple, results["dual_vertices"])) == sorted(
        [(1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0), (0, 0, 1), (0, 0, -1)]
    )
    assert len(envelope.inputs) == 16


def test_dual_json_output(data_path, capsys):
    from toricdual.cli import ReportEnvelope
    from toricdual.cli.main import main

    status = main(["dual", data_path("cube.json"), "--json"])
    assert status == 0
    envelope = ReportEnvelope.from_json(capsys.readouterr().out)
    assert envelope.command == "dual"
    assert envelope.results["lattice_points"] == 27
    assert envelope.warnings == []


def test_dual_text_output(data_path, capsys):
    from toricdual.cli.main import main

    assert main(["dual", data_path("cube.json")]) == 0
    out = capsys.readouterr().out
    assert "reflexive: True" in out
    assert "L0: 0" in out


def test_dual_not_reflexive(data_path):
    from toricdual.cli.main import run

    path = data_path("not_reflexive.json")
    assert run(["dual", path]).exit_status == 0
    envelope = run(["dual", path, "--require-reflexive"])
    assert envelope.exit_status == 3
    assert envelope.results["reflexive"] is False
    assert envelope.results["l0"] is None


def test_require_reflexive_from_config(data_path):
    from toricdual.cli.main import run

    envelope = run(
        ["dual", data_path("not_reflexive.json"), "--config", data_path("config.toml")]
    )
    assert envelope.exit_status == 3


def test_input_errors(data_path, tmp_path):
    from toricdual.cli.main import run

    assert run(["dual", data_path("malformed.json")]).exit_status == 2
    assert run(["dual", str(tmp_path / "missing.json")]).exit_status == 2
    assert run(["analyze"]).exit_status == 2
    assert run(["check-pair"]).exit_status == 2
    assert run(["check-pair", "--builtin", "99"]).exit_status == 2
    assert run(["check-pair", data_path("bad_degree_pair.json")]).exit_status == 2


def test_configuration_errors(data_path, tmp_path):
    from toricdual.cli.main import run

    envelope = run(["dual", data_path("cube.json"), "--search-bound", "0"])
    assert envelope.exit_status == 2
    assert envelope.warnings[0].startswith("invalid configuration")

    missing = str(tmp_path / "missing.toml")
    assert run(["dual", data_path("cube.json"), "--config", missing]).exit_status == 2


def test_argument_conflicts(data_path):
    from toricdual.cli.main import build_parser

    parser = build_parser()
    with pytest.raises(SystemExit):
        parser.parse_args(["check-pair", "--builtin", "50", "--all"])
    with pytest.raises(SystemExit):
        parser.parse_args(["dual", data_path("cube.json"), "-v", "-q"])
    with pytest.raises(SystemExit):
        parser.parse_args(["analyze", "--builtin", "50", "--side", "mirror"])


def test_analyze_quartic(data_path):
    from toricdual.cli.main import run

    envelope = run(["analyze", data_path("no50_delta_prime.json")])
    assert envelope.exit_status == 0
    picard = envelope.results["picard"]
    assert picard["rho"] == 1
    assert picard["gram"] == [[4]]
    assert picard["name"] == "⟨4⟩"


def test_analyze_builtin_side():
    from toricdual.cli.main import run

    envelope = run(["analyze", "--builtin", "35", "--side", "delta_prime"])
    assert envelope.exit_status == 0
    picard = envelope.results["picard"]
    assert picard["name"] == "U"
    assert (picard["rho"], abs(picard["discriminant"])) == (2, 1)


def test_analyze_nontrivial_l0(data_path):
    from toricdual.cli.main import run

    envelope = run(["analyze", data_path("nontrivial_l0.json")])
    assert envelope.exit_status == 4
    assert "L0 = 6" in envelope.warnings[0]
    picard = envelope.results["picard"]
    assert picard["l0"] == 6
    assert picard["gram"] is None
    assert picard["name"] == "L0 = 6"


def test_analyze_nontrivial_l0_text(data_path, capsys):
    from toricdual.cli.main import main

    assert main(["analyze", data_path("nontrivial_l0.json")]) == 4
    assert "not computed, toric contribution L0 = 6" in capsys.readouterr().out


def test_run_with_parsed_arguments(data_path):
    from toricdual.cli.main import build_parser, run

    args = build_parser().parse_args(["dual", data_path("cube.json")])
    envelope = run(args=args)
    assert envelope.exit_status == 0
    assert envelope.results["lattice_points"] == 27


def test_main_parses_once(data_path, monkeypatch):
    import toricdual.cli.main as cli

    calls = []
    build_parser = cli.build_parser

    def counting_parser():
        calls.append(1)
        return build_parser()

    monkeypatch.setattr(cli, "build_parser", counting_parser)
    assert cli.main(["dual", data_path("cube.json"), "--json"]) == 0
    assert len(calls) == 1


def test_analyze_not_reflexive(data_path):
    from toricdual.cli.main import run

    assert run(["analyze", data_path("not_reflexive.json")]).exit_status == 3


def test_check_pair_failure(data_path, tmp_path, capsys):
    from toricdual.cli.main import main

    status = main(["check-pair", _cube_pair_file(tmp_path, data_path)])
    assert status == 1
    out = capsys.readouterr().out
    assert "pair cube-cube: FAIL" in out
    assert "polytope_dual_ok: FAILED" in out


def test_verify_cert_without_certificates(data_path):
    from toricdual.cli.main import run

    envelope = run(["verify-cert", data_path("vertices_pair.json")])
    assert envelope.exit_status == 0
    assert envelope.results["certificates"] == {}
    assert envelope.warnings == ["octahedron-cube: no certificates"]


@pytest.mark.slow
def test_verify_cert_builtin():
    from toricdual.cli.main import run

    envelope = run(["verify-cert", "--builtin", "19"])
    assert envelope.exit_status == 0
    assert sorted(envelope.results["certificates"]) == ["19:1", "19:2", "19:3"]
    for certificates in envelope.results["certificates"].values():
        assert all(c["passed"] for c in certificates)


@pytest.mark.slow
def test_check_pair_file(data_path):
    from toricdual.cli.main import run

    envelope = run(["check-pair", data_path("pair_no50.json")])
    assert envelope.exit_status == 0
    assert envelope.results["passed"] == envelope.results["total"] == 1


@pytest.mark.slow
def test_table(capsys):
    from toricdual.cli.main import main

    status = main(["table", "--json"])
    assert status == 0
    rows = json.loads(capsys.readouterr().out)["results"]["rows"]
    assert len(rows) == 17
    assert all(row["lattice_duality_ok"] for row in rows)
    first = rows[0]
    assert first["id"] == "11-14:1"
    assert first["invariants_delta"] == "(11,2)"
    assert first["invariants_delta_prime"] == "(9,2)"
    assert first["pic_delta"] == "U ⊕ A1 ⊕ E8"
