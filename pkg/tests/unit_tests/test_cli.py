import json
import os
import sys

import pytest

sys.path.append('.')
# pylint: disable=import-error
from controllers.BigPicture import run
from models.QSeries import J_series

SERIES = os.path.join(os.path.dirname(os.path.abspath(__file__)), "..", "..", "data", "mckay_thompson.csv")


@pytest.fixture(autouse=True)
def working_directory(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)


def _json(capsys, argv, code=0):
    assert run(argv + ["--json"]) == code
    return json.loads(capsys.readouterr().out)


def test_version(capsys):
    assert run(["--version"]) == 0
    assert capsys.readouterr().out.strip() == "v1.0.0"


def test_dist(capsys):
    assert run(["dist", "--u", "1,0;0,1", "--v", "6,0;0,1"]) == 0
    assert capsys.readouterr().out == "6\n"


def test_p_adic_dist(capsys):
    document = _json(capsys, ["dist", "--u", "1,0;0,1", "--v", "12,0;0,1", "--p", "2"])
    assert document["distance"] == 2
    assert document["p"] == 2

    assert run(["dist", "--u", "1,0;0,1", "--v", "12,0;0,1", "--p", "0"]) == 1
    assert capsys.readouterr().err == "bp: 0 is not prime\n"


def test_canon(capsys):
    document = _json(capsys, ["canon", "--matrix", "4,2;0,6"])
    assert document == {"schema": "bp/1", "id": "2,1;0,3", "det": 6, "alpha": "1/2"}


def test_neighbors(capsys):
    document = _json(capsys, ["neighbors", "--vertex", "1,0;0,1", "--p", "2"])
    assert document["schema"] == "bp/1"
    assert document["p"] == 2
    assert [v["id"] for v in document["vertices"]] == ["2,0;0,1", "1,0;0,2", "1,1;0,2"]


def test_malformed_matrix(capsys):
    assert run(["canon", "--matrix", "1,2"]) == 1
    assert capsys.readouterr().err.startswith("bp: malformed matrix")

    assert run(["canon", "--matrix", "1/-2,0;0,1"]) == 1
    err = capsys.readouterr().err
    assert err.startswith("bp: malformed matrix entry: '1/-2'")
    assert "Traceback" not in err


def test_usage_errors(capsys):
    assert run(["frobnicate"]) == 2
    assert run([]) == 2
    assert run(["dist", "--u", "1,0;0,1"]) == 2


def test_configuration_error(capsys):
    assert run(["dist", "--u", "1,0;0,1", "--v", "2,0;0,1", "--terms", "0"]) == 2
    assert "terms is out of bounds" in capsys.readouterr().err


def test_geodesic(capsys):
    document = _json(capsys, ["geodesic", "--u", "1,0;0,1", "--v", "12,0;0,1"])
    assert document["vertices"][0] == "1,0;0,1"
    assert document["vertices"][-1] == "12,0;0,1"
    assert sorted(document["steps"]) == [2, 2, 3]


def test_thread_as_graph(capsys):
    assert run(["thread", "--N", "6", "--format", "dot"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("digraph bigpicture {")
    assert '"1,0;0,1" -> "2,0;0,1" [label="2"];' in out
    assert '"2,0;0,1" -> "6,0;0,1" [label="3"];' in out

    assert run(["thread", "--N", "6", "--format", "json"]) == 0
    document = json.loads(capsys.readouterr().out)
    assert document["kind"] == "thread"
    assert len(document["edges"]) == 4


def test_snake(capsys):
    assert len(_json(capsys, ["snake", "--N", "1", "--envelope"])["vertices"]) == 110
    assert [v["id"] for v in _json(capsys, ["snake", "--N", "1"])["vertices"]] == ["1,0;0,1"]


def test_snake_summary_is_logged(capsys):
    assert run(["snake", "--N", "1"]) == 0
    err = capsys.readouterr().err
    assert "snake(1)" in err
    assert "vertices : 1" in err


def test_snake_level_limit(capsys, tmp_path):
    (tmp_path / "bigpicture.yaml").write_text("engine:\n  max_snake_level: 10\n")
    assert run(["snake", "--N", "11"]) == 1
    assert "exceeds max_snake_level" in capsys.readouterr().err


def test_atkin_lehner(capsys):
    document = _json(capsys, ["al", "--N", "6", "--e", "2"])
    assert document["matrix"] == "2,1;6,4"
    assert document["preserves_thread"] is True

    assert run(["al", "--N", "6", "--e", "4"]) == 1


def test_normalizer(capsys):
    document = _json(capsys, ["normalizer", "--N", "4", "--g", "0,-1;4,0"])
    assert document["member"] is True


def test_stab_check(capsys):
    document = _json(capsys, ["stab-check", "--N", "6", "--samples", "5", "--seed", "3"])
    assert document["ok"] is True
    assert document["failures"] == []


def test_orbit(capsys):
    document = _json(capsys, ["orbit", "--gen", "1,1;0,1"])
    assert document["kind"] == "orbit"
    assert [v["id"] for v in document["vertices"]] == ["1,0;0,1"]

    assert run(["orbit", "--gen", "2,0;0,1", "--cap", "5"]) == 1
    assert "orbit exceeds cap of 5 vertices" in capsys.readouterr().err


def test_hecke(capsys):
    document = _json(capsys, ["hecke", "--N", "2"])
    assert document["schema"] == "bp/1"


def test_evolve_check(capsys):
    document = _json(capsys, ["evolve-check", "--seed", "5", "--t", "0.5", "--t", "2.0"])
    assert document["ok"] is True
    assert len(document["checks"]) == 4


def test_partition(capsys):
    assert run(["partition", "--beta", "3", "--beta", "4", "--X", "10"]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert lines[0] == "beta,X,mode,value"
    assert len(lines) == 3
    assert lines[1].startswith("3.0,10,coset,")


def test_partition_divergent(capsys):
    assert run(["partition", "--beta", "2", "--X", "10"]) == 1
    assert "divergent range" in capsys.readouterr().err


def test_gibbs(capsys):
    document = _json(capsys, ["gibbs", "--beta", "4", "--X", "1"])
    assert document["value"] == pytest.approx(1.0)


def test_qseries(capsys):
    document = _json(capsys, ["qseries", "j", "--terms", "2"])
    assert document["coeffs"]["-1"] == "1"
    assert document["coeffs"]["0"] == "744"
    assert document["coeffs"]["1"] == "196884"


def test_qseries_csv(capsys):
    assert run(["qseries", "2B", "--csv", "--terms", "3"]) == 0
    assert capsys.readouterr().out.splitlines() == ["class,n,value", "2B,-1,1", "2B,1,276", "2B,2,-2048", "2B,3,11202"]

    assert run(["qseries", "E4", "--csv"]) == 1


def test_faber(capsys):
    assert run(["faber", "--class", "1A", "--k", "2"]) == 0
    assert capsys.readouterr().out == "x^2 - 393768\n"


def test_replicate_builtin(capsys):
    document = _json(capsys, ["replicate", "--class", "1A", "--k", "3", "--terms", "5"])
    assert document["k"] == 3
    assert document["coeffs"]["1"] == "196884"
    assert document["precision"] == 5


def test_replicate_from_file(capsys):
    document = _json(capsys, ["replicate", "--series", SERIES, "--class", "2B", "--k", "2", "--terms", "1"])
    assert document["class"] == "2B"
    assert document["coeffs"]["1"] == "196884"

    assert run(["replicate", "--series", SERIES, "--class", "2B", "--k", "7"]) == 1
    assert run(["replicate", "--series", SERIES, "--class", "5A", "--k", "2"]) == 1


def test_replicate_J_from_file(capsys):
    document = _json(capsys, ["replicate", "--series", SERIES, "--class", "1A", "--k", "3", "--terms", "20"])
    assert document["coeffs"] == J_series(20).to_document()["coeffs"]
    assert document["precision"] == 20


def test_replicate_2A_from_file_is_J(capsys):
    document = _json(capsys, ["replicate", "--series", SERIES, "--class", "2A", "--k", "2", "--terms", "10"])
    assert document["coeffs"] == J_series(10).to_document()["coeffs"]


def test_verify_replicable(capsys):
    document = _json(capsys, ["verify-replicable", "--series", SERIES, "--class", "2B", "--kmax", "2", "--terms", "1"])
    assert document["replicable"] is True
    assert document["class"] == "2B"


def test_eval(capsys):
    document = _json(capsys, ["eval", "--class", "1A", "--z", "1j", "--terms", "30"])
    assert document["re"] == pytest.approx(984, abs=1e-6)
    assert document["im"] == pytest.approx(0, abs=1e-6)

    assert run(["eval", "--z", "i"]) == 1
    assert run(["eval", "--z=-1j"]) == 1
    assert run(["eval", "--z", "1j", "--dps", "0"]) == 1
    assert "at least 15 digits" in capsys.readouterr().err


def test_export_is_deterministic(capsys):
    assert run(["export", "--radius", "4"]) == 0
    first = capsys.readouterr().out
    assert run(["export", "--radius", "4"]) == 0
    assert capsys.readouterr().out == first
    assert first.startswith("digraph bigpicture {")


GOLDEN = [
    ["canon", "--matrix", "2,1;0,4"],
    ["dist", "--u", "1,0;0,1", "--v", "6,0;0,1"],
    ["neighbors", "--vertex", "2,0;0,1", "--p", "3", "--json"],
    ["sphere", "--n", "6", "--json"],
    ["ball", "--radius", "4", "--json"],
    ["geodesic", "--u", "1,0;0,1", "--v", "12,0;0,1", "--json"],
    ["thread", "--N", "6", "--format", "dot"],
    ["snake", "--N", "4", "--json"],
    ["al", "--N", "6", "--e", "2", "--json"],
    ["normalizer", "--N", "4", "--g", "1,1/2;0,1", "--json"],
    ["stab-check", "--N", "6", "--samples", "5", "--seed", "3", "--json"],
    ["orbit", "--vertex", "2,0;0,1", "--gen", "1,1;0,1", "--gen", "0,-1;1,0", "--json"],
    ["invariant-tree", "--gen", "0,-1;2,0", "--json"],
    ["hecke", "--N", "4", "--json"],
    ["project", "--kind", "thread", "--N", "6", "--json"],
    ["evolve-check", "--seed", "5", "--json"],
    ["partition", "--beta", "3", "--X", "10", "--X", "100"],
    ["gibbs", "--beta", "4", "--X", "100", "--json"],
    ["replicate", "--series", SERIES, "--class", "2A", "--k", "2", "--terms", "10", "--json"],
    ["export", "--radius", "3", "--format", "json"],
]


@pytest.mark.parametrize('argv', GOLDEN)
def test_output_is_reproducible(capsys, argv):
    assert run(argv) == 0
    first = capsys.readouterr().out
    assert first

    assert run(argv) == 0
    assert capsys.readouterr().out == first
