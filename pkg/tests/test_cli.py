import json
import subprocess
import sys

import pytest

from colortverberg.cli import main


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture
def bct_file(tmp_path, capsys):
    path = tmp_path / "bct.json"
    code, _, _ = run(["demo", "bct", "--r", "2", "--k", "1", "--s", "1", "--write-instance", str(path)], capsys)
    assert code == 0
    return path


@pytest.fixture
def cx_file(tmp_path, capsys):
    path = tmp_path / "cx.json"
    code, _, _ = run(["demo", "counterexample", "--r", "2", "--s", "1", "--k", "0",
                      "--write-instance", str(path)], capsys)
    assert code == 1
    return path


def test_validate(capsys):
    code, out, _ = run(["validate", "--r", "2", "--k", "1", "--s", "1", "--d", "1", "--m", "6"], capsys)
    assert code == 0 and json.loads(out)["compatible_sd"] == [[1, 1], [2, 2]]
    code, out, _ = run(["validate", "--r", "6", "--k", "1"], capsys)
    assert code == 1
    code, out, _ = run(["validate", "--theorem", "TTRSU", "--r", "2", "--s", "1", "--d", "2"], capsys)
    assert json.loads(out)["feasible_k"][0] == 1
    code, _, err = run(["validate", "--theorem", "TTRSU", "--r", "2"], capsys)
    assert code == 2 and "error" in err


def test_demo_bct_all_pass(capsys):
    code, out, _ = run(["demo", "bct", "--r", "2", "--k", "1", "--s", "1", "--seed", "5"], capsys)
    rep = json.loads(out)
    assert code == 0 and rep["status"] == "PASS" and rep["seed"] == 5
    assert [s["status"] for s in rep["stages"]] == ["PASS"] * 7


def test_demo_bad_parameters(capsys):
    code, _, err = run(["demo", "bct", "--r", "2", "--k", "1", "--s", "3"], capsys)
    assert code == 2


def test_demo_counterexample_gating(capsys):
    code, out, _ = run(["demo", "counterexample", "--r", "2", "--s", "1", "--k", "0"], capsys)
    rep = json.loads(out)
    stages = {s["stage"]: s for s in rep["stages"]}
    assert code == 1
    assert stages["unavoidability"]["status"] == "FAIL"
    assert stages["unavoidability"]["witness"] == {"parts": [[1, 2], [3, 4]], "B": [5]}
    assert stages["morse"]["status"] == "SKIPPED" and "unavoidable" in stages["morse"]["reason"]
    assert stages["kneser"]["gamma_vertices"] == 0


def test_pipeline_with_points(bct_file, tmp_path, capsys):
    pts = tmp_path / "pts.json"
    pts.write_text(json.dumps({"d": 1, "points": [["0"], ["1/2"], ["3"], ["-2"], ["5/3"], ["7"]]}))
    code, out, _ = run(["pipeline", "--instance", str(bct_file), "--points", str(pts)], capsys)
    rep = json.loads(out)
    assert code == 0
    tv = next(s for s in rep["stages"] if s["stage"] == "tverberg")
    assert tv["result"] == "FOUND" and tv["problems"] == []


def test_malformed_inputs(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{nope")
    assert run(["pipeline", "--instance", str(bad)], capsys)[0] == 2
    assert run(["pipeline", "--instance", str(tmp_path / "missing.json")], capsys)[0] == 2
    bad.write_text(json.dumps({"m": 3, "r": 1, "k": 0, "s": 1, "d": 1,
                               "complexes": [{"maximal_faces": [[4]]}]}))
    assert run(["check-unavoidable", "--instance", str(bad)], capsys)[0] == 2


def test_check_unavoidable_modes(bct_file, cx_file, capsys):
    code, out, _ = run(["check-unavoidable", "--instance", str(bct_file), "--mode", "rainbow-rs"], capsys)
    assert code == 0 and json.loads(out)["holds"]
    code, out, _ = run(["check-unavoidable", "--instance", str(cx_file), "--mode", "collective-rs", "--census"],
                       capsys)
    rep = json.loads(out)
    assert code == 1 and rep["witness"]["parts"] == [[1, 2], [3, 4]] and rep["violations"] > 0
    code, out, _ = run(["check-unavoidable", "--instance", str(cx_file), "--mode", "r"], capsys)
    assert code == 1 and len(json.loads(out)["complexes"]) == 2
    assert run(["check-unavoidable", "--instance", str(cx_file), "--mode", "rainbow-rs"], capsys)[0] == 2


def test_kneser_cli(bct_file, cx_file, capsys):
    code, out, _ = run(["kneser", "--instance", str(bct_file), "--rainbow"], capsys)
    rep = json.loads(out)
    assert code == 0 and not rep["has_clique"] and len(rep["gamma"]["vertices"]) == 9
    code, out, _ = run(["kneser", "--instance", str(cx_file)], capsys)
    assert json.loads(out)["gamma"]["vertices"] == []
    code, out, _ = run(["kneser", "--instance", str(bct_file), "--rainbow", "--clique-size", "1"], capsys)
    assert json.loads(out)["has_clique"]


def test_morse_run_and_verify(bct_file, tmp_path, capsys):
    field = tmp_path / "field.json"
    assert run(["morse", "run", "--instance", str(bct_file), "--out", str(field)], capsys)[0] == 0
    data = json.loads(field.read_text())
    assert data["critical_by_dim"] == {"0": 1, "2": 35}
    assert all(set(p) == {"alpha", "beta", "step"} for p in data["field"]["pairs"])
    code, out, _ = run(["morse", "verify", "--field", str(field)], capsys)
    rep = json.loads(out)
    assert code == 0 and rep["certificate"]["status"] == "CERTIFIED(1)"
    for check in ("field", "acyclic", "pi", "census"):
        code, out, _ = run(["morse", "verify", "--field", str(field), "--check", check], capsys)
        assert code == 0 and check in json.loads(out)
    # tamper: drop one pair, cells become uncovered
    data["field"]["pairs"].pop()
    field.write_text(json.dumps(data))
    code, out, _ = run(["morse", "verify", "--field", str(field), "--check", "field"], capsys)
    assert code == 1


def test_morse_forced_is_uncertified(tmp_path, capsys):
    inst = {"m": 6, "r": 2, "k": 1, "s": 1, "d": 1, "coloring": [[1, 2, 3], [4, 5, 6]],
            "complexes": [{"maximal_faces": [[v] for v in range(1, 7)]}] * 2}
    path = tmp_path / "v.json"
    path.write_text(json.dumps(inst))
    assert run(["morse", "run", "--instance", str(path), "--out", str(tmp_path / "f.json")], capsys)[0] == 1
    with pytest.warns(UserWarning):
        code, _, _ = run(["morse", "run", "--instance", str(path), "--force", "--out", str(tmp_path / "f.json")],
                         capsys)
    assert code == 0
    code, out, _ = run(["morse", "verify", "--field", str(tmp_path / "f.json")], capsys)
    assert code == 1 and json.loads(out)["certificate"]["status"] == "UNCERTIFIED"


def test_homology_cli(bct_file, capsys):
    code, out, _ = run(["homology", "--instance", str(bct_file), "--coefficients", "rational"], capsys)
    rep = json.loads(out)
    assert code == 0 and rep["betti"] == {"-1": 0, "0": 0, "1": 0, "2": 35}
    code, out, _ = run(["homology", "--instance", str(bct_file), "--coefficients", "mod-p", "--p", "2",
                        "--through-dim", "1"], capsys)
    assert json.loads(out)["betti"] == {"-1": 0, "0": 0, "1": 0}
    assert run(["homology", "--instance", str(bct_file), "--coefficients", "mod-p"], capsys)[0] == 2


def test_tverberg_cli(bct_file, tmp_path, capsys):
    code, out, _ = run(["tverberg", "search", "--instance", str(bct_file), "--trials", "25", "--seed", "7"], capsys)
    rep = json.loads(out)
    assert code == 0 and rep["summary"] == {"trials": 25, "found": 25, "sound": 25, "seed": 7}
    pts = tmp_path / "p.json"
    pts.write_text(json.dumps({"d": 1, "points": [["0"], ["1"]]}))
    assert run(["tverberg", "search", "--instance", str(bct_file), "--points", str(pts)], capsys)[0] == 2


def test_console_script_entry():
    out = subprocess.run([sys.executable, "-m", "colortverberg.cli", "validate", "--r", "3", "--k", "1"],
                         capture_output=True, text=True)
    assert out.returncode == 0 and json.loads(out.stdout)["expected_m"] == 10


def test_resource_cap(bct_file, capsys):
    code, _, err = run(["check-unavoidable", "--instance", str(bct_file), "--cap", "10"], capsys)
    assert code == 2 and "cap" in err
