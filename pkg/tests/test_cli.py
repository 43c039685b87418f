import json
import subprocess
import sys

import pytest

from kbranching.cli import RunConfig, main, run


def _write(tmp_path, name, text):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


@pytest.fixture
def files(tmp_path):
    return {
        "p1": _write(tmp_path, "p1.txt", "2 1 1 1\n1 2 3\n1 0\n"),
        "p1_bad": _write(tmp_path, "p1_bad.txt", "2 1 1 1\n1 2 3\n0 1\n"),
        "d2": _write(tmp_path, "d2.txt", "2 2 1 2\n1 2 0\n1 2 0\n1 0\n1 0\n"),
        "c3": _write(tmp_path, "c3.txt", "3 3 1 0\n1 2 1\n2 3 1\n3 1 1\n"),
        "open": _write(tmp_path, "open.txt", "1 10 2\n2 0 4\n"),
        "hole": _write(tmp_path, "hole.txt", "0 0\n2 0\n"),
        "garbage": _write(tmp_path, "garbage.txt", "2 1 1\n"),
    }


def _cli(capsys, *argv):
    status = main(list(argv))
    out = capsys.readouterr()
    return status, out.out.strip(), out.err.strip()


def test_feasible_and_infeasible(capsys, files):
    assert _cli(capsys, "feasible", files["p1"])[:2] == (0, "FEASIBLE")
    assert _cli(capsys, "feasible", files["p1_bad"])[:2] == (1, "INFEASIBLE min=-1 X={1}")
    assert _cli(capsys, "feasible", files["p1_bad"], "--engine", "mincut")[:2] == \
        (1, "INFEASIBLE min=-1 X={1}")


def test_pack_output(capsys, files):
    status, out, _ = _cli(capsys, "pack", files["d2"], "--decompose")
    assert status == 0
    assert out.splitlines() == ["F1={1}", "  B1={1}", "F2={2}", "  B1={2}"]
    assert _cli(capsys, "pack", files["p1_bad"])[0] == 1


def test_mincost_eval_and_rootloc(capsys, files):
    assert _cli(capsys, "mincost", files["c3"])[:2] == (0, "x=(1 1 1) F={} cost=0")
    assert _cli(capsys, "mincost", files["c3"], "--arborescence")[:2] == \
        (0, "x=(0 0 1) F={1,3} cost=2")
    assert _cli(capsys, "eval", files["c3"], "--x", "1 0 0")[:2] == (0, "fB=2 fA=2")
    assert _cli(capsys, "eval", files["c3"], "--x", "1,1,0")[:2] == (0, "fB=1 fA=inf")
    assert _cli(capsys, "rootloc", files["p1"], "--opening", files["open"])[:2] == \
        (0, "x=(1 0) F={1} total=5")
    status, out, _ = _cli(capsys, "rootloc", files["p1"], "--opening", files["open"],
                          "--separable", "--verify-mnat")
    assert status == 0 and out.splitlines() == ["x=(1 0) F={1} total=5", "mnat PASSED"]


def test_tables(capsys, files):
    status, out, _ = _cli(capsys, "table", files["c3"], "--function", "fA")
    assert status == 0 and len(out.splitlines()) == 3
    assert _cli(capsys, "check-exchange", files["c3"], "--mode", "mnat")[:2] == (0, "PASSED")
    assert _cli(capsys, "check-exchange", "--table", files["hole"], "--mode", "mnat")[:2] == \
        (1, "FAILED x=(2) y=(0) u=1")
    status, out, _ = _cli(capsys, "argmin", files["c3"], "--verify-base")
    assert status == 0 and out.splitlines()[0] == "min=2" and out.splitlines()[-1] == "PASSED"


def test_oracle_matches_library(capsys, files):
    status, out, _ = _cli(capsys, "oracle", files["c3"])
    assert status == 0 and out.splitlines()[0] == "{}"
    assert _cli(capsys, "oracle", files["d2"], "--op", "packing")[:2] == (0, "FEASIBLE")
    lib = _cli(capsys, "table", files["c3"])[1]
    assert _cli(capsys, "oracle", files["c3"], "--op", "table")[1] == lib


def test_json_output(capsys, files):
    status, out, _ = _cli(capsys, "--output", "json", "feasible", files["p1_bad"])
    data = json.loads(out)
    assert status == 1
    assert data == {"command": "feasible", "status": 1, "feasible": False, "min": -1, "X": [1]}
    status, out, _ = _cli(capsys, "eval", files["c3"], "--x", "1 1 0", "--output", "json")
    assert json.loads(out)["fA"] == "inf"


def test_bad_input_exits_2(capsys, files, tmp_path):
    status, _, err = _cli(capsys, "feasible", files["garbage"])
    assert status == 2 and err.startswith("error: line 1:")
    assert _cli(capsys, "feasible", str(tmp_path / "missing.txt"))[0] == 2
    assert _cli(capsys, "feasible", files["c3"])[0] == 2
    assert _cli(capsys, "eval", files["c3"], "--x", "1 0")[0] == 2
    assert _cli(capsys, "mincost")[0] == 2
    assert _cli(capsys, "nonsense")[0] == 2
    assert _cli(capsys, "rootloc", files["c3"], "--opening", files["open"])[0] == 2


def test_run_api(files):
    assert run(RunConfig("feasible", files["p1"])) == (0, "FEASIBLE")
    status, text = run(RunConfig("bogus", files["p1"], output="json"))
    assert status == 2 and "unknown command" in json.loads(text)["error"]


def test_module_entry_point(files):
    res = subprocess.run([sys.executable, "-m", "kbranching", "feasible", files["p1"]],
                         capture_output=True, text=True)
    assert (res.returncode, res.stdout.strip()) == (0, "FEASIBLE")
