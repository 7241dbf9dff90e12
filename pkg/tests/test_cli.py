import json
import subprocess
import sys

import pytest

from coxcanon.cli import main

COX = {"variety": {"builtin": {"name": "product_of_p1", "k": 2}},
       "divisors": [[1, 0, 0, 0], [0, 0, 1, 0]]}


def _job(tmp_path, job, name="job.json"):
    path = tmp_path / name
    path.write_text(json.dumps(job))
    return str(path)


def _run(capsys, argv):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def test_freeness_on_weighted_blowup(tmp_path, capsys):
    job = {"variety": {"weighted_blowup": {"a": 2, "b": 3, "c": 5}}, "divisors": [[0, -1], [5, 0]]}
    code, out, _ = _run(capsys, ["freeness", "--input", _job(tmp_path, job)])
    assert code == 0
    report = json.loads(out)
    assert report["verdict"]["free"] is True
    assert any("assumed" in w for w in report["warnings"])


def test_canonical_table_on_cox(tmp_path, capsys):
    code, out, _ = _run(capsys, ["canonical", "--input", _job(tmp_path, COX), "--box", "0:4"])
    assert code == 0
    entries = {tuple(e["degree"]): e["dim"] for e in json.loads(out)["table"]["entries"]}
    assert entries[(2, 2)] == 1 and entries[(3, 2)] == 2 and entries[(1, 4)] == 0
    assert len(entries) == 25


def test_malformed_fan_exits_2(tmp_path, capsys):
    job = {"variety": {"toric": {"rays": [[1, 0], [0, 1], [-1, -1]], "cones": [[0, 1]]}}, "divisors": [[1, 0, 0]]}
    code, _, err = _run(capsys, ["sections", "--input", _job(tmp_path, job)])
    assert code == 2 and "invalid fan" in err


def test_schema_violation_exits_2(tmp_path, capsys):
    code, _, err = _run(capsys, ["sections", "--input", _job(tmp_path, {"variety": {"nonsense": {}}})])
    assert code == 2
    code, _, _ = _run(capsys, ["sections", "--input", str(tmp_path / "missing.json")])
    assert code == 2
    code, _, _ = _run(capsys, ["sections", "--input", _job(tmp_path, COX), "--box", "0:1,0:1,0:1"])
    assert code == 2


def test_dependent_classes_exit_3(tmp_path, capsys):
    job = dict(COX, divisors=[[1, 0, 0, 0], [-1, 0, 0, 0]])
    code, _, err = _run(capsys, ["freeness", "--input", _job(tmp_path, job)])
    assert code == 3 and "precondition" in err


def test_csv_output(tmp_path, capsys):
    code, out, _ = _run(capsys, ["sections", "--input", _job(tmp_path, COX), "--box", "0:1,2:3", "--format", "csv"])
    assert code == 0
    assert out.splitlines() == ["degree,dim", '"0,2",3', '"0,3",4', '"1,2",6', '"1,3",8']
    code, _, _ = _run(capsys, ["freeness", "--input", _job(tmp_path, COX), "--format", "csv"])
    assert code == 2


def test_output_is_deterministic(tmp_path, capsys):
    path = _job(tmp_path, COX)
    first = _run(capsys, ["restrict", "--input", path, "--sublattice", "1,0"])[1]
    second = _run(capsys, ["restrict", "--input", path, "--sublattice", "1,0"])[1]
    assert first == second
    report = json.loads(first)
    assert report["restriction"]["agree"] is False
    out_file = tmp_path / "out.json"
    assert main(["restrict", "--input", path, "--sublattice", "1,0", "--out", str(out_file)]) == 0
    assert out_file.read_text() == first


def test_reports_carry_hypotheses(tmp_path, capsys):
    for sub in ["sections", "canonical", "freeness", "probe", "duality", "classgroup"]:
        code, out, _ = _run(capsys, [sub, "--input", _job(tmp_path, COX), "--box=-1:1"])
        assert code == 0, sub
        report = json.loads(out)
        assert report["hypotheses"]["independent_classes"] is True
        assert any("Noetherian" in w for w in report["warnings"])


def test_blowup_and_twist(tmp_path, capsys):
    job = {"variety": {"blowup": {"n": 2, "points": [[1, 0, 0], ["1/2", 1, 0]]}},
           "divisors": [[0, 0, 1], [-1, -1, 3]], "twist": [0, 0, 1]}
    code, out, _ = _run(capsys, ["sections", "--input", _job(tmp_path, job), "--box", "0:0,0:1"])
    assert code == 0
    entries = {tuple(e["degree"]): e["dim"] for e in json.loads(out)["table"]["entries"]}
    # twist A, degree (0, 1): 4A - E_1 - E_2, fifteen quartics minus two conditions
    assert entries == {(0, 0): 3, (0, 1): 13}


def test_classgroup_report(tmp_path, capsys):
    code, out, _ = _run(capsys, ["classgroup", "--input", _job(tmp_path, COX)])
    report = json.loads(out)
    assert code == 0 and report["cl_R"]["free_rank"] == 0 and report["cl_R"]["torsion"] == []
    assert report["canonical_class_in_cl_R"] == []


def test_examples_subcommand(capsys):
    code, out, _ = _run(capsys, ["examples"])
    assert code == 0
    report = json.loads(out)
    assert report["weighted_blowup_2_3_5"]["free"] == ["1,1", "1,2", "1,5"]
    assert report["p1xp1"]["canonical_equals_graded_shifted_by_2_2"] is True


def test_module_entry_point(tmp_path):
    proc = subprocess.run([sys.executable, "-m", "coxcanon", "freeness", "--input", _job(tmp_path, COX)],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["verdict"]["shift"] == [-2, -2]
