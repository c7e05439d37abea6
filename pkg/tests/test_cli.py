from __future__ import annotations

import json
import subprocess
import sys

import pytest

from g2rig import cli
from g2rig.classify import TableCheck
from g2rig.rigidity import FreeComplete


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_algebra_text(capsys):
    code, out, _ = run(capsys, "algebra", "A_")
    assert code == 0
    assert "dim 3" in out
    assert "[v1,v2] = a12" in out
    assert "center {a12}" in out


def test_algebra_json(capsys):
    code, out, _ = run(capsys, "algebra", "--vertices", "3", "--edges", "1-2", "--format", "json")
    data = json.loads(out)
    assert code == 0
    assert data["center"] == ["v3", "a12"]
    assert data["abelian_factor_dimension"] == 1
    assert data["jacobi"] and data["two_step"]


@pytest.mark.parametrize("argv,status,kind", [
    (["C]"], "rigid", "CohomologyVanishes"),
    (["A_"], "rigid", "FreeComplete"),
    (["--vertices", "5", "--edges", "[[1,2],[1,3],[1,4],[1,5]]"], "non_rigid", "TheoremDWitness"),
    (["--json", '{"vertices": 4, "edges": [[1,2]]}'], "non_rigid", "AbelianFactor"),
])
def test_rigidity_json(capsys, argv, status, kind):
    code, out, _ = run(capsys, "rigidity", *argv)
    data = json.loads(out)
    assert code == 0
    assert data["status"] == status
    assert data["certificate"]["kind"] == kind


def test_rigidity_three_rigid(capsys):
    _, out, _ = run(capsys, "rigidity", "A_")
    assert json.loads(out)["three_rigid"] is True


def test_rigidity_undecided_exits_zero(capsys):
    code, out, _ = run(capsys, "rigidity", "C]", "--method", "combinatorial", "--format", "text")
    assert code == 0
    assert "undecided" in out


def test_rigidity_env_cap(capsys, monkeypatch):
    monkeypatch.setenv("G2RIG_COHOMOLOGY_CAP", "7")
    _, out, _ = run(capsys, "rigidity", "C]")
    assert json.loads(out)["status"] == "undecided"


def test_cohomology(capsys):
    code, out, _ = run(capsys, "cohomology", "A?")
    assert code == 0
    assert json.loads(out)["dim_h2_nil"] == 0


def test_cohomology_over_cap_is_usage(capsys):
    code, _, err = run(capsys, "cohomology", "C~", "--cap", "9")
    assert code == 1
    assert "cap" in err


@pytest.mark.parametrize("argv", [
    ["classify", "--max-vertices", "9"],
    ["classify", "--min-vertices", "3", "--max-vertices", "2"],
    ["rigidity"],
    ["rigidity", "A_", "--vertices", "2", "--edges", "1-2"],
    ["rigidity", "--edges", "1-2"],
])
def test_usage_errors(capsys, argv):
    assert run(capsys, *argv)[0] == 1


def test_argparse_errors_are_usage():
    with pytest.raises(SystemExit) as info:
        cli.main(["nosuchcommand"])
    assert info.value.code == 1


@pytest.mark.parametrize("argv", [
    ["rigidity", "A"],
    ["rigidity", "A`"],
    ["rigidity", "--vertices", "3", "--edges", "1-4"],
    ["rigidity", "--json", "{bad"],
    ["algebra", "--vertices", "0", "--edges", ""],
])
def test_parse_errors(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_classify_csv(capsys, tmp_path):
    out_file = tmp_path / "report.csv"
    code, _, err = run(capsys, "classify", "--max-vertices", "4", "--out", str(out_file), "--method", "with-cohomology")
    assert code == 0
    lines = out_file.read_text().splitlines()
    assert lines[0] == "m,graph6,edges,status,certificate_kind,witness,h2_nil_dim,expected,match"
    assert len(lines) == 1 + 18
    assert "m=4: 11 graphs, 3 rigid, 0 undecided, 0 mismatches" in err


def test_classify_mismatch_exit(capsys, monkeypatch):
    monkeypatch.setattr(cli, "paper_table_check", lambda: TableCheck(False, [{"name": "x"}], []))
    code, _, err = run(capsys, "classify", "--max-vertices", "3", "--format", "text")
    assert code == 3
    assert "table mismatch" in err


def test_rigidity_failed_recheck_exit(capsys, monkeypatch):
    monkeypatch.setattr(FreeComplete, "check", lambda self, g: False)
    assert run(capsys, "rigidity", "A_")[0] == 3


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "g2rig", "rigidity", "A_", "--format", "text"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert proc.stdout.startswith("A_: rigid")
