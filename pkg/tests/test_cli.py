import json
from importlib import resources

import jsonschema
import pytest

from qrpw.cli import main, table_by_name

SCHEMA = json.loads(resources.files("qrpw").joinpath("report_schema.json").read_text())


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--json")
    doc = json.loads(out)
    jsonschema.validate(doc, SCHEMA)
    return code, doc


def test_reduce(capsys):
    code, doc = run_json(capsys, "reduce", "z1 z0")
    assert code == 0
    assert doc["data"]["normal_form"] == "q^-1 z0 z1"
    assert doc["data"]["terms"][0]["word"] == [0, 1, 1, 0]


def test_parse_errors_are_usage_errors(capsys):
    code, _, err = run(capsys, "reduce", "z1 ^")
    assert code == 2
    assert "position 4" in err


def test_unknown_subcommand(capsys):
    with pytest.raises(SystemExit) as info:
        main(["frobnicate"])
    assert info.value.code == 2


def test_degree_and_coinv(capsys):
    assert run_json(capsys, "degree", "--table", "rho(1,2)", "z0 z1 xi")[1]["data"]["degree"] == -1
    assert run_json(capsys, "degree", "--table", "phi", "--l", "2", "1 + x")[1]["data"]["degree"] == "inhomogeneous"
    _, doc = run_json(capsys, "coinv", "--table", "Z2", "--bound", "2")
    assert all(len(w) == 4 for w in doc["data"]["words"])


def test_bad_table(capsys):
    assert run(capsys, "coinv", "--table", "psi", "--bound", "2")[0] == 2


def test_checks_and_exit_codes(capsys):
    assert run(capsys, "strongconn-check", "--l", "2", "--nmax", "2")[0] == 0
    assert run(capsys, "hg-search", "--k", "1", "--l", "2", "--bound", "4")[0] == 0
    assert run(capsys, "rep-check", "--case", "neg", "--l", "2", "--r", "1", "--dim", "4", "--boundary")[0] == 1
    assert run(capsys, "rep-check", "--l", "2", "--r", "5")[0] == 2


def test_projector_latex(capsys):
    code, doc = run_json(capsys, "projector", "--l", "2", "--n", "1", "--latex")
    assert code == 0
    assert doc["data"]["size"] == 3
    assert doc["data"]["latex"].startswith("\\begin{pmatrix}")


@pytest.mark.parametrize("argv", [
    ["omega", "--case", "neg", "--l", "2", "--n", "3"],
    ["can-check", "--l", "1", "--nmax", "2"],
    ["cleft-check", "--l", "3", "--nmax", "2"],
    ["unit-probe", "--l", "2", "--bound", "3"],
    ["almost-free", "--k", "2", "--l", "3"],
    ["chern", "--l", "2", "--n", "3"],
    ["gamma", "--l", "3", "--n", "2", "--bound", "3"],
    ["verify-presentation", "--algebra", "rp+", "--l", "3", "--trials", "20"],
    ["verify-morphism", "--morphism", "iota+", "--l", "3"],
    ["rep-check", "--case", "pos", "--l", "2", "--theta", "0.3"],
])
def test_every_subcommand_emits_a_valid_report(capsys, argv):
    code, doc = run_json(capsys, *argv)
    assert code == 0
    assert doc["verdict"] == "pass"


@pytest.mark.parametrize("argv", [
    ["suite", "thm-main", "--l", "2", "--nmax", "4"],
    ["suite", "thm-hg", "--pairs", "1,2", "2,1", "2,3", "--bound", "6"],
    ["suite", "chern", "--l", "2", "--nmax", "2"],
    ["suite", "almost-free", "--pairs", "1,2"],
    ["suite", "positive-trivial", "--l", "1", "--nmax", "2"],
    ["suite", "reps", "--l", "1", "--q", "0.5"],
])
def test_suites(capsys, argv):
    code, doc = run_json(capsys, *argv)
    assert code == 0, doc


def test_hg_suite_reports_exhaustion(capsys):
    _, doc = run_json(capsys, "suite", "thm-hg", "--pairs", "1,1", "1,2")
    results = doc["data"]["results"]
    assert results["1,1"]["verdict"] == "found"
    assert results["1,2"]["verdict"] == "exhausted"


def test_output_is_deterministic(capsys, monkeypatch):
    argv = ["verify-presentation", "--algebra", "sigma-", "--l", "2", "--trials", "30", "--json"]
    first = run(capsys, *argv)[1]
    assert run(capsys, *argv)[1] == first
    monkeypatch.setenv("QRPW_SEED", "7")
    seeded = json.loads(run(capsys, *argv)[1])
    assert seeded["params"]["seed"] == 7


def test_bad_seed_env(capsys, monkeypatch):
    monkeypatch.setenv("QRPW_SEED", "many")
    assert run(capsys, "reduce", "z0")[0] == 2


def test_table_names():
    assert table_by_name("rho(2,3)")[0].name == "rho(2,3)"
    assert table_by_name("Z2l(3)")[0].modulus == 6
    assert table_by_name("Omega")[1] == "sigma+"
