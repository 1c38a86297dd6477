import json

import pytest

from qchromatic.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_spectrum_summary(capsys):
    code, out, _ = run(capsys, "spectrum", "--p", "3", "--n", "6", "--gen", "2,2,2")
    assert code == 0
    assert "bound: 6" in out


@pytest.mark.parametrize("gen,n,bound", [("10,2", 12, 12), ("2,1", 3, 2)])
def test_spectrum_binary(capsys, gen, n, bound):
    code, out, _ = run(capsys, "spectrum", "--p", "2", "--n", str(n), "--gen", gen)
    assert code == 0
    assert f"bound: {bound}" in out


def test_spectrum_json_to_stdout(capsys):
    code, out, err = run(capsys, "spectrum", "--p", "3", "--n", "3", "--gen", "1,1,1", "--out", "-")
    assert code == 0
    doc = json.loads(out)
    assert int(doc["bound"]) == 3
    assert "bound: 3" in err


def test_design_and_file_output(capsys, tmp_path):
    path = tmp_path / "paley7.json"
    code, out, _ = run(capsys, "design", "paley", "7", "--out", str(path))
    assert code == 0
    assert "(n, k, lambda) = (7, 3, 1)" in out
    assert "upper bound on chi_q(H(7,2)): 8" in out
    doc = json.loads(path.read_text())
    assert doc["params"] == {"k": 3, "lambda": 1, "r": 3, "b": 7}


def test_represent_family(capsys):
    code, out, _ = run(capsys, "represent", "hadamard", "1", "--emit-matrix", "--out", "-")
    assert code == 0
    doc = json.loads(out)
    assert doc["dimension"] == 8
    assert len(doc["matrix"]) == 2**7
    assert doc["verification"]["passed"]


def test_represent_natural(capsys):
    code, out, _ = run(capsys, "represent", "natural", "--p", "3", "--n", "3", "--gen", "1,1,1")
    assert code == 0
    assert "orthogonal" in out and "NOT" not in out


def test_usage_errors_exit_2(capsys):
    assert run(capsys, "design", "paley", "5")[0] == 2
    assert run(capsys, "represent", "paley")[0] == 2
    assert run(capsys, "represent", "natural")[0] == 2
    assert run(capsys, "spectrum", "--p", "3", "--n", "3", "--gen", "1,2")[0] == 2
    with pytest.raises(SystemExit) as exc:
        main(["spectrum", "--p", "3"])
    assert exc.value.code == 2


def test_budget_exit_3(capsys):
    code, _, err = run(capsys, "spectrum", "--p", "3", "--n", "6", "--gen", "2,2,2", "--budget", "2")
    assert code == 3
    assert "budget" in err


def test_falsified_exit_4(capsys):
    code, out, err = run(capsys, "represent", "natural", "--p", "3", "--n", "3", "--gen", "1,2,0")
    assert code == 4
    assert "NOT orthogonal" in out
    assert "falsified" in err


def test_oracle_agrees(capsys):
    code, out, _ = run(capsys, "oracle", "--p", "3", "--n", "3", "--gen", "1,1,1", "--edges")
    assert code == 0
    assert "engine agrees with oracle: True" in out
    assert "edges: 81" in out


def test_certify_is_byte_reproducible(capsys, tmp_path):
    paths = [tmp_path / "a.json", tmp_path / "b.json"]
    for p in paths:
        assert run(capsys, "certify", "table2", "--out", str(p))[0] == 0
    assert paths[0].read_bytes() == paths[1].read_bytes()
    doc = json.loads(paths[0].read_text())
    assert doc["passed"]
    assert all("seconds" not in row for row in doc["rows"])


def test_certify_markdown(capsys):
    code, out, _ = run(capsys, "certify", "table2", "--format", "md", "--out", "-")
    assert code == 0
    for triple in ("(7, 3, 1)", "(11, 5, 2)", "(15, 7, 3)", "(16, 6, 2)"):
        assert triple in out


def test_certify_table3_subset(capsys):
    code, out, _ = run(capsys, "certify", "table3", "--n", "9", "--n", "10")
    assert code == 0
    assert "embedding+design-rep" in json.dumps(out) or "upper 12" in out


@pytest.mark.parametrize("theorem,extra", [
    ("goal", ["--l-max", "3"]),
    ("second-largest", ["--l-max", "4"]),
    ("g5-min", ["--l-max", "3"]),
    ("duality", ["--n", "3"]),
    ("appendix-claims", ["--l-max", "3"]),
    ("subgraph", ["--l", "2"]),
])
def test_verify_commands(capsys, theorem, extra):
    code, out, _ = run(capsys, "verify", theorem, *extra)
    assert code == 0, out
    assert f"{theorem}:" in out and "pass" in out
