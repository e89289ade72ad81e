from __future__ import annotations

import json
import subprocess
import sys
from importlib import resources

import jsonschema
import pytest

from strata.cli import main
from strata.fs_category import free_module, restrict
from strata.stable_graphs import StableGraph


def schema(name: str) -> dict:
    return json.loads(resources.files("strata").joinpath("schemas", f"{name}.json").read_text())


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, name, *argv):
    code, out, err = run(capsys, *argv)
    data = json.loads(out)
    jsonschema.validate(data, schema(name))
    return code, data


@pytest.fixture
def chain_file(tmp_path):
    G = StableGraph.build([0, 0], [(0, 1)], {1: 0, 2: 0, 3: 1, 4: 1})
    path = tmp_path / "chain.json"
    path.write_text(G.to_json())
    return str(path)


@pytest.fixture
def module_file(tmp_path):
    path = tmp_path / "free.json"
    path.write_text(restrict(free_module(2, 3), 2).to_json())
    return str(path)


def test_enumerate_example(capsys):
    code, data = run_json(capsys, "enumerate", "enumerate", "--g", "1", "--n", "1")
    assert code == 0 and data["count"] == 2 and len(data["graphs"]) == 2
    for G in data["graphs"]:
        jsonschema.validate(G, schema("stable_graph"))


def test_enumerate_text_and_dot(capsys):
    code, out, _ = run(capsys, "enumerate", "--g", "0", "--n", "4", "--format", "dot")
    assert code == 0 and out.count("graph G") == 4
    code, out, _ = run(capsys, "enumerate", "--g", "0", "--n", "4", "--coarse", "--format", "text")
    assert code == 0 and len(out.splitlines()) == 1


def test_coarsen(capsys, chain_file):
    code, data = run_json(capsys, "coarsen", "coarsen", "--graph", chain_file, "--seed", "7")
    assert code == 0
    assert data["coarsening"]["genus"] == {"0": 0} and data["seed"] == 7


def test_poset(capsys):
    code, data = run_json(capsys, "poset", "poset", "--g", "1", "--n", "1")
    assert code == 0 and len(data["elements"]) == 2 and data["hasse"]
    code, out, _ = run(capsys, "poset", "--g", "1", "--n", "1", "--format", "dot")
    assert out.startswith("digraph")


def test_lemma41(capsys):
    code, data = run_json(capsys, "verify-lemma41", "verify-lemma41", "--g", "1", "--i", "0")
    assert code == 0 and data["all_pass"] and data["bound"] == 15


def test_lemma41_failure_exit_code(capsys):
    # g = 0 with i = 1: one vertex with f(1,0,0) = 9 legs against a bound of 0
    code, out, err = run(capsys, "verify-lemma41", "--g", "0", "--i", "1")
    assert code == 1
    assert "error: assertion" in err
    assert json.loads(out)["witness"] is not None


def test_lemma42(capsys):
    code, data = run_json(capsys, "verify-lemma42", "verify-lemma42", "--a", "1", "--e", "1", "--i", "1", "--b-max", "33")
    assert code == 0 and data["all_pass"] and data["params"]["b"] == [31, 32, 33]


def test_lemma42_counterexample_dump(capsys):
    code, out, _ = run(capsys, "verify-lemma42", "--a", "0", "--e", "1", "--i", "0", "--b-max", "1", "--coeffs", "0,0,0,-1", "--format", "dot")
    assert code == 1 and out.startswith("graph H")


def test_hilbert_example(capsys):
    code, out, _ = run(capsys, "hilbert", "--free", "2", "--upto", "6", "--format", "text")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "2*t^2 / (1 - t) (1 - 2t)"
    assert lines[1] == "coefficients: 0,0,2,6,14,30,62"
    code, data = run_json(capsys, "hilbert", "hilbert", "--numerator", "1", "--denominator", "1:2", "--upto", "4")
    assert data["coefficients"] == ["1", "2", "3", "4", "5"]


def test_decompose(capsys):
    code, data = run_json(capsys, "decompose", "decompose", "--free", "2", "--max-degree", "3", "--degree", "3")
    assert code == 0
    assert data["degrees"][0]["multiplicities"] == [{"partition": [3], "multiplicity": 2}, {"partition": [2, 1], "multiplicity": 2}]


def test_restrict_and_induce_files(capsys, module_file, tmp_path):
    code, data = run_json(capsys, "module", "induce", "--module", module_file, "--to", "4")
    assert code == 0 and [len(data["bases"][str(n)]) for n in range(1, 5)] == [0, 2, 6, 14]
    code, data = run_json(capsys, "module", "restrict", "--free", "2", "--max-degree", "4", "--to", "2")
    assert data["max_degree"] == 2


def test_bounds_example(capsys):
    code, out, _ = run(capsys, "bounds", "--g", "1", "--i", "1", "--format", "text")
    row = out.splitlines()[1].split()
    assert code == 0 and "88" in row and "78" in row and row[-1] == "DISCREPANCY"
    code, data = run_json(capsys, "bounds", "bounds")
    assert len(data["rows"]) == 16


def test_output_file(capsys, tmp_path):
    path = tmp_path / "out.json"
    code, out, _ = run(capsys, "bounds", "--g", "1", "--i", "0", "--output", str(path))
    assert code == 0 and out == ""
    assert json.loads(path.read_text())["rows"][0]["p_compositional"] == 15


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["enumerate", "--g", "0", "--n", "2"],
        ["enumerate", "--g", "1"],
        ["enumerate", "--g", "1", "--n", "1", "--bogus"],
        ["bounds", "--format", "dot"],
        ["verify-lemma41", "--g", "1", "--i", "0", "--coeffs", "1,2"],
        ["verify-lemma41", "--g", "1", "--i", "0", "--coeffs", "-1,0,0,0"],
        ["hilbert", "--numerator", "1"],
        ["hilbert", "--numerator", "1", "--denominator", "0:1"],
        ["decompose", "--module", "/nonexistent.json"],
        ["induce", "--free", "2", "--max-degree", "3", "--to", "2"],
        ["enumerate", "--g", "1", "--n", "1", "--budget", "0"],
    ],
)
def test_bad_input_exit_code(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 3
    assert err.startswith("error: input:") and err.count("\n") == 1


def test_bad_graph_file(capsys, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(StableGraph.build([0], [], [0, 0]).to_json())
    code, _, err = run(capsys, "coarsen", "--graph", str(path))
    assert code == 3 and "stability" in err


def test_budget_exit_code(capsys, monkeypatch):
    code, _, err = run(capsys, "enumerate", "--g", "0", "--n", "6", "--budget", "10")
    assert code == 2 and err.startswith("error: budget:")
    monkeypatch.setenv("STRATA_BUDGET", "10")
    code, _, err = run(capsys, "verify-lemma41", "--g", "1", "--i", "1")
    assert code == 2


def test_non_functorial_module_fails_decomposition(capsys, tmp_path):
    data = free_module(2, 3).to_dict()
    for entry in data["matrices"]:
        if entry["values"] == [2, 1]:
            entry["matrix"] = [["1/1", "0/1"], ["0/1", "1/1"]]
        if entry["values"] == [1, 3, 2] or entry["values"] == [2, 1, 3]:
            entry["matrix"] = [["1/2" if r == c else "0/1" for c in range(6)] for r in range(6)]
    path = tmp_path / "bad_module.json"
    path.write_text(json.dumps(data))
    code, _, err = run(capsys, "decompose", "--module", str(path), "--degree", "3")
    assert code == 1 and err.startswith("error: assertion:")


@pytest.mark.parametrize(
    "argv",
    [
        ["enumerate", "--g", "1", "--n", "2"],
        ["coarsen", "--graph", "GRAPH", "--seed", "3"],
        ["verify-lemma42", "--a", "0", "--e", "1", "--i", "1", "--b-max", "20", "--format", "text"],
        ["hilbert", "--free", "3"],
    ],
)
def test_byte_identical_runs(argv, chain_file):
    argv = [chain_file if x == "GRAPH" else x for x in argv]
    cmd = [sys.executable, "-m", "strata", *argv]
    first = subprocess.run(cmd, capture_output=True, check=True).stdout
    second = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert first == second and first


def test_every_schema_is_valid():
    for name in ["stable_graph", "enumerate", "coarsen", "poset", "verify-lemma41", "verify-lemma42", "hilbert", "decompose", "module", "bounds"]:
        doc = schema(name)
        jsonschema.Draft202012Validator.check_schema(doc)
        assert doc.get("version") == "1"
