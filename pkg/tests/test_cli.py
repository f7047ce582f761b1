import json
import subprocess
import sys

import jsonschema
import pytest

from exactsub.cli import main
from exactsub.experiment import ExperimentConfig, load_schema, resolve_graph
from exactsub.generators import erdos_renyi
from exactsub.graph import read_graph


@pytest.fixture(scope="module")
def validator():
    schema = load_schema()
    jsonschema.Draft202012Validator.check_schema(schema)
    return jsonschema.Draft202012Validator(schema)


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def run_json(capsys, validator, *argv):
    code, out, _ = run(capsys, *argv)
    report = json.loads(out)
    validator.validate(report)
    return code, report


@pytest.fixture
def k6_file(tmp_path, capsys):
    path = tmp_path / "k6.edges"
    assert main(["gen", "K6", "--out", str(path)]) == 0
    return path


def test_gen_complete_and_cycle(capsys, tmp_path):
    code, out, _ = run(capsys, "gen", "K6")
    assert code == 0 and sum(1 for line in out.splitlines() if not line.startswith("#")) == 15
    code, out, _ = run(capsys, "gen", "C5")
    assert sum(1 for line in out.splitlines() if not line.startswith("#")) == 5


def test_gen_er_is_reproducible(capsys, tmp_path):
    a, b = tmp_path / "a.edges", tmp_path / "b.edges"
    for path in (a, b):
        assert main(["gen", "er", "--n", "12", "--p", "0.4", "--seed", "3", "--out", str(path)]) == 0
    assert a.read_bytes() == b.read_bytes()
    assert read_graph(a) == erdos_renyi(12, 0.4, seed=3)


def test_gen_rejects_bad_spec(capsys):
    code, _, err = run(capsys, "gen", "nope")
    assert code == 2 and "error" in err


def test_sample_on_k6_file(capsys, validator, k6_file):
    code, rep = run_json(capsys, validator, "sample", "--graph", str(k6_file), "--pattern", "K3", "--trials", "1000", "--seed", "7", "--xh", "exact")
    assert code == 0 and rep["passed"]
    assert rep["success_rate"] >= 2 / 3
    assert rep["successes"] == sum(row["count"] for row in rep["histogram"])
    assert (rep["graph"]["n"], rep["graph"]["m"], rep["rho"], rep["f"], rep["q"]) == (6, 15, "3/2", 1, 83)
    assert rep["queries"]["vertex_sample_queries"] == 0
    assert "elapsed_seconds" not in rep


def test_sample_empty_graph(capsys, validator, tmp_path):
    path = tmp_path / "empty.edges"
    path.write_text("# n=5\n")
    code, rep = run_json(capsys, validator, "sample", "--graph", str(path), "--pattern", "K3", "--trials", "10")
    assert rep["successes"] == 0 and rep["copies_total"] == 0 and code == 0


def test_sample_with_estimate_and_value(capsys, validator):
    code, rep = run_json(capsys, validator, "sample", "--graph", "K6", "--pattern", "K3", "--trials", "100", "--xh", "estimate")
    assert rep["x_h"]["mode"] == "estimate" and rep["x_h"]["warmup_trials"] == 10
    code, rep = run_json(capsys, validator, "sample", "--graph", "K6", "--pattern", "K3", "--trials", "50", "--xh", "25.5", "--timing")
    assert rep["x_h"] == {"mode": "value", "value": 25.5} and rep["elapsed_seconds"] >= 0


def test_seed_env_sets_default(capsys, monkeypatch):
    monkeypatch.setenv("SAMPLER_SEED", "99")
    _, out, _ = run(capsys, "sample", "--graph", "K4", "--pattern", "K3", "--trials", "20")
    assert json.loads(out)["seed"] == 99
    _, out, _ = run(capsys, "sample", "--graph", "K4", "--pattern", "K3", "--trials", "20", "--seed", "4")
    assert json.loads(out)["seed"] == 4


def test_same_seed_same_bytes(capsys):
    argv = ["sample", "--graph", "er:n=10,p=0.5,seed=1", "--pattern", "P4", "--trials", "200", "--seed", "3"]
    outputs = [run(capsys, *argv)[1] for _ in range(2)]
    assert outputs[0] == outputs[1]
    assert run(capsys, *argv, "--threads", "2")[1] == outputs[0]


def test_verify_exact_pass_and_mutation_fail(capsys, validator):
    code, rep = run_json(capsys, validator, "verify-exact", "--graph", "K3", "--pattern", "K3")
    assert code == 0 and rep["instances"][0]["status"] == "PASS"
    assert rep["instances"][0]["probability"]["half_exponent"] == 3
    code, rep = run_json(capsys, validator, "verify-exact", "--graph", "K4", "--pattern", "K4")
    p = rep["instances"][0]["probability"]
    assert code == 0 and (p["coeff"], p["half_exponent"], p["two_m"]) == ("1", 4, 12)  # 12^-2 = 1/144
    assert p["value"] == pytest.approx(1 / 144)
    code, rep = run_json(capsys, validator, "verify-exact", "--graph", "K4", "--pattern", "K4", "--mutate", "skip-coin")
    assert code == 1 and rep["instances"][0]["status"] == "FAIL"


def test_verify_exact_size_error(capsys):
    code, _, err = run(capsys, "verify-exact", "--graph", "K8", "--pattern", "K3")
    assert code == 2 and "2m" in err


@pytest.mark.parametrize(
    "spec, shape, rho, f",
    [("K4", "[S_1, S_1]", "2", 24), ("C5", "[C_5]", "5/2", 1), ("S3", "[S_3]", "3", 1)],
)
def test_decompose(capsys, validator, spec, shape, rho, f):
    code, rep = run_json(capsys, validator, "decompose", spec)
    assert code == 0 and (rep["decomposition"]["type"], rep["rho"], rep["f"]) == (shape, rho, f)


def test_estimate_count(capsys, validator):
    code, rep = run_json(capsys, validator, "estimate-count", "--graph", "K6", "--pattern", "K3", "--trials", "30000")
    assert code == 0 and rep["exact_count"] == 20 and rep["within_ci"]


def test_csv_projection(capsys, tmp_path):
    out = tmp_path / "h.csv"
    assert main(["sample", "--graph", "K4", "--pattern", "K3", "--trials", "50", "--format", "csv", "--out", str(out)]) == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "copy,count" and len(lines) == 5
    code, text, _ = run(capsys, "decompose", "K4", "--format", "csv")
    assert text.startswith("key,value") and "f,24" in text


def test_bad_inputs_exit_nonzero(capsys, tmp_path):
    bad = tmp_path / "bad.edges"
    bad.write_text("0 1\n1 1\n")
    assert run(capsys, "sample", "--graph", str(bad), "--pattern", "K3")[0] == 2
    assert run(capsys, "sample", "--graph", "K4", "--pattern", "Q9")[0] == 2
    assert run(capsys, "sample", "--graph", "K4", "--pattern", "K3", "--trials", "0")[0] == 2
    assert run(capsys, "sample", "--graph", "K4", "--pattern", "K3", "--xh", "-1")[0] == 2


def test_config_validation():
    with pytest.raises(ValueError):
        ExperimentConfig("K4", "K3", xh="lots")
    assert resolve_graph("er:n=12,p=0.4,seed=3") == erdos_renyi(12, 0.4, seed=3)
    with pytest.raises(ValueError):
        resolve_graph("er:q=3")


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "exactsub", "decompose", "K3"], capture_output=True, text=True, check=True)
    assert json.loads(res.stdout)["decomposition"]["type"] == "[C_3]"
