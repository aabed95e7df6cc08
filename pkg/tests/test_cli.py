import json
import os

import pytest

from sliceopt.cli import build_suite, build_parser, main, parse_seeds, ConfigError
from sliceopt.engine import RunRecord

FAST = ["--max-iterations", "30", "--population-size", "6", "--stall-window", "5"]


def test_parse_seeds():
    assert parse_seeds("3") == [3]
    assert parse_seeds("0..4") == [0, 1, 2, 3, 4]
    assert parse_seeds("1,4,7") == [1, 4, 7]
    for bad in ("5..2", "a", "-1", ""):
        with pytest.raises(ConfigError):
            parse_seeds(bad)


def test_optimize_happy_path(tmp_path, capsys):
    code = main(["optimize", "--algorithm", "WOA", "--slice", "URLLC", "--seed", "3",
                 "--out", str(tmp_path)] + FAST)
    assert code == 0
    path = tmp_path / "runs" / "WOA-URLLC-3.json"
    doc = json.loads(path.read_text())
    assert doc["algorithm"] == "WOA" and doc["seed"] == 3
    assert json.loads(capsys.readouterr().out) == doc
    RunRecord.from_dict(doc)


def test_unknown_algorithm_exit_2(tmp_path, capsys):
    code = main(["optimize", "--algorithm", "XYZ", "--out", str(tmp_path)])
    assert code == 2
    err = capsys.readouterr().err
    for name in ("GA", "PSO", "GWO", "ACO", "SA", "ABC", "BWO", "WOA", "Firefly"):
        assert name in err
    assert not (tmp_path / "runs").exists()


def test_bad_arguments_exit_2(capsys):
    assert main(["optimize", "--algorithm", "PSO", "--max-iterations", "zero"]) == 2
    assert main(["frobnicate"]) == 2
    assert main(["optimize", "--algorithm", "PSO", "--max-iterations", "0"]) == 2
    assert "max_iterations" in capsys.readouterr().err


@pytest.mark.parametrize("doc, key", [
    ({"algoritms": ["GA"]}, "algoritms"),
    ({"run_config": {"max_iters": 5}}, "run_config.max_iters"),
    ({"run_config": {"tolerance": -1}}, "run_config.tolerance"),
    ({"algorithm_params": {"PSO": {"inertia_weight": 1}}}, "algorithm_params.PSO.inertia_weight"),
    ({"scenario_overrides": {"eMBB": {"flows": 3}}}, "scenario_overrides.eMBB.flows"),
    ({"slices": ["6G"]}, "slice"),
    ({"seeds": [-1]}, "seeds"),
])
def test_malformed_config_names_key(tmp_path, capsys, doc, key):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps(doc))
    out = tmp_path / "out"
    assert main(["bench", "--config", str(cfg), "--out", str(out)]) == 2
    assert "'%s'" % key in capsys.readouterr().err
    assert not out.exists()


def test_invalid_json_config(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text("{not json")
    assert main(["bench", "--config", str(cfg)]) == 2
    assert "--config" in capsys.readouterr().err


def test_flags_override_file(tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"algorithms": ["GA"], "seeds": [4, 5],
                               "run_config": {"max_iterations": 7}, "w1": 0.2, "w2": 0.8}))
    args = build_parser().parse_args(["bench", "--config", str(cfg), "--algorithm", "PSO,SA",
                                      "--max-iterations", "9"])
    suite = build_suite(json.loads(cfg.read_text()), args)
    assert suite.algorithms == ("PSO", "SA")
    assert suite.seeds == (4, 5)
    assert suite.run_config.max_iterations == 9
    assert suite.run_config.stall_window == 50
    assert (suite.weights.w1, suite.weights.w2) == (0.2, 0.8)


def run_bench(out):
    return main(["bench", "--algorithm", "PSO,GA", "--slice", "URLLC", "--slice", "mMTC",
                 "--seeds", "0..1", "--workers", "1", "--out", str(out)] + FAST)


def test_bench_outputs_and_determinism(tmp_path, capsys):
    a, b = tmp_path / "a", tmp_path / "b"
    assert run_bench(a) == 0 and run_bench(b) == 0
    files = sorted(os.listdir(a))
    for name in ("table2.csv", "table3.json", "table4.md", "fig1.csv", "fig3.csv",
                 "baselines.json", "metrics.json", "published_comparison.md", "runs"):
        assert name in files
    assert len(os.listdir(a / "runs")) == 2 * 2 * 2
    for name in files:
        if name != "runs":
            assert (a / name).read_bytes() == (b / name).read_bytes(), name
    for name in os.listdir(a / "runs"):
        assert (a / "runs" / name).read_bytes() == (b / "runs" / name).read_bytes()


def test_oracle_subcommand(tmp_path, capsys):
    from sliceopt.validation import load_fixture

    assert main(["oracle", "--out", str(tmp_path)]) == 0
    doc = json.loads((tmp_path / "oracle_2flow.json").read_text())
    frozen = load_fixture("oracle_2flow.json")
    assert doc["best_fitness"] == frozen["best_fitness"]
    assert doc["best_allocation"] == frozen["best_allocation"]
    assert doc["bounds"] == frozen["bounds"]


def test_validate_rejects_unknown_algorithm(capsys):
    assert main(["validate", "--algorithm", "XYZ"]) == 2


def test_module_entry_point():
    import subprocess
    import sys

    proc = subprocess.run([sys.executable, "-m", "sliceopt", "--help"], capture_output=True,
                          text=True)
    assert proc.returncode == 0 and "optimize" in proc.stdout
