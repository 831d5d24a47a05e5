import json

import pytest

from clonal_waves import cli
from clonal_waves.errors import ConfigError
from clonal_waves.experiments import ExperimentConfig, run


def test_unknown_config_key_names_the_key(tmp_path, capsys):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"alpha0": 1}))
    assert cli.main(["fig1", "--config", str(cfg)]) == 2
    assert "alpha0" in capsys.readouterr().err


def test_theta_grid_must_ascend():
    with pytest.raises(ConfigError):
        ExperimentConfig.from_dict({"theta": [1.0, 0.5]}, "fig1")
    with pytest.raises(ConfigError):
        ExperimentConfig.from_dict({"replicates": 0}, "fig1")


def test_constants_dump_writes_outputs(tmp_path, capsys):
    assert cli.main(["constants-dump", "--out", str(tmp_path)]) == 0
    payload = json.loads((tmp_path / "constants-dump" / "constants-dump.json").read_text())
    assert payload["passed"] is True
    header = (tmp_path / "constants-dump" / "constants.csv").read_text().splitlines()[0]
    assert header == "k,p_k,u_1k,c_k,c_k_recursive,c_k_printed,A1,c1"


def test_outputs_identical_across_threads(tmp_path):
    for threads in (1, 4):
        cfg = ExperimentConfig.from_dict(
            {"t": [60, 100], "theta": [0.5, 2.0], "replicates": 400, "threads": threads}, "fig1"
        )
        cli.write_result(run(cfg), tmp_path / str(threads))
    for name in ("fig1.csv", "fig1.json"):
        assert (tmp_path / "1" / name).read_bytes() == (tmp_path / "4" / name).read_bytes()


def test_seed_changes_monte_carlo(tmp_path):
    outs = []
    for seed in (1, 2):
        cfg = ExperimentConfig.from_dict({"t": [60], "theta": [1.0], "replicates": 200, "seed": seed}, "fig1")
        cli.write_result(run(cfg), tmp_path / str(seed))
        outs.append((tmp_path / str(seed) / "fig1.csv").read_text())
    assert outs[0] != outs[1]


def test_verify_exit_codes(capsys):
    assert cli.main(["verify", "5"]) == 0
    assert cli.main(["verify", "2"]) == 1
    out = capsys.readouterr().out
    assert "criterion 5: PASS" in out and "criterion 2: FAIL" in out
    assert cli.main(["verify", "12"]) == 2


def test_conjecture_explore_runs(tmp_path):
    cfg = ExperimentConfig.from_dict({"t": [10], "replicates": 20}, "conjecture1-explore")
    res = run(cfg)
    assert res.checks == []
    assert len(res.tables["conjecture1-explore"].rows) == 2
