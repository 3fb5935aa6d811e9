import json

import pandas as pd
import pytest

from app.command.bench import parse_grid
from app.command.cli import build_parser, main
from app.core.exceptions import InvalidConfig


def test_requires_a_subcommand():
    with pytest.raises(SystemExit) as e:
        build_parser().parse_args([])
    assert e.value.code == 2


def test_seed_defaults_to_constant():
    args = build_parser().parse_args(["test", "--csv", "d.csv", "--x", "a", "--y", "b"])
    assert args.seed == 42


def test_csv_report(csv_path, tmp_path):
    out = tmp_path / "report.json"
    code = main(["test", "--csv", str(csv_path), "--x", "a,b", "--y", "c", "--classifier", "logistic",
                 "--seed", "7", "--output", str(out)])
    assert code == 0
    report = json.loads(out.read_text())
    assert report["seed"] == 7
    assert (report["d1"], report["d2"], report["n"]) == (2, 1, 40)
    assert 0 <= report["p_value"] <= 1


def test_csv_report_is_reproducible(csv_path, tmp_path):
    paths = [tmp_path / "one.json", tmp_path / "two.json"]
    for path in paths:
        main(["test", "--csv", str(csv_path), "--x", "a", "--y", "b,c", "--classifier", "logistic", "--output", str(path)])
    assert paths[0].read_bytes() == paths[1].read_bytes()


def test_overlapping_selectors_exit_2(csv_path, capsys):
    assert main(["test", "--csv", str(csv_path), "--x", "a", "--y", "a"]) == 2
    assert "OVERLAPPING_SELECTORS" in capsys.readouterr().err


def test_missing_file_exit_3(tmp_path):
    assert main(["test", "--csv", str(tmp_path / "none.csv"), "--x", "a", "--y", "b"]) == 3


def test_bad_hyperparameter_names_flag(csv_path, capsys):
    assert main(["test", "--csv", str(csv_path), "--x", "a", "--y", "b", "--hidden", "0"]) == 2
    assert "--hidden" in capsys.readouterr().err


def test_missing_input_exit_2():
    assert main(["test"]) == 2


def test_sparse_path(sparse_pair, tmp_path):
    out = tmp_path / "sparse.json"
    code = main(["test", "--sparse-x", str(sparse_pair[0]), "--sparse-y", str(sparse_pair[1]),
                 "--method", "cpc", "--classifier", "logistic", "--output", str(out)])
    assert code == 0
    report = json.loads(out.read_text())
    assert (report["n"], report["d1"], report["d2"]) == (20, 5, 3)


def test_dcor_csv_output(csv_path, tmp_path):
    out = tmp_path / "dcor.csv"
    code = main(["test", "--csv", str(csv_path), "--x", "a", "--y", "b", "--method", "dcor",
                 "--permutations", "19", "--format", "csv", "--output", str(out)])
    assert code == 0
    row = pd.read_csv(out).iloc[0]
    assert row["method"] == "dcor"
    assert row["permutations"] == 19


def test_save_model(csv_path, tmp_path):
    model_path = tmp_path / "model.json"
    main(["test", "--csv", str(csv_path), "--x", "a", "--y", "b", "--classifier", "quadratic",
          "--s1", "2", "--k-n", "1", "--save-model", str(model_path), "--output", str(tmp_path / "r.json")])
    assert json.loads(model_path.read_text())["kind"] == "quadratic"


def test_check_fast(tmp_path):
    out = tmp_path / "check.json"
    assert main(["check", "--fast", "--output", str(out)]) == 0
    report = json.loads(out.read_text())
    assert report["passed"] and report["fast"]
    assert {c["name"] for c in report["checks"]} >= {"rank_sum_merge_vs_naive", "tv_sandwich", "mlp_gradient"}


def test_simulate_power(tmp_path):
    config = tmp_path / "m1_power.toml"
    config.write_text("models = M1\na_grid = 0,1\nn = 40\nd1 = 1\nd2 = 1\nreps = 2\nclassifier = logistic\n")
    out = tmp_path / "power"
    assert main(["simulate", "--config", str(config), "--out", str(out)]) == 0
    assert (out / "power_tidy.csv").exists()
    assert (out / "manifest.json").exists()


def test_simulate_bad_config(tmp_path):
    config = tmp_path / "bad.toml"
    config.write_text("reps = -1\n")
    assert main(["simulate", "--config", str(config), "--out", str(tmp_path)]) == 2


def test_calibrate_projection(tmp_path, capsys):
    code = main(["calibrate", "--experiment", "projection", "--reps", "3", "--out", str(tmp_path)])
    assert code == 0
    assert "median_gap" in json.loads(capsys.readouterr().out)


def test_bench_grid(tmp_path):
    code = main(["bench", "--grid", "n=40,60", "d=2", "--methods", "dcor", "--reps", "1", "--out", str(tmp_path)])
    assert code == 0
    table = pd.read_csv(tmp_path / "timing.csv")
    assert table["n"].is_monotonic_increasing


def test_parse_grid():
    assert parse_grid(["n=1000,2000", "d=100"]) == {"n_grid": "1000,2000", "d_grid": "100"}
    with pytest.raises(InvalidConfig):
        parse_grid(["q=1"])
