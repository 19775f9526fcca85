import json
import os
import re

import pytest

from imbalance_metrics.controller import console
from imbalance_metrics.model.heatmap import generate_grid, table_to_grid
from imbalance_metrics.model.metrics import MetricId


@pytest.fixture
def confusion_file(write_predictions):
    rows = [(1, 1)] * 700 + [(1, 0)] * 300 + [(0, 1)] * 30 + [(0, 0)] * 70
    return write_predictions(rows)


@pytest.fixture
def small_grids(tmp_path):
    path = tmp_path / "small_grids.yaml"
    path.write_text("heatmap:\n  tp_steps: 11\n  tn_steps: 6\n", encoding="utf-8")
    return path


def test_console_compute_text(capsys):
    code = console.main(["compute", "-s", "--tp", "500", "--tn", "5", "--fp", "5", "--fn", "500"])
    out = capsys.readouterr().out
    assert code == console.EXIT_OK
    assert "TP=500  TN=5  FP=5  FN=500" in out
    assert "P=1000  N=10  IR=0.01" in out
    assert re.search(r"^HMNC\s+0\.50$", out, re.M)
    assert re.search(r"^ACC\s+0\.50$", out, re.M)
    assert re.search(r"^F1\s+0\.66$", out, re.M)


def test_console_compute_rounding(capsys):
    console.main(["compute", "-s", "--rounding", "4", "--tp", "700", "--tn", "70", "--fp", "30", "--fn", "300"])
    assert re.search(r"^MCC\s+0\.2434$", capsys.readouterr().out, re.M)


def test_console_compute_json(capsys):
    console.main(["compute", "--format", "json", "--tp", "700", "--tn", "70", "--fp", "30", "--fn", "300"])
    data = json.loads(capsys.readouterr().out)
    assert data["matrix"] == {"tp": 700, "tn": 70, "fp": 30, "fn": 300}
    assert data["ir"] == 0.1
    assert data["values"]["HMNC"] == pytest.approx(0.7, abs=1e-14)


def test_console_compute_csv(capsys):
    console.main(["compute", "--format", "csv", "--tp", "500", "--tn", "5", "--fp", "5", "--fn", "500"])
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "metric,value"
    assert "HMNC,0.5" in lines
    assert len(lines) == 11


def test_console_compute_from_csv(confusion_file, capsys):
    code = console.main(["compute", "-s", "--from-csv", str(confusion_file)])
    out = capsys.readouterr().out
    assert code == console.EXIT_OK
    assert "TP=700  TN=70  FP=30  FN=300" in out
    assert re.search(r"^HMNC\s+0\.70$", out, re.M)


def test_console_compute_custom_labels(write_predictions, capsys):
    path = write_predictions([("yes", "yes"), ("yes", "no"), ("no", "no")])
    console.main(["compute", "--from-csv", str(path), "--positive-label", "yes", "--format", "json"])
    assert json.loads(capsys.readouterr().out)["matrix"] == {"tp": 1, "tn": 1, "fp": 0, "fn": 1}


def test_console_compute_to_file(tmp_path, capsys):
    out = tmp_path / "report.txt"
    console.main(["compute", "--tp", "1", "--tn", "1", "--fp", "0", "--fn", "0", "--out", str(out)])
    assert capsys.readouterr().out == ""
    assert "HMNC" in out.read_text(encoding="utf-8")


def test_console_compare_minority_change(capsys):
    code = console.main(["compare", "-s", "--left", "700,125,125,300", "--right", "700,175,75,300"])
    out = capsys.readouterr().out
    assert code == console.EXIT_OK
    assert "Absolute value of the difference in measures" in out
    assert re.search(r"^\|left-right\|\s+0\.17\s+0\.04\s+0\.10\s+0\.08\s+0\.02\s+0\.11\s+0\.07$", out, re.M)
    assert "|left-right|  MINORITY_ONLY" in out
    assert "(majority class: positive)" in out


def test_console_compare_majority_change(capsys):
    console.main(["compare", "--left", "700,70,30,300", "--right", "500,70,30,500"])
    out = capsys.readouterr().out
    assert re.search(r"^\|left-right\|\s+0\.02\s+0\.18\s+0\.10\s+0\.06\s+0\.16\s+0\.11\s+0\.06$", out, re.M)
    assert "MAJORITY_ONLY" in out


def test_console_compare_csv_files(write_predictions, capsys):
    left = write_predictions([(1, 1), (1, 1), (0, 0)], file_name="left.csv")
    right = write_predictions([(1, 1), (1, 0), (0, 0)], file_name="right.csv")
    console.main(["compare", "--left-csv", str(left), "--right-csv", str(right), "--format", "json"])
    data = json.loads(capsys.readouterr().out)
    assert [method["name"] for method in data["methods"]] == ["left", "right"]
    assert data["comparisons"][0]["change_profile"] == "MAJORITY_ONLY"


def test_console_compare_many_matrices(capsys):
    console.main(
        [
            "compare",
            "--format",
            "csv",
            "--matrix",
            "500,5,5,500",
            "--matrix",
            "700,5,5,300",
            "--matrix",
            "700,7,3,300",
        ]
    )
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "row,kind,tp,tn,HMNC,ACC,BACC,MCC,F1,GMEAN,KAPPA,change_profile"
    assert [line.split(",")[0] for line in lines[1:]] == ["1", "2", "3", "|1-2|", "|1-3|", "|2-3|"]


def test_console_compare_mismatched_population(capsys):
    code = console.main(["compare", "--left", "500,5,5,500", "--right", "500,50,50,500"])
    assert code == console.EXIT_DOMAIN_ERROR
    assert capsys.readouterr().err.startswith("error: ")


def test_console_degenerate_matrix(capsys):
    assert console.main(["compute", "--tp", "0", "--tn", "5", "--fp", "5", "--fn", "0"]) == console.EXIT_DOMAIN_ERROR
    assert "error:" in capsys.readouterr().err


def test_console_missing_file(tmp_path, capsys):
    code = console.main(["compute", "--from-csv", str(tmp_path / "missing.csv")])
    assert code == console.EXIT_INPUT_ERROR
    assert "missing.csv" in capsys.readouterr().err


def test_console_malformed_file(write_predictions, capsys):
    path = write_predictions([(1, 1), (0, 0)], header="y,y_hat")
    assert console.main(["compute", "--from-csv", str(path)]) == console.EXIT_INPUT_ERROR
    assert "line 1" in capsys.readouterr().err


def test_console_trailing_delimiter(tmp_path, capsys):
    path = tmp_path / "preds.csv"
    path.write_text("actual,predicted\n1,1,0\n1,0,0\n0,0,1\n0,1,1\n", encoding="utf-8")
    assert console.main(["compute", "--from-csv", str(path)]) == console.EXIT_INPUT_ERROR
    assert "line 2" in capsys.readouterr().err


def test_console_unknown_label(write_predictions, capsys):
    path = write_predictions([(1, 1), (0, 0), (0, 2)])
    code = console.main(["compute", "--from-csv", str(path), "--negative-label", "0"])
    assert code == console.EXIT_INPUT_ERROR
    assert "line 4" in capsys.readouterr().err


@pytest.mark.parametrize(
    "args",
    [
        ["compute", "--tp", "1"],
        ["compute", "--tp", "-1", "--tn", "1", "--fp", "0", "--fn", "0"],
        ["compute", "--tp", "1", "--tn", "1", "--fp", "0", "--fn", "0", "--from-csv", "x.csv"],
        ["compare", "--left", "1,1,0"],
        ["compare", "--left", "1,1,0,0"],
        ["compare", "--matrix", "1,1,0,0"],
        ["heatmap", "--metric", "roc", "--p", "10", "--n", "10"],
        ["heatmap", "--metric", "hmnc", "--p", "0", "--n", "10"],
        ["repro", "everything"],
        ["compute", "--format", "html", "--tp", "1", "--tn", "1", "--fp", "0", "--fn", "0"],
    ],
)
def test_console_usage_errors(args, capsys):
    with pytest.raises(SystemExit) as e:
        console.main(args)
    assert e.value.code == console.EXIT_INPUT_ERROR


def test_console_heatmap(tmp_path, capsys):
    out = tmp_path / "hmnc.csv"
    code = console.main(
        [
            "heatmap",
            "-s",
            "--metric",
            "hmnc",
            "--p",
            "1000",
            "--n",
            "10",
            "--tp-steps",
            "101",
            "--tn-steps",
            "11",
            "--significant-digits",
            "17",
            "--pool_size",
            "1",
            "--out",
            str(out),
        ]
    )
    assert code == console.EXIT_OK
    assert capsys.readouterr().out == f"{out}\n"

    text = out.read_text(encoding="utf-8")
    assert "# ir: 0.01\n" in text
    grid = table_to_grid(text)
    assert grid.equals(generate_grid(MetricId.HMNC, 1000, 10, tp_steps=101, tn_steps=11))
    assert grid.values[5, 50] == 0.5


def test_console_balanced_accuracy_grid_is_symmetric(tmp_path, capsys):
    out = tmp_path / "acc.csv"
    code = console.main(["heatmap", "-s", "--metric", "acc", "--p", "100", "--n", "100", "--out", str(out)])
    assert code == console.EXIT_OK
    capsys.readouterr()
    grid = table_to_grid(out.read_text(encoding="utf-8"))
    assert grid.shape == (101, 101)
    assert (grid.tp_axis == grid.tn_axis).all()
    assert (grid.values == grid.values.T).all()


def test_console_heatmap_plot_script(tmp_path, capsys):
    out = tmp_path / "hmnc_ir_0.01.csv"
    console.main(
        ["heatmap", "-s", "--metric", "hmnc", "--p", "1000", "--n", "10", "--tp-steps", "11", "--tn-steps", "11", "--plot-script", "--out", str(out)]
    )
    script = out.with_suffix(".gp")
    assert capsys.readouterr().out.splitlines() == [str(out), str(script)]
    text = script.read_text(encoding="utf-8")
    assert 'splot "hmnc_ir_0.01.csv"' in text
    assert "$boundary << EOD" in text
    assert "set dgrid3d 11,11" in text


def test_console_heatmap_default_file_name(tmp_path, monkeypatch, capsys):
    monkeypatch.chdir(tmp_path)
    console.main(["heatmap", "-s", "--metric", "acc", "--p", "4", "--n", "2", "--tp-steps", "2", "--tn-steps", "2"])
    assert capsys.readouterr().out == "acc_p4_n2.csv\n"
    assert (tmp_path / "acc_p4_n2.csv").exists()


def test_console_heatmap_invalid_steps(tmp_path, capsys):
    code = console.main(
        ["heatmap", "--metric", "acc", "--p", "4", "--n", "2", "--tp-steps", "1", "--out", str(tmp_path / "x.csv")]
    )
    assert code == console.EXIT_INPUT_ERROR
    assert capsys.readouterr().err.startswith("error: ")


def test_console_repro_tables(tmp_path, capsys):
    out = tmp_path / "repro"
    code = console.main(["repro", "tables", "-s", "--out", str(out)])
    stdout = capsys.readouterr().out
    assert code == console.EXIT_OK
    assert stdout.startswith("status: PASS\n")
    assert "checked_cells: " in stdout
    assert "IR=0.01 |1-3| GMEAN: printed 0.09, exact 0.2" in stdout
    assert sorted(path.name for path in out.glob("table_ir_*")) == [
        "table_ir_0.01.txt",
        "table_ir_0.1.txt",
        "table_ir_0.25.txt",
    ]
    assert (out / "summary.txt").read_text(encoding="utf-8") == stdout


def test_console_repro_rounding(tmp_path, capsys):
    coarse, fine = tmp_path / "coarse", tmp_path / "fine"
    assert console.main(["repro", "tables", "-s", "--out", str(coarse)]) == console.EXIT_OK
    assert console.main(["repro", "tables", "-s", "--rounding", "4", "--out", str(fine)]) == console.EXIT_OK
    stdout = capsys.readouterr().out
    assert stdout.count("status: PASS\n") == 2

    assert re.search(r"\b0\.24\b", (coarse / "table_ir_0.1.txt").read_text(encoding="utf-8"))
    assert re.search(r"\b0\.2434\b", (fine / "table_ir_0.1.txt").read_text(encoding="utf-8"))

    for args, out in [([], coarse / "csv"), (["--rounding", "4"], fine / "csv")]:
        console.main(["repro", "tables", "-s", "--format", "csv", *args, "--out", str(out)])
    capsys.readouterr()
    for name in ["table_ir_0.01.csv", "table_ir_0.1.csv", "table_ir_0.25.csv"]:
        assert (coarse / "csv" / name).read_text(encoding="utf-8") == (fine / "csv" / name).read_text(encoding="utf-8")


def test_console_repro_csv_tables(tmp_path, capsys):
    out = tmp_path / "repro"
    console.main(["repro", "tables", "-s", "--format", "csv", "--out", str(out)])
    capsys.readouterr()
    lines = (out / "table_ir_0.1.csv").read_text(encoding="utf-8").splitlines()
    assert len(lines) == 1 + 4 + 5


def test_console_repro_is_deterministic(tmp_path, small_grids, capsys):
    first, second = tmp_path / "first", tmp_path / "second"
    for out in (first, second):
        args = ["repro", "-s", "--config_file", str(small_grids), "--out", str(out)]
        assert console.main(args) == console.EXIT_OK
    capsys.readouterr()

    files = sorted(path.relative_to(first) for path in first.rglob("*") if path.is_file())
    assert len(files) == 3 + 21 + 1
    for name in files:
        assert (first / name).read_bytes() == (second / name).read_bytes()


def test_console_repro_figures(tmp_path, capsys):
    out = tmp_path / "repro"
    assert console.main(["repro", "figures", "-s", "--pool_size", "1", "--out", str(out)]) == console.EXIT_OK
    stdout = capsys.readouterr().out
    figures = sorted(path.name for path in (out / "figures").glob("*.csv"))
    assert len(figures) == 21
    assert "hmnc_ir_0.01.csv" in figures
    assert "figures: 21" in stdout

    grid = table_to_grid((out / "figures" / "hmnc_ir_0.25.csv").read_text(encoding="utf-8"))
    assert grid.shape == (101, 101)
    assert grid.ir == 0.25


def test_console_repro_plot_scripts(tmp_path, small_grids, capsys):
    out = tmp_path / "repro"
    console.main(["repro", "figures", "-s", "--plot-script", "--config_file", str(small_grids), "--out", str(out)])
    capsys.readouterr()
    assert len(list((out / "figures").glob("*.gp"))) == 21


def test_console_repro_failure(tmp_path, capsys, monkeypatch):
    from imbalance_metrics.repro import runner

    fixture = tmp_path / "tables.yaml"
    text = runner.get_reference_tables().read_text(encoding="utf-8")
    fixture.write_text(
        text.replace("values: [0.5, 0.5, 0.5, 0, 0.66, 0.5, 0]", "values: [0.9, 0.5, 0.5, 0, 0.66, 0.5, 0]"),
        encoding="utf-8",
    )
    original = runner.load_reference_tables
    monkeypatch.setattr(runner, "load_reference_tables", lambda fixture_=None: original(fixture))

    code = console.main(["repro", "tables", "-s", "--out", str(tmp_path / "repro")])
    stdout = capsys.readouterr().out
    assert code == console.EXIT_REPRO_FAILED
    assert stdout.startswith("status: FAIL\n")
    assert "IR=0.01 method 1 HMNC: printed 0.9, computed 0.5000" in stdout


def test_console_verbose_logs_to_stderr(capsys):
    console.main(["compute", "-v", "--tp", "500", "--tn", "5", "--fp", "5", "--fn", "500"])
    err = capsys.readouterr().err
    assert "[METRICS] Running evaluation" in err
    assert "P=1000 | N=10 | majority positive" in err


def test_console_config_file(tmp_path, capsys):
    config_file = tmp_path / "config.yaml"
    config_file.write_text("report:\n  precision: 3\noutput:\n  format: text\n", encoding="utf-8")
    console.main(["compute", "--config_file", str(config_file), "--tp", "700", "--tn", "70", "--fp", "30", "--fn", "300"])
    assert re.search(r"^MCC\s+0\.243$", capsys.readouterr().out, re.M)


def test_console_environment_settings(monkeypatch, capsys):
    monkeypatch.setenv("IMBALANCE_METRICS_OUTPUT", '{"format": "json"}')
    console.main(["compute", "--tp", "1", "--tn", "1", "--fp", "0", "--fn", "0"])
    assert json.loads(capsys.readouterr().out)["values"]["HMNC"] == 1.0


@pytest.mark.skipif(os.name == "nt", reason="multiprocessing+pytest broken on Windows")
def test_console_heatmap_multithreaded(tmp_path, capsys):
    out = tmp_path / "mcc.csv"
    console.main(["heatmap", "-s", "--metric", "mcc", "--p", "300", "--n", "45", "--pool_size", "0", "--significant-digits", "17", "--out", str(out)])
    capsys.readouterr()
    assert table_to_grid(out.read_text(encoding="utf-8")).equals(generate_grid(MetricId.MCC, 300, 45))
