import json

import numpy as np
import pytest

from kmeans_sketch.cli import main
from kmeans_sketch.datagen import load_csv


def run_cli(*argv):
    return main(list(argv))


class TestGenSynth:
    def test_writes_dataset(self, tmp_path, capsys):
        out = tmp_path / "d.csv"
        code = run_cli("gen-synth", "--k", "5", "--n", "100", "--per-center", "20",
                       "--out", str(out), "--seed", "7")
        assert code == 0
        assert "seed=7" in capsys.readouterr().out
        ds = load_csv(out, has_labels=True)
        assert ds.points.shape == (100, 100)
        assert ds.k == 5

    def test_missing_flag_usage_error(self, capsys):
        assert run_cli("gen-synth", "--k", "5") == 2


class TestReduceAndCluster:
    @pytest.fixture()
    def data(self, tmp_path):
        out = tmp_path / "d.csv"
        run_cli("gen-synth", "--k", "3", "--n", "50", "--per-center", "15",
                "--out", str(out), "--seed", "1")
        return out

    def test_reduce_writes_reduced_csv(self, data, tmp_path, capsys):
        out = tmp_path / "red.csv"
        code = run_cli("reduce", "--data", str(data), "--labels", "--method", "rp",
                       "--r", "8", "--out", str(out), "--seed", "2")
        assert code == 0
        line = capsys.readouterr().out
        assert "method=rp" in line and "r=8" in line and "seed=2" in line
        red = load_csv(out, has_labels=True)
        assert red.points.shape == (45, 8)

    def test_reduce_svd_family_ignores_r(self, data, tmp_path):
        out = tmp_path / "red.csv"
        run_cli("reduce", "--data", str(data), "--labels", "--method", "approx-svd",
                "--r", "17", "--out", str(out), "--seed", "2")
        assert load_csv(out, has_labels=True).points.shape == (45, 3)

    def test_cluster_reports_metrics(self, data, tmp_path, capsys):
        labels_out = tmp_path / "labels.txt"
        code = run_cli("cluster", "--data", str(data), "--labels",
                       "--out", str(labels_out), "--seed", "4")
        assert code == 0
        out = capsys.readouterr().out
        assert "objective=" in out and "accuracy=" in out and "seed=4" in out
        written = [int(x) for x in labels_out.read_text().split()]
        assert len(written) == 45

    def test_missing_file_errors(self, tmp_path, capsys):
        code = run_cli("cluster", "--data", str(tmp_path / "nope.csv"), "--k", "2")
        assert code == 1
        assert "error:" in capsys.readouterr().err


class TestBench:
    @pytest.fixture()
    def data(self, tmp_path):
        out = tmp_path / "d.csv"
        run_cli("gen-synth", "--k", "3", "--n", "40", "--per-center", "12",
                "--out", str(out), "--seed", "5")
        return out

    def test_row_cardinality(self, data, tmp_path):
        out = tmp_path / "b.csv"
        code = run_cli("bench", "--data", str(data), "--labels",
                       "--methods", "rp,svd", "--r", "5,10", "--trials", "2",
                       "--out", str(out), "--seed", "1",
                       "--replicates", "2", "--max-iters", "50")
        assert code == 0
        lines = out.read_text().splitlines()
        # rp 2x2 + svd 1x2 + baseline 2 = 8 data rows after the header
        assert len(lines) == 1 + 8

    def test_byte_identical_with_no_timing(self, data, tmp_path):
        out1, out2 = tmp_path / "b1.csv", tmp_path / "b2.csv"
        args = ["bench", "--data", str(data), "--labels", "--methods", "rp,approx-svd",
                "--r", "4,8", "--trials", "2", "--seed", "9", "--no-timing",
                "--replicates", "2", "--max-iters", "50"]
        assert run_cli(*args, "--out", str(out1)) == 0
        assert run_cli(*args, "--out", str(out2)) == 0
        assert out1.read_bytes() == out2.read_bytes()

    def test_plots_written(self, data, tmp_path):
        out = tmp_path / "b.csv"
        svg = tmp_path / "acc.svg"
        code = run_cli("bench", "--data", str(data), "--labels", "--methods", "rp",
                       "--r", "4,8", "--trials", "1", "--out", str(out),
                       "--plot-accuracy", str(svg), "--seed", "2",
                       "--replicates", "2", "--max-iters", "50")
        assert code == 0
        assert svg.read_text().startswith("<?xml")


class TestVerifyCli:
    def test_pass_exit_zero(self, capsys):
        assert run_cli("verify", "--suite", "pythagoras", "--seed", "1", "--trials", "10") == 0
        out = capsys.readouterr().out
        assert "[PASS]" in out and "seed=1" in out

    def test_json_output(self, capsys):
        code = run_cli("verify", "--suite", "mailman", "--seed", "2", "--trials", "5", "--json")
        assert code == 0
        payload = json.loads(capsys.readouterr().out.strip())
        assert payload["suite"] == "mailman"
        assert set(payload) == {"suite", "trials", "pass_fraction", "threshold",
                                "passed", "details"}

    def test_unknown_suite_usage_error(self):
        assert run_cli("verify", "--suite", "lemma99") == 2


class TestTopLevel:
    def test_unknown_subcommand_exit_2(self):
        assert run_cli("frobnicate") == 2

    def test_env_seed_fallback(self, tmp_path, capsys, monkeypatch):
        monkeypatch.setenv("KMEANS_SKETCH_SEED", "123")
        out = tmp_path / "d.csv"
        # parser defaults are bound at construction; build a fresh one
        code = run_cli("gen-synth", "--k", "2", "--n", "10", "--per-center", "5",
                       "--out", str(out))
        assert code == 0
        assert "seed=123" in capsys.readouterr().out
