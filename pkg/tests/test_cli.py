"""End-to-end tests for the command-line interface and its exit codes."""

from __future__ import annotations

import json

import numpy as np
import pandas as pd
import pytest

from simple_rc.cli import main, parse_nodes
from simple_rc.config import RMT_SWEEP_FILE, SIZE_POWER_FILE
from simple_rc.errors import PreconditionError
from simple_rc.ingest import load_adjacency, save_adjacency
from simple_rc.model_core import sample_adjacency


@pytest.fixture
def sampled_file(tmp_path, small_example1):
    model, group = small_example1
    path = save_adjacency(sample_adjacency(model, seed=21), tmp_path / "graph.txt")
    return path, group


@pytest.fixture
def sparse_file(tmp_path):
    """50 nodes, one edge: no eigenvalue clears the K0 threshold"""
    X = np.zeros((50, 50), dtype=np.int8)
    X[0, 1] = X[1, 0] = 1
    return save_adjacency(X, tmp_path / "sparse.csv")


def one_based(nodes) -> str:
    return ",".join(str(i + 1) for i in nodes)


class TestParseNodes:

    def test_one_based(self) -> None:
        assert parse_nodes("1, 3,10") == [0, 2, 9]

    @pytest.mark.parametrize("text", ["0,1", "a,2"])
    def test_rejects(self, text: str) -> None:
        with pytest.raises(PreconditionError):
            parse_nodes(text)


class TestTestCommands:
    """test-pair / test-group reports and exit codes."""

    def test_group_report(self, sampled_file, capsys) -> None:
        path, group = sampled_file
        code = main(["test-group", "--adj", str(path), "--nodes", one_based(group), "--seed", "5", "--k0", "3"])
        assert code == 0
        report = json.loads(capsys.readouterr().out)
        assert report["nodes"] == sorted(i + 1 for i in group)
        assert report["index_base"] == 1
        assert isinstance(report["reject"], bool)
        assert report["k0"] == 3

    def test_group_report_to_file(self, sampled_file, tmp_path) -> None:
        path, group = sampled_file
        out = tmp_path / "reports" / "group.json"
        args = ["test-group", "--adj", str(path), "--nodes", one_based(group), "--seed", "5", "--k0", "3"]
        assert main(args + ["--out", str(out)]) == 0
        first = out.read_bytes()
        assert main(args + ["--out", str(out)]) == 0
        assert out.read_bytes() == first

    def test_single_node_group(self, sampled_file) -> None:
        path, _ = sampled_file
        assert main(["test-group", "--adj", str(path), "--nodes", "4", "--seed", "1"]) == 2

    def test_group_needs_seed(self, sampled_file, capsys) -> None:
        path, group = sampled_file
        assert main(["test-group", "--adj", str(path), "--nodes", one_based(group)]) == 2
        assert "--seed" in capsys.readouterr().err

    def test_pair_report(self, sampled_file, capsys) -> None:
        path, group = sampled_file
        code = main(["test-pair", "--adj", str(path), "--nodes", one_based(group[:2]), "--k0", "3"])
        assert code == 0
        report = json.loads(capsys.readouterr().out)
        assert report["df"] == 3
        assert report["calibration"] == "chi2"

    def test_pair_needs_two_nodes(self, sampled_file) -> None:
        path, _ = sampled_file
        assert main(["test-pair", "--adj", str(path), "--nodes", "1,2,3"]) == 2

    def test_no_signal(self, sparse_file) -> None:
        assert main(["test-pair", "--adj", str(sparse_file), "--nodes", "1,2"]) == 3

    def test_unreadable_adjacency(self, tmp_path) -> None:
        bad = tmp_path / "bad.txt"
        bad.write_text("n=3\n1 9\n")
        assert main(["test-pair", "--adj", str(bad), "--nodes", "1,2"]) == 2


class TestSpectralCommand:

    def test_summary_and_csv(self, tmp_path, complete_graph, capsys) -> None:
        adj = save_adjacency(complete_graph(10), tmp_path / "k10.csv")
        table = tmp_path / "eig" / "spectrum.csv"
        assert main(["spectral", "--adj", str(adj), "--top", "3", "--csv", str(table)]) == 0
        summary = json.loads(capsys.readouterr().out)
        assert summary["n"] == 10
        assert summary["eigenvalues"][0] == pytest.approx(9.0)
        assert len(summary["eigenvalues"]) == 3
        assert set(summary["k0"]) == {"pair", "group"}
        assert len(pd.read_csv(table)) == 10

    def test_no_signal_reports_zero(self, sparse_file, capsys) -> None:
        assert main(["spectral", "--adj", str(sparse_file)]) == 0
        assert json.loads(capsys.readouterr().out)["k0"] == {"pair": 0, "group": 0}


class TestIngestCommand:

    def test_correlation_network(self, tmp_path) -> None:
        rng = np.random.default_rng(0)
        a, b = rng.standard_normal(60), rng.standard_normal(60)
        frame = pd.DataFrame({"x": a, "y": 3 * a - 1, "z": b})
        panel = tmp_path / "panel.csv"
        frame.to_csv(panel, index=False)
        out = tmp_path / "net.mtx"
        assert main(["ingest-corr", "--panel", str(panel), "--threshold", "0.9", "--out", str(out)]) == 0
        X = load_adjacency(out).values
        assert X[0, 1] == 1 and X[0, 2] == 0

    def test_missing_panel(self, tmp_path) -> None:
        assert main(["ingest-corr", "--panel", str(tmp_path / "none.csv"), "--out", str(tmp_path / "o.txt")]) == 2


class TestSimulateCommand:
    """simulate writes deterministic CSV tables."""

    ARGS = ["--example", "1", "--n", "200", "--theta", "0.5", "--m", "10", "--k0", "3", "--reps", "3", "--seed", "1"]

    def test_byte_identical_reruns(self, tmp_path) -> None:
        first, second = tmp_path / "a", tmp_path / "b"
        assert main(["simulate", *self.ARGS, "--workers", "1", "--out-dir", str(first)]) == 0
        assert main(["simulate", *self.ARGS, "--workers", "1", "--out-dir", str(second)]) == 0
        for path in first.iterdir():
            assert path.read_bytes() == (second / path.name).read_bytes()
        assert pd.read_csv(first / SIZE_POWER_FILE).loc[0, "reps"] == 3

    def test_worker_count_does_not_change_outputs(self, tmp_path) -> None:
        args = [*self.ARGS, "--reps", "8"]
        single, pooled = tmp_path / "single", tmp_path / "pooled"
        assert main(["simulate", *args, "--workers", "1", "--out-dir", str(single)]) == 0
        assert main(["simulate", *args, "--workers", "8", "--out-dir", str(pooled)]) == 0
        names = sorted(p.name for p in single.iterdir())
        assert names == sorted(p.name for p in pooled.iterdir())
        for name in names:
            assert (single / name).read_bytes() == (pooled / name).read_bytes()
        assert pd.read_csv(pooled / SIZE_POWER_FILE).loc[0, "reps"] == 8

    def test_needs_seed(self, tmp_path) -> None:
        args = self.ARGS[:-2]
        assert main(["simulate", *args, "--out-dir", str(tmp_path)]) == 2

    def test_bad_override(self, tmp_path) -> None:
        assert main(["simulate", "--example", "1", "--delta", "0.3", "--seed", "0", "--out-dir", str(tmp_path)]) == 2

    def test_sweep_file_with_overrides(self, tmp_path) -> None:
        sweep = tmp_path / "sweep.yaml"
        sweep.write_text(
            "base:\n  example: 1\n  n: 200\n  n0: 20\n  k0: 3\n  m: 10\n  seed: 3\n"
            "grid:\n  theta: [0.4, 0.6]\n"
        )
        out = tmp_path / "out"
        assert main(["simulate", "--config", str(sweep), "--reps", "2", "--out-dir", str(out)]) == 0
        table = pd.read_csv(out / SIZE_POWER_FILE)
        assert table["theta"].tolist() == [0.4, 0.6]
        assert (table["reps"] == 2).all()


class TestRmtCheckCommand:

    def test_writes_sweep(self, tmp_path) -> None:
        args = ["rmt-check", "--thetas", "0.5", "--seeds", "0", "--n", "200", "--n0", "20", "--out-dir", str(tmp_path)]
        assert main(args) == 0
        frame = pd.read_csv(tmp_path / RMT_SWEEP_FILE)
        assert "tail_energy" in set(frame["metric"])

    def test_needs_seeds(self, tmp_path) -> None:
        assert main(["rmt-check", "--thetas", "0.5", "--out-dir", str(tmp_path)]) == 2

    def test_unknown_sweep_key(self, tmp_path) -> None:
        sweep = tmp_path / "rmt.yaml"
        sweep.write_text("thetas: [0.5]\nseeds: [0]\nwidth: 3\n")
        assert main(["rmt-check", "--sweep", str(sweep), "--out-dir", str(tmp_path)]) == 2
