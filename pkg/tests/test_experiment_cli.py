import json
import subprocess
import sys

import numpy as np
import pytest

from fracsmc.cli import EXIT_IO, EXIT_OK, EXIT_ORACLE, EXIT_USAGE, main
from fracsmc.experiment import ExperimentConfig, RESULT_KEYS, read_csv_header, run_experiment

QUICK = ["--m", "5", "--k", "3", "--reps", "2"]


def read_table(path):
    lines = path.read_text().splitlines()
    header = [l for l in lines if l.startswith("#")]
    body = [l for l in lines if not l.startswith("#")]
    return header, body[0].split(","), [row.split(",") for row in body[1:]]


class TestConfig:
    @pytest.mark.parametrize("example, degree, M, R", [(1, 2, 50, 100), (2, 2, 50, 100),
                                                       (3, 12, 2000, 100), (4, 2, 50, 30)])
    def test_presets(self, example, degree, M, R):
        cfg = ExperimentConfig(example=example).resolved()
        assert (cfg.degree, cfg.M, cfg.replicas) == (degree, M, R)

    def test_custom_needs_n_and_f(self):
        with pytest.raises(ValueError):
            ExperimentConfig(example=None, f="one").resolved()
        cfg = ExperimentConfig(example=None, f="one", n=3).resolved()
        assert cfg.problem()[1] is None

    def test_unknown_keys(self):
        with pytest.raises(ValueError):
            ExperimentConfig.from_mapping({"bogus": 1})

    def test_coercion(self):
        cfg = ExperimentConfig.from_mapping({"example": "None", "n": "3", "s": "0.5", "f": "one"})
        assert cfg.example is None and cfg.n == 3 and cfg.s == 0.5

    def test_radius_drops_exact_solution(self):
        problem, exact = ExperimentConfig(example=2, radius=2.0).problem()
        assert problem.radius == 2.0 and exact is None


class TestRunCommand:
    def test_schema(self, tmp_path):
        out = tmp_path / "run.csv"
        assert main(["run", "--example", "2", *QUICK, "--out", str(out)]) == EXIT_OK
        header, cols, rows = read_table(out)
        keys = [h[2:].split("=")[0] for h in header]
        assert keys[:len(RESULT_KEYS)] == list(RESULT_KEYS)
        assert {"command", "quadrature_nodes", "quadrature_weights", "version"} <= set(keys)
        assert cols == ["iter", "E_inf", "node_0_mean", "node_0_stderr", "node_1_mean",
                        "node_1_stderr", "node_2_mean", "node_2_stderr", "truncated"]
        assert len(rows) == 4
        assert [r[0] for r in rows] == ["1", "2", "3", "4"]
        # floats are written with 17 significant digits, so they round-trip exactly
        e = rows[1][1]
        assert float(repr(float(e))) == float(e)
        assert len(e.replace("-", "").replace(".", "").split("e")[0].lstrip("0")) >= 15

    def test_matches_library(self, tmp_path):
        out = tmp_path / "run.csv"
        main(["run", "--example", "1", *QUICK, "--out", str(out)])
        table, _ = run_experiment(ExperimentConfig(example=1, M=5, K=3, replicas=2))
        _, _, rows = read_table(out)
        np.testing.assert_array_equal([float(r[1]) for r in rows], table.e_inf)

    def test_from_csv_round_trip(self, tmp_path):
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        main(["run", "--example", "4", "--s", "1.3", "--seed", "5", *QUICK, "--out", str(a)])
        assert main(["run", "--from-csv", str(a), "--out", str(b)]) == EXIT_OK
        assert a.read_bytes() == b.read_bytes()

    def test_config_file_with_override(self, tmp_path):
        cfgfile = tmp_path / "cfg.json"
        cfgfile.write_text(json.dumps({"example": 2, "s": 0.9, "M": 5, "K": 2, "replicas": 2, "seed": 1}))
        out = tmp_path / "o.csv"
        assert main(["run", "--config", str(cfgfile), "--seed", "4", "--out", str(out)]) == EXIT_OK
        header = read_csv_header(out)
        assert header["s"] == "0.9" and header["seed"] == "4"

    def test_custom_source(self, tmp_path):
        out = tmp_path / "c.csv"
        assert main(["run", "--f", "poly:1,-1", "--n", "3", *QUICK, "--out", str(out)]) == EXIT_OK
        assert read_csv_header(out)["example"] == "None"

    def test_workers_not_in_header(self, tmp_path):
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        main(["run", *QUICK, "--workers", "1", "--out", str(a)])
        main(["run", *QUICK, "--workers", "3", "--out", str(b)])
        assert a.read_bytes() == b.read_bytes()

    def test_dry_run(self, capsys):
        assert main(["run", "--example", "3", "--dry-run"]) == EXIT_OK
        text = capsys.readouterr().out
        assert "# command=run" in text and "# degree=12" in text and "# M=2000" in text


class TestProfileCommand:
    def test_profile(self, tmp_path):
        out = tmp_path / "p.csv"
        assert main(["profile", "--example", "2", "--m", "20", "--k", "10", "--reps", "4",
                     "--out", str(out)]) == EXIT_OK
        _, cols, rows = read_table(out)
        assert cols == ["radius", "u_star", "u_ref"]
        data = np.array(rows, dtype=float)
        assert data.shape == (201, 3)
        assert data[-1, 0] == 1.0 and data[-1, 1] == 0.0
        assert np.max(np.abs(data[:, 1] - data[:, 2])) <= 1e-3


class TestExitCodes:
    @pytest.mark.parametrize("argv", [["run", "--example", "7"], ["run", "--s", "abc"], ["nope"],
                                      ["run", "--s", "2.5", "--k", "1", "--m", "2", "--reps", "1"],
                                      ["run", "--example", "2", "--m", "0"]])
    def test_usage(self, argv, capsys):
        assert main(argv) == EXIT_USAGE
        assert capsys.readouterr().err

    def test_io_output(self, tmp_path, capsys):
        bad = tmp_path / "missing" / "x.csv"
        assert main(["run", *QUICK, "--out", str(bad)]) == EXIT_IO
        assert "missing" in capsys.readouterr().err

    def test_io_inputs(self, tmp_path):
        assert main(["run", "--config", str(tmp_path / "none.json")]) == EXIT_IO
        assert main(["run", "--from-csv", str(tmp_path / "none.csv")]) == EXIT_IO

    def test_bad_config_contents(self, tmp_path):
        cfgfile = tmp_path / "cfg.json"
        cfgfile.write_text("[1, 2]")
        assert main(["run", "--config", str(cfgfile)]) == EXIT_USAGE

    def test_oracle_pass(self, capsys):
        assert main(["oracle", "--suite", "eigen"]) == EXIT_OK
        assert "PASS" in capsys.readouterr().out

    def test_oracle_failure(self, capsys):
        # far too few samples for the 0.01 gate
        assert main(["oracle", "--suite", "exit", "--m", "20"]) == EXIT_ORACLE
        assert "FAIL" in capsys.readouterr().out

    def test_module_entry_point(self):
        proc = subprocess.run([sys.executable, "-m", "fracsmc", "run", "--dry-run"],
                              capture_output=True, text=True)
        assert proc.returncode == 0 and "# example=2" in proc.stdout
