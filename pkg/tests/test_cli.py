"""Command-line front end: output format, determinism, exit codes."""

import json
import math

import pytest

from fracstoch.cli import main


def run_cli(args, tmp_path, name="out.csv"):
    out = tmp_path / name
    code = main(list(args) + ["--output", str(out)])
    text = out.read_text() if out.exists() else ""
    return code, text


def body(text):
    lines = text.splitlines()
    assert lines[0].startswith("# config ")
    assert lines[1].startswith("# generated ")
    return lines[0], lines[2:]


class TestCommands:
    def test_eval_ml_exponential(self, tmp_path):
        code, text = run_cli(["eval-ml", "--alpha", "1", "--eta", "1",
                              "--xi", "1", "--x", "1"], tmp_path)
        assert code == 0
        _, rows = body(text)
        value = float(rows[1].split(",")[4])
        assert value == pytest.approx(math.e, rel=1e-12)

    def test_eval_wright(self, tmp_path):
        code, text = run_cli(["eval-wright", "--a", "0", "--b", "1",
                              "--x", "0.5,1.0"], tmp_path)
        assert code == 0
        _, rows = body(text)
        assert float(rows[1].split(",")[3]) == pytest.approx(math.exp(0.5), rel=1e-12)

    def test_multiterm_three_rows(self, tmp_path):
        code, text = run_cli(["multiterm", "--n", "2", "--lambda", "1",
                              "--gamma", "0.5", "--nu", "0.2"], tmp_path)
        assert code == 0
        _, rows = body(text)
        got = [tuple(float(v) for v in r.split(",")[:2]) for r in rows[1:]]
        assert got == [(1.0, 0.7), (2.0, 0.5), (1.0, 0.3)]

    def test_invert_carries_metadata(self, tmp_path):
        code, text = run_cli(["invert", "--id", "h-xs", "--coord", "1.0",
                              "--t", "0.5,1.0", "--gamma", "0.5", "--nu", "0.2",
                              "--delta", "1"], tmp_path)
        assert code == 0
        _, rows = body(text)
        header = rows[0].split(",")
        assert "method" in header and "tolerance" in header and "disagreement" in header
        assert len(rows) == 3

    def test_simulate_path_deterministic(self, tmp_path):
        args = ["simulate-path", "--process", "frakv", "--gamma", "0.5",
                "--nu", "0.2", "--delta", "1", "--steps", "16", "--seed", "9"]
        _, a = run_cli(args, tmp_path, "a.csv")
        _, b = run_cli(args, tmp_path, "b.csv")
        assert body(a)[1] == body(b)[1]
        values = [float(r.split(",")[1]) for r in body(a)[1][1:]]
        assert values[0] == 0.0
        assert all(x <= y for x, y in zip(values, values[1:]))

    def test_sample_inverse_reports_bracket(self, tmp_path):
        code, text = run_cli(["sample-inverse", "--gamma", "0.5", "--nu", "0.2",
                              "--delta", "1", "--t", "1.0", "--n", "8",
                              "--resolution", "0.01", "--seed", "4"], tmp_path)
        assert code == 0
        _, rows = body(text)
        assert rows[0].split(",")[2] == "bracket_width"
        widths = {float(r.split(",")[2]) for r in rows[1:]}
        assert widths == {0.01}

    def test_mc_verify_within_sigmas(self, tmp_path):
        code, text = run_cli(["mc-verify", "--check", "v-laplace", "--gamma", "0.5",
                              "--nu", "0.2", "--delta", "1", "--n", "20000",
                              "--z", "1.0", "--seed", "11"], tmp_path)
        assert code == 0
        _, rows = body(text)
        cells = rows[1].split(",")
        assert float(cells[4]) < 4.0   # deviation in sigmas

    def test_solve_pde_density(self, tmp_path):
        code, text = run_cli(["solve-pde", "--mode", "density", "--gamma", "0.5",
                              "--nu", "0.5", "--delta", "0", "--t", "1.0",
                              "--x", "0.0,1.0"], tmp_path)
        assert code == 0
        _, rows = body(text)
        got = float(rows[2].split(",")[2])
        assert got == pytest.approx(math.exp(-0.25) / math.sqrt(4 * math.pi), abs=1e-6)


class TestContracts:
    def test_seed_env_fallback(self, tmp_path, monkeypatch):
        monkeypatch.setenv("FRACSTOCH_SEED", "21")
        code, _ = run_cli(["sample-inverse", "--gamma", "0.5", "--nu", "0.2",
                           "--delta", "1", "--t", "1.0", "--n", "4"], tmp_path)
        assert code == 0

    def test_missing_seed_is_validation_error(self, tmp_path, monkeypatch):
        monkeypatch.delenv("FRACSTOCH_SEED", raising=False)
        code = main(["sample-inverse", "--gamma", "0.5", "--nu", "0.2",
                     "--delta", "1", "--t", "1.0", "--n", "4"])
        assert code == 2

    def test_invalid_params_exit_2(self, tmp_path):
        code = main(["multiterm", "--n", "4", "--gamma", "0.5", "--nu", "0.2"])
        assert code == 2

    def test_numerical_failure_exit_3(self, tmp_path):
        # far outside the series region
        code = main(["solve-pde", "--mode", "fourier-series", "--gamma", "0.5",
                     "--nu", "0.2", "--delta", "1", "--t", "40.0",
                     "--beta", "8.0"])
        assert code == 3

    def test_config_file_with_flag_override(self, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"n": 2, "lam": 1.0, "gamma": 0.5, "nu": 0.2}))
        code, text = run_cli(["multiterm", "--n", "1", "--gamma", "0.5",
                              "--nu", "0.2", "--config", str(cfg)], tmp_path)
        assert code == 0
        _, rows = body(text)
        assert len(rows) == 3   # flag --n 1 overrides the file's n=2

    def test_verify_suite_determinism(self, tmp_path):
        args = ["verify-suite", "--tier", "fast", "--seed", "42"]
        code_a, a = run_cli(args, tmp_path, "a.csv")
        code_b, b = run_cli(args, tmp_path, "b.csv")
        assert code_a == 0 and code_b == 0
        head_a, rows_a = body(a)
        head_b, rows_b = body(b)
        assert head_a == head_b
        assert rows_a == rows_b
        assert all(r.split(",")[1] == "pass" for r in rows_a[1:])
