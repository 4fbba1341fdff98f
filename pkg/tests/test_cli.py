import csv
import math

import pytest

from lenient_bandits.cli import main
from lenient_bandits.kl_math import bernoulli_kl

SIM_CONFIG = """
means = [0.9, 0.6]
policies = [ts, eps-ts:0.2]
gap_functions = [standard, hinge:0.2]
horizon = 100
n_seeds = 5
base_seed = 3
"""

RATIO_CONFIG = """
mu2 = 0.3
eps = 0.2
gap_function = indicator:0.2
mu1_grid = [0.55, 0.8, 0.05]
"""


@pytest.fixture()
def sim_config_path(tmp_path):
    path = tmp_path / "exp.cfg"
    path.write_text(SIM_CONFIG)
    return path


class TestSimulate:
    def test_writes_outputs(self, sim_config_path, tmp_path, capsys):
        out = tmp_path / "out"
        code = main(["simulate", "--config", str(sim_config_path), "--out", str(out)])
        assert code == 0
        assert (out / "curves.csv").exists()
        assert (out / "finals.csv").exists()
        assert not (out / "per_seed.csv").exists()
        printed = capsys.readouterr().out
        assert "policy" in printed and "eps-ts:0.2" in printed

    def test_per_seed_flag(self, sim_config_path, tmp_path):
        out = tmp_path / "out"
        code = main(
            ["simulate", "--config", str(sim_config_path), "--out", str(out), "--per-seed"]
        )
        assert code == 0
        rows = list(csv.DictReader((out / "per_seed.csv").open()))
        assert len(rows) == 5 * 4  # seeds x (policies x gap functions)

    def test_single_arm_all_zero(self, tmp_path):
        cfg = tmp_path / "one.cfg"
        cfg.write_text(
            "means = [0.5]\npolicies = [ts]\ngap_functions = [standard]\n"
            "horizon = 50\nn_seeds = 1\n"
        )
        out = tmp_path / "out"
        assert main(["simulate", "--config", str(cfg), "--out", str(out)]) == 0
        rows = list(csv.DictReader((out / "finals.csv").open()))
        assert all(float(r["mean"]) == 0.0 for r in rows)

    def test_missing_means_exit_2(self, tmp_path, capsys):
        cfg = tmp_path / "bad.cfg"
        cfg.write_text("policies = [ts]\ngap_functions = [standard]\nhorizon = 10\nn_seeds = 1\n")
        code = main(["simulate", "--config", str(cfg), "--out", str(tmp_path / "o")])
        assert code == 2
        assert "means" in capsys.readouterr().err

    def test_byte_identical_reruns(self, sim_config_path, tmp_path):
        out1, out2 = tmp_path / "a", tmp_path / "b"
        for out in (out1, out2):
            assert main(["simulate", "--config", str(sim_config_path), "--out", str(out)]) == 0
        assert (out1 / "curves.csv").read_bytes() == (out2 / "curves.csv").read_bytes()
        assert (out1 / "finals.csv").read_bytes() == (out2 / "finals.csv").read_bytes()

    def test_cli_seed_overrides(self, sim_config_path, tmp_path):
        out = tmp_path / "out"
        code = main(
            ["simulate", "--config", str(sim_config_path), "--out", str(out), "--seeds", "2"]
        )
        assert code == 0
        rows = list(csv.DictReader((out / "finals.csv").open()))
        assert all(r["n_seeds"] == "2" for r in rows)


class TestBounds:
    def test_writes_three_csvs(self, tmp_path, capsys):
        cfg = tmp_path / "b.cfg"
        cfg.write_text("means = [0.5, 0.2]\ngap_functions = [thresholded:0.2]\n")
        out = tmp_path / "out"
        assert main(["bounds", "--config", str(cfg), "--out", str(out)]) == 0
        for name in ("lower", "upper", "standard"):
            rows = list((out / f"bounds_{name}.csv").read_text().splitlines())
            assert rows[0] == "gap_function,arm,mean,gap,f_gap,denominator,term"
            assert rows[-1].split(",")[1] == "total"

    def test_constant_regime_totals_zero(self, tmp_path):
        cfg = tmp_path / "b.cfg"
        cfg.write_text("means = [0.9, 0.6]\ngap_functions = [hinge:0.2]\n")
        out = tmp_path / "out"
        assert main(["bounds", "--config", str(cfg), "--out", str(out)]) == 0
        for name in ("lower", "upper"):
            total_row = (out / f"bounds_{name}.csv").read_text().splitlines()[-1]
            assert float(total_row.split(",")[-1]) == 0.0

    def test_eps_zero_lower_equals_upper(self, tmp_path):
        cfg = tmp_path / "b.cfg"
        cfg.write_text("means = [0.5, 0.2]\ngap_functions = [standard]\n")
        out = tmp_path / "out"
        assert main(["bounds", "--config", str(cfg), "--out", str(out)]) == 0
        totals = {}
        for name in ("lower", "upper", "standard"):
            totals[name] = float(
                (out / f"bounds_{name}.csv").read_text().splitlines()[-1].split(",")[-1]
            )
        assert totals["lower"] == pytest.approx(totals["upper"], rel=1e-12)
        assert totals["upper"] == pytest.approx(totals["standard"], rel=1e-12)


class TestRatio:
    def test_sweep_with_inf_boundary(self, tmp_path):
        cfg = tmp_path / "r.cfg"
        cfg.write_text(RATIO_CONFIG)
        out = tmp_path / "out"
        assert main(["ratio", "--config", str(cfg), "--out", str(out)]) == 0
        rows = {float(r["mu1"]): r["ratio"] for r in csv.DictReader((out / "ratio.csv").open())}
        assert rows[0.8] == "inf"  # mu1 = 1 - eps exactly
        # mu1 = 0.55: d(0.375, 0.625)/d(0.3, 0.55)... check one interior value
        interior = float(rows[0.55])
        assert interior > 1.0

    def test_interior_oracle_value(self, tmp_path):
        cfg = tmp_path / "r.cfg"
        cfg.write_text(
            "mu2 = 0.3\neps = 0.2\ngap_function = indicator:0.2\nmu1_grid = [0.5, 0.5, 1]\n"
        )
        out = tmp_path / "out"
        code = main(
            ["ratio", "--config", str(cfg), "--out", str(out), "--allow-degenerate"]
        )
        assert code == 0
        rows = list(csv.DictReader((out / "ratio.csv").open()))
        expected = bernoulli_kl(0.375, 0.625) / bernoulli_kl(0.3, 0.5)
        assert float(rows[0]["ratio"]) == pytest.approx(expected, rel=1e-12)

    def test_eps_zero_all_ones(self, tmp_path):
        cfg = tmp_path / "r.cfg"
        cfg.write_text(
            "mu2 = 0.3\neps = 0\ngap_function = standard\nmu1_grid = [0.4, 0.9, 0.1]\n"
        )
        out = tmp_path / "out"
        assert main(["ratio", "--config", str(cfg), "--out", str(out)]) == 0
        for row in csv.DictReader((out / "ratio.csv").open()):
            assert float(row["ratio"]) == pytest.approx(1.0, rel=1e-12)

    def test_degenerate_sweep_exit_2(self, tmp_path, capsys):
        cfg = tmp_path / "r.cfg"
        cfg.write_text(
            "mu2 = 0.3\neps = 0.2\ngap_function = indicator:0.2\nmu1_grid = [0.4, 0.8, 0.1]\n"
        )
        out = tmp_path / "out"
        assert main(["ratio", "--config", str(cfg), "--out", str(out)]) == 2
        assert "--allow-degenerate" in capsys.readouterr().err

    def test_allow_degenerate_extends_continuously(self, tmp_path):
        cfg = tmp_path / "r.cfg"
        cfg.write_text(
            "mu2 = 0.3\neps = 0.2\ngap_function = indicator:0.2\nmu1_grid = [0.2, 0.8, 0.1]\n"
        )
        out = tmp_path / "out"
        code = main(["ratio", "--config", str(cfg), "--out", str(out), "--allow-degenerate"])
        assert code == 0
        rows = {float(r["mu1"]): r["ratio"] for r in csv.DictReader((out / "ratio.csv").open())}
        assert rows[0.2] == "nan"  # mu1 < mu2: no suboptimal arm at all
        assert rows[0.3] == "nan"  # mu1 = mu2 identical arms
        assert float(rows[0.4]) > 1.0  # inside the band: denominator-ratio extension
        assert float(rows[0.5]) > 1.0  # boundary mu1 = mu2 + eps agrees with the limit
        assert rows[0.8] == "inf"


class TestVerify:
    def test_coarse_grid_passes(self, capsys):
        assert main(["verify", "--grid-density", "10"]) == 0
        out = capsys.readouterr().out
        assert out.count("pass") == 4

    def test_corrupted_kl_fails(self, capsys, monkeypatch):
        monkeypatch.setenv("LENIENT_BANDITS_CORRUPT_KL", "1")
        assert main(["verify", "--grid-density", "10"]) == 1
        assert "FAIL" in capsys.readouterr().out

    def test_coarse_grid_is_fast(self):
        import time

        t0 = time.perf_counter()
        main(["verify", "--grid-density", "10"])
        assert time.perf_counter() - t0 < 1.0
