"""Smoke tests for the Python bindings and the command-line tool."""

import json
import math
import os
import subprocess
from pathlib import Path

import pytest

import sqotto

KB = 1.380649e-23
HBAR = 1.054571817e-34


def beta(kelvin):
    return 1.0 / (KB * kelvin)


def test_closed_forms():
    b1, b2 = beta(1e-3), beta(1e-3 / 0.88)
    assert sqotto.efficiency_at_max_power(b1, b2, 0.0) == pytest.approx(1 - math.sqrt(0.88), rel=1e-12)
    assert sqotto.efficiency_at_max_power(b1, b2, 0.4) == pytest.approx(0.18884, rel=1e-4)
    assert sqotto.carnot(b1, b2) == pytest.approx(0.12, rel=1e-12)
    assert sqotto.optimal_frequency_ratio(b1, b2, 0.0) == pytest.approx(1 / math.sqrt(0.88), rel=1e-12)
    rc = sqotto.carnot_crossing_squeezing(b1, b2)
    assert math.sinh(rc) ** 2 == pytest.approx((1 / 0.88 - 1) / 2, rel=1e-12)


def test_cycle_params_and_efficiency():
    w1 = 1e6
    p = sqotto.CycleParams(omega1=w1, omega2=1.2 * w1, beta1=1e-4 / (HBAR * w1), beta2=0.5e-4 / (HBAR * w1))
    ea, eb, ec, ed = sqotto.stroke_energies(p)
    assert eb == pytest.approx(1.2 * ea, rel=1e-12)
    assert sqotto.efficiency(p) == pytest.approx(1 - 1 / 1.2, rel=1e-12)
    p.beta2 = p.beta1
    assert sqotto.efficiency(p) is None


def test_q_star():
    assert sqotto.sudden_quench_q_star(1.0, 2.0) == pytest.approx(1.25)
    assert sqotto.q_star_linear(1.0, 2.0, 1e-5) == pytest.approx(1.25, abs=1e-3)
    assert sqotto.q_star(lambda t: 1.0 + t / 1000.0, 1000.0) == pytest.approx(1.0, abs=1e-3)


def test_trap_and_squeeze_maps():
    g = sqotto.TrapGeometry()
    assert sqotto.max_frequency_ratio(g) == pytest.approx(1.4055, rel=1e-3)
    a = sqotto.axial_amplitude_for_ratio(g, 1.2)
    assert sqotto.radial_frequency(g, -a) / sqotto.radial_frequency(g, a) == pytest.approx(1.2)
    assert sqotto.ideal_squeezing(sqotto.ideal_delta_omega_fraction(0.3)) == pytest.approx(0.3)
    with pytest.raises(sqotto.InfeasibleError):
        sqotto.simulate_cycles(g, 1.6)


def test_small_simulation():
    g = sqotto.TrapGeometry()
    ratio = sqotto.optimal_frequency_ratio(beta(1e-3), beta(1e-3 / 0.88), 0.0)
    records = sqotto.simulate_cycles(g, ratio, ensemble=200, cycles=1, seed=3)
    assert len(records) == 1
    rec = records[0]
    assert rec["feasible"]
    assert [c["label"] for c in rec["corners"]] == ["A", "B", "B'", "C", "D", "A"]
    assert rec["work_net"] == pytest.approx(rec["heat_in"] - rec["heat_out"], rel=1e-9)
    again = sqotto.simulate_cycles(g, ratio, ensemble=200, cycles=1, seed=3)
    assert again[0]["work_net"] == rec["work_net"]


def test_scenario_and_commands(tmp_path):
    s = sqotto.Scenario.parse("[run]\nseed = 4\n[analytic]\nr_points = 11\n")
    assert s.seed == 4
    assert len(s.hash()) == 16
    code, files = sqotto.run_analytic_fig1(s, str(tmp_path))
    assert code == 0
    summary = json.loads((tmp_path / "fig1_summary.json").read_text())
    assert summary["header"]["config_hash"] == s.hash()
    with pytest.raises(sqotto.ConfigError):
        sqotto.Scenario.parse("[trap]\nomega_ax_2pi_khz = -36\n")


@pytest.mark.skipif("SQOTTO_CLI" not in os.environ, reason="command-line tool not available")
def test_cli_exit_codes(tmp_path):
    cli = os.environ["SQOTTO_CLI"]
    bad = tmp_path / "bad.ini"
    bad.write_text("[trap]\nomega_ax_2pi_khz = -36\n")
    assert subprocess.run([cli, "analytic", "fig1", "--config", str(bad)], capture_output=True).returncode == 2
    assert subprocess.run([cli, "simulate", "cycle", "--out", str(tmp_path)], capture_output=True).returncode == 2
    env = dict(os.environ, SQOTTO_OUTPUT_DIR=str(tmp_path / "env"))
    done = subprocess.run([cli, "analytic", "table"], env=env, capture_output=True)
    assert done.returncode == 0
    assert (tmp_path / "env" / "table.csv").exists()
    src = Path(os.environ.get("SQOTTO_SOURCE_DIR", "."))
    assert (src / "share" / "csv_schema.json").exists()


def test_schema_documents_every_column(tmp_path):
    src = Path(os.environ.get("SQOTTO_SOURCE_DIR", Path(__file__).resolve().parents[2]))
    schema = json.loads((src / "share" / "csv_schema.json").read_text())["files"]
    s = sqotto.Scenario.parse("[run]\nseed = 2\n[simulation]\nensemble = 100\nrepetitions = 1\n"
                              "r_targets = 0, 0.1\n[calibration]\nensemble = 200\ndelta_omega_fractions = 0, 0.1, 0.2\n")
    written = []
    for fn in (sqotto.run_analytic_fig1, sqotto.run_analytic_table, sqotto.run_simulate_cycle,
               sqotto.run_calibrate, sqotto.run_simulate_sweep):
        code, files = fn(s, str(tmp_path))
        assert code == 0
        written += [Path(f) for f in files if f.endswith(".csv")]
    assert written
    for path in written:
        lines = [l for l in path.read_text().splitlines() if not l.startswith("#")]
        documented = [c["name"] for c in schema[path.name]["columns"]]
        assert lines[0].split(",") == documented, path.name
