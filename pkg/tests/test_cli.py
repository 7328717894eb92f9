import json
import subprocess
import sys

import numpy as np
import pytest


def run_cli(*args, cwd=None):
    return subprocess.run([sys.executable, "-m", "lossywave", *args],
                          capture_output=True, text=True, cwd=cwd)


def load_csv(path, skiprows=2):
    return np.loadtxt(path, delimiter=",", skiprows=skiprows, ndmin=2)


class TestTable1:
    def test_reference_rows(self, tmp_path):
        proc = run_cli("table1", "--out", str(tmp_path))
        assert proc.returncode == 0, proc.stderr
        data = load_csv(tmp_path / "table1.csv")
        assert data.shape == (3, 2)
        expected = {1.1: 1e-4, 1.5: 1e4, 2.0: 1e5}
        for gamma, bound in data:
            assert bound == pytest.approx(expected[round(gamma, 3)], rel=1e-12)

    def test_single_gamma(self, tmp_path):
        proc = run_cli("table1", "--gammas", "1.5", "--out", str(tmp_path))
        assert proc.returncode == 0
        assert load_csv(tmp_path / "table1.csv").shape == (1, 2)

    def test_custom_threshold(self, tmp_path):
        proc = run_cli("table1", "--gammas", "1.5", "--threshold", "0.01",
                       "--out", str(tmp_path))
        assert proc.returncode == 0
        data = load_csv(tmp_path / "table1.csv")
        assert data[0, 1] == pytest.approx(1e2, rel=1e-12)

    def test_json_format(self, tmp_path):
        proc = run_cli("table1", "--gammas", "1.5", "--format", "json",
                       "--out", str(tmp_path))
        assert proc.returncode == 0
        doc = json.loads((tmp_path / "table1.json").read_text())
        assert doc[0]["bound_M"] == pytest.approx(1e4, rel=1e-12)

    def test_invalid_gamma_exits_2(self, tmp_path):
        proc = run_cli("table1", "--gammas", "0.9", "--out", str(tmp_path))
        assert proc.returncode == 2
        assert not (tmp_path / "table1.csv").exists()


class TestTable2:
    def test_single_distance(self, tmp_path):
        proc = run_cli("table2", "--r-list", "1e-3", "--out", str(tmp_path))
        assert proc.returncode == 0, proc.stderr
        data = load_csv(tmp_path / "table2.csv")
        assert data.shape == (1, 2)
        assert data[0, 1] == pytest.approx(7.35e-5, rel=0.1)

    def test_empty_r_list_is_usage_error(self, tmp_path):
        proc = run_cli("table2", "--r-list", "", "--out", str(tmp_path))
        assert proc.returncode == 2
        assert not (tmp_path / "table2.csv").exists()

    def test_preset_file(self, tmp_path):
        preset = {"name": "demo", "gamma": 1.5, "c0": 1.0, "alpha1": 2.0, "tau0": 1e-3}
        path = tmp_path / "demo.json"
        path.write_text(json.dumps(preset))
        proc = run_cli("table2", "--preset", str(path), "--r-list", "0.1",
                       "--out", str(tmp_path))
        assert proc.returncode == 0, proc.stderr
        assert "preset=demo" in (tmp_path / "table2.csv").read_text().splitlines()[0]

    def test_unknown_preset_exits_2(self, tmp_path):
        proc = run_cli("table2", "--preset", "nonexistent", "--out", str(tmp_path))
        assert proc.returncode == 2


class TestDeterminism:
    def test_byte_identical_reruns(self, tmp_path):
        out1, out2 = tmp_path / "a", tmp_path / "b"
        for out in (out1, out2):
            proc = run_cli("table2", "--r-list", "1e-2,1", "--out", str(out))
            assert proc.returncode == 0, proc.stderr
            proc = run_cli("fig1", "--out", str(out))
            assert proc.returncode == 0, proc.stderr
        for name in ("table2.csv", "fig1_attenuation.csv", "fig1_phasespeed.csv"):
            assert (out1 / name).read_bytes() == (out2 / name).read_bytes()


class TestFigures:
    def test_fig1_attenuations_agree_to_two_percent(self, tmp_path):
        proc = run_cli("fig1", "--out", str(tmp_path))
        assert proc.returncode == 0, proc.stderr
        data = load_csv(tmp_path / "fig1_attenuation.csv")
        w, att_c, att_pl = data[:, 0], data[:, 1], data[:, 2]
        mask = w > 0
        assert np.max(np.abs(att_c[mask] - att_pl[mask]) / att_pl[mask]) <= 0.02

    def test_fig2_has_pole_marker(self, tmp_path):
        proc = run_cli("fig2", "--out", str(tmp_path))
        assert proc.returncode == 0, proc.stderr
        header = (tmp_path / "fig2_phasespeed.csv").read_text().splitlines()[0]
        assert "phase_speed_pole_omega=" in header
        pole = float(header.split("phase_speed_pole_omega=")[1].split()[0])
        assert 7.79e6 <= pole <= 8.11e6

    def test_fig3_band_norm_monotone(self, tmp_path):
        proc = run_cli("fig3", "--out", str(tmp_path))
        assert proc.returncode == 0, proc.stderr
        g = load_csv(tmp_path / "fig3_bandnorm.csv")[:, 1]
        assert np.all(np.diff(g) >= 0.0)
        dev = load_csv(tmp_path / "fig3_deviation.csv")
        assert dev.shape[0] == 501


class TestBoundsCommand:
    def test_report_contents(self, tmp_path):
        proc = run_cli("bounds", "--r-list", "1e-6,1", "--out", str(tmp_path))
        assert proc.returncode == 0, proc.stderr
        doc = json.loads((tmp_path / "bounds.json").read_text())
        assert doc["preset"]["name"] == "castor-oil"
        assert doc["envelope_constants"]["bound_decay_rate"] == pytest.approx(4.877e6, rel=2e-3)
        assert "bound_coefficient" in doc["envelope_constants"]
        assert doc["settings"]["quadrature_rtol"] == 1e-9
        by_r = {entry["r"]: entry for entry in doc["per_distance"]}
        assert by_r[1.0]["envelope"]["holds_lower"]
        assert by_r[1.0]["envelope"]["holds_upper"]
        report = by_r[1.0]["model_error_report"]
        assert 0.0125 <= report["bound"] <= 0.05
        assert by_r[1e-6]["truncation_error"] <= 1.0

    def test_empty_r_list_exits_2(self, tmp_path):
        proc = run_cli("bounds", "--r-list", ",", "--out", str(tmp_path))
        assert proc.returncode == 2
        assert not (tmp_path / "bounds.json").exists()


class TestPulseAndCausality:
    def test_pulse_writes_signal(self, tmp_path):
        proc = run_cli("pulse", "--omega-max", "200", "--samples", "16384",
                       "--center", "3", "--width", "0.5", "--out", str(tmp_path))
        assert proc.returncode == 0, proc.stderr
        data = load_csv(tmp_path / "pulse.csv")
        assert data.shape == (16384, 2)
        assert np.max(np.abs(data[:, 1])) > 0.0

    def test_pulse_band_violation_exits_2(self, tmp_path):
        proc = run_cli("pulse", "--omega-max", "2", "--samples", "64",
                       "--width", "0.5", "--out", str(tmp_path))
        assert proc.returncode == 2

    def test_causality_report(self, tmp_path):
        proc = run_cli("causality", "--samples", "131072", "--out", str(tmp_path))
        assert proc.returncode == 0, proc.stderr
        doc = json.loads((tmp_path / "causality.json").read_text())
        assert doc["arrival"] == pytest.approx(1.0 / 0.15, rel=1e-12)
        for key in ("causal", "truncated_powerlaw"):
            entry = doc[key]
            assert 0.0 <= entry["guarded_fraction"] <= entry["raw_fraction"] <= 1.0
        assert doc["causal"]["guarded_fraction"] < 1e-6
