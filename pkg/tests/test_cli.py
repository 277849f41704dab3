"""Command-line interface tests (run in-process via cli.main)."""

import csv
import json

import numpy as np
import pytest

from kickedtop import cli
from kickedtop import tomography as tm


def run_csv(capsys, argv):
    assert cli.main(argv) == 0
    rows = list(csv.reader(capsys.readouterr().out.strip().splitlines()))
    header, body = rows[0], rows[1:]
    return header, [[float(x) if x else None for x in r] for r in body]


def test_evolve_staircase(capsys):
    header, rows = run_csv(capsys, [
        "evolve", "--two-j", "3", "--kappa0", "0.5",
        "--theta0", "0", "--phi0", "0", "--horizon", "20",
    ])
    assert header[:3] == ["n", "linear_entropy", "concurrence"]
    assert "analytic_entropy" in header
    s = [r[1] for r in rows]
    for n in range(1, 10):
        assert s[2 * n] == pytest.approx(s[2 * n - 1], abs=1e-9)


def test_evolve_period_six(capsys):
    _, rows = run_csv(capsys, [
        "evolve", "--two-j", "3", "--kappa0", str(1.5 * np.pi), "--horizon", "24",
        "--theta0", "0.7", "--phi0", "0.2",
    ])
    s = [r[1] for r in rows]
    for n in range(6, 25):
        assert s[n] == pytest.approx(s[n - 6], abs=1e-9)


def test_evolve_stable_island(capsys):
    _, rows = run_csv(capsys, [
        "evolve", "--two-j", "4", "--kappa0", "0.1", "--horizon", "10",
        "--theta0", str(np.pi / 2), "--phi0", str(-np.pi / 2),
    ])
    assert max(r[1] for r in rows) < 0.01


def test_evolve_analytic_columns_match_numeric(capsys):
    _, rows = run_csv(capsys, [
        "evolve", "--two-j", "4", "--kappa0", "2.5", "--horizon", "50",
        "--theta0", "0", "--phi0", "0",
    ])
    for r in rows:
        assert r[1] == pytest.approx(r[3], abs=1e-9)
        assert r[2] == pytest.approx(r[4], abs=1e-9)


def test_scan_matches_formulas(capsys):
    header, rows = run_csv(capsys, [
        "scan", "--two-j", "3", "--theta0", "0", "--phi0", "0", "--horizon", "1000",
        "--kappa0-min", "0.5", "--kappa0-max", str(1.5 * np.pi), "--kappa0-step", "0.5",
    ])
    assert header == ["kappa0", "avg_entropy_numeric", "avg_entropy_analytic",
                      "abs_difference"]
    for r in rows:
        assert r[3] < 2e-2


def test_scan_periodicity_in_kappa0(capsys):
    def avg(k0):
        _, rows = run_csv(capsys, [
            "scan", "--two-j", "3", "--horizon", "3000",
            "--kappa0-min", str(k0), "--kappa0-max", str(k0), "--kappa0-step", "1",
        ])
        return rows[0][1]

    assert avg(1.3) == pytest.approx(avg(1.3 + 3 * np.pi), abs=5e-3)


def test_scan_normalize(capsys):
    _, plain = run_csv(capsys, [
        "scan", "--two-j", "6", "--horizon", "200",
        "--kappa0-min", "4", "--kappa0-max", "4", "--kappa0-step", "1",
    ])
    _, normed = run_csv(capsys, [
        "scan", "--two-j", "6", "--horizon", "200", "--normalize",
        "--kappa0-min", "4", "--kappa0-max", "4", "--kappa0-step", "1",
    ])
    assert normed[0][1] == pytest.approx(plain[0][1] / (5.0 / 12.0), abs=1e-9)


def test_surface_range_and_theta0_row(capsys):
    header, rows = run_csv(capsys, [
        "surface", "--two-j", "3", "--n-theta", "13", "--n-phi", "25",
    ])
    assert header[-1] == "analytic_entropy"
    vals = [r[2] for r in rows]
    assert min(vals) >= 7 / 24 - 1e-9 and max(vals) <= 1 / 3 + 1e-9
    for r in rows:
        assert r[2] == pytest.approx(r[3], abs=1e-9)
    north = [r[2] for r in rows if r[0] == 0.0]
    assert max(north) - min(north) < 1e-12


def test_husimi_requires_out_dir():
    assert cli.main(["husimi", "--times", "0"]) == 1


def test_husimi_tunneled_concentration(tmp_path):
    n_star = 402061
    assert cli.main([
        "husimi", "--out", str(tmp_path), "--two-j", "4", "--kappa0", "0.1",
        "--times", "0", str(n_star), "--n-theta", "37", "--n-phi", "73",
    ]) == 0
    def peak(name):
        with open(tmp_path / name, newline="") as fh:
            rows = [[float(x) for x in r] for r in list(csv.reader(fh))[1:]]
        return max(rows, key=lambda r: r[2])
    t0 = peak("husimi_n0.csv")
    t1 = peak(f"husimi_n{n_star}.csv")
    # starts at (pi/2, -pi/2), tunnels to the antipodal island (pi/2, +pi/2)
    assert t0[0] == pytest.approx(np.pi / 2, abs=0.1)
    assert t0[1] == pytest.approx(-np.pi / 2, abs=0.1)
    assert t1[1] == pytest.approx(np.pi / 2, abs=0.1)
    assert t1[2] > 0.9


def test_tunnel_report(capsys):
    assert cli.main(["tunnel", "--kappa0", "0.1"]) == 0
    report = json.loads(capsys.readouterr().out)
    assert round(report["n_star_approx"]) == 402124
    assert report["scan_max"]["p_minus"] > 0.99
    assert report["overlaps"][2]["p_ghz"] > 0.99


def test_tunnel_gate(capsys):
    assert cli.main(["tunnel", "--two-j", "3"]) == 1
    assert "multiple" in capsys.readouterr().err


def test_classical_report(capsys):
    assert cli.main(["classical", "--kappa0", "7"]) == 0
    report = json.loads(capsys.readouterr().out)
    assert not report["fixed_point_stable"]
    assert report["lyapunov"] > 0.3
    assert report["stability_boundary"] == pytest.approx(2.0, abs=1e-5)


def test_rmt_report(capsys):
    assert cli.main(["rmt", "--num-qubits", "4", "--n-samples", "20000", "--seed", "3"]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["s_rmt"] == pytest.approx(0.375)
    assert abs(report["sample_mean"] - 0.375) < 3 * report["sample_sem"]


def test_rmt_determinism(capsys):
    args = ["rmt", "--num-qubits", "3", "--n-samples", "5000", "--seed", "12"]
    assert cli.main(args) == 0
    out1 = capsys.readouterr().out
    assert cli.main(args) == 0
    assert capsys.readouterr().out == out1


def test_tomo_roundtrip(tmp_path, capsys):
    rng = np.random.default_rng(0)
    g = rng.standard_normal((8, 2)) + 1j * rng.standard_normal((8, 2))
    rho = g @ g.conj().T
    rho /= np.trace(rho).real
    meas = tmp_path / "meas.csv"
    tm.write_records(meas, tm.simulate_records(rho, tm.DEFAULT_FIDELITIES))
    target = tmp_path / "target.json"
    target.write_text(json.dumps(
        {"rho_real": np.real(rho).tolist(), "rho_imag": np.imag(rho).tolist()}))
    assert cli.main(["tomo", str(meas), "--target", str(target)]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["fidelity_vs_target"] > 0.999


def test_tomo_bad_csv(tmp_path, capsys):
    bad = tmp_path / "bad.csv"
    bad.write_text("nope\n")
    assert cli.main(["tomo", str(bad)]) == 1


def test_config_file_with_flag_override(tmp_path, capsys):
    cfg = tmp_path / "run.toml"
    cfg.write_text("two_j = 3\nkappa0 = 0.5\nhorizon = 4\n")
    _, rows = run_csv(capsys, ["evolve", "--config", str(cfg), "--horizon", "6"])
    assert len(rows) == 7  # flag overrides the config horizon


def test_output_determinism(capsys):
    argv = ["scan", "--two-j", "4", "--horizon", "500", "--threads", "4",
            "--kappa0-min", "0.5", "--kappa0-max", "2.5", "--kappa0-step", "0.25"]
    assert cli.main(argv) == 0
    out1 = capsys.readouterr().out
    assert cli.main(argv) == 0
    assert capsys.readouterr().out == out1
