"""Command-line interface: exit codes, reports, sweeps, oracle."""

import csv
import json

import numpy as np
import pytest

import telefid as tf
from telefid.cli import main


def _write(tmp_path, name, rho):
    path = tmp_path / name
    tf.write_state_file(path, rho)
    return str(path)


def test_analyze_werner_text(tmp_path, capsys):
    path = _write(tmp_path, "w.json", tf.make_werner(0.8))
    assert main(["analyze", path]) == 0
    out = capsys.readouterr().out
    assert "max fidelity" in out
    assert "0.9" in out


def test_analyze_werner_json(tmp_path, capsys):
    path = _write(tmp_path, "w.json", tf.make_werner(0.8))
    assert main(["analyze", path, "--json"]) == 0
    rep = json.loads(capsys.readouterr().out)
    assert rep["schema_version"] == 1
    assert rep["metrics"]["max_fidelity"] == pytest.approx(0.9, abs=1e-9)
    assert rep["metrics"]["fidelity_deviation"] == pytest.approx(0.0, abs=1e-9)
    assert rep["metrics"]["useful"] and rep["metrics"]["universal"]
    assert rep["properties"]["concurrence"] == pytest.approx(0.7, abs=1e-9)
    assert rep["canonical"]["det_class"] == "negative"
    assert rep["saturation"]["saturates"] is True
    assert rep["bounds"]["f_within_negativity_bound"]


def test_analyze_maximally_mixed(tmp_path, capsys):
    path = _write(tmp_path, "mm.json", np.eye(4) / 4.0)
    assert main(["analyze", path, "--json"]) == 0
    rep = json.loads(capsys.readouterr().out)
    assert rep["metrics"]["max_fidelity"] == pytest.approx(0.5, abs=1e-12)
    assert not rep["metrics"]["useful"]
    assert rep["saturation"] is None


def test_analyze_parse_errors(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert main(["analyze", str(bad)]) == 2
    assert main(["analyze", str(tmp_path / "missing.json")]) == 2
    both = tmp_path / "both.json"
    both.write_text(json.dumps({"matrix": [], "hs": {}}))
    assert main(["analyze", str(both)]) == 2


def test_analyze_invalid_state(tmp_path, capsys):
    doc = tf.state_to_json(np.diag([0.6, 0.6, -0.1, -0.1]).astype(complex))
    path = tmp_path / "neg.json"
    path.write_text(json.dumps(doc))
    assert main(["analyze", str(path)]) == 3
    err = capsys.readouterr().err
    assert "-0.1" in err  # worst-eigenvalue diagnostic


def test_construct_and_reanalyze(tmp_path, capsys):
    out = str(tmp_path / "L05.json")
    assert main(["construct", "--kind", "L", "--value", "0.5", "--out", out]) == 0
    capsys.readouterr()
    assert main(["analyze", out, "--json"]) == 0
    rep = json.loads(capsys.readouterr().out)
    expect_f = 0.5 * (1 + np.sqrt(0.5))
    assert rep["metrics"]["max_fidelity"] == pytest.approx(expect_f, abs=1e-9)
    assert rep["properties"]["linear_entropy"] == pytest.approx(0.5, abs=1e-9)


def test_construct_out_of_range(tmp_path, capsys):
    out = str(tmp_path / "x.json")
    assert main(["construct", "--kind", "L", "--value", "0.9", "--out", out]) == 4
    assert "8/9" in capsys.readouterr().err


def test_construct_concurrence_with_r(tmp_path, capsys):
    out = str(tmp_path / "c.json")
    rc = main(["construct", "--kind", "C", "--value", "0.5", "--r", "0.1,0,0", "--out", out])
    assert rc == 0
    rho = tf.validate(tf.read_state_file(out))
    f = tf.hs_decompose(rho)
    assert np.allclose(f.S, -f.R, atol=1e-12)
    assert tf.concurrence(rho) == pytest.approx(0.5, abs=1e-9)
    # --r is rejected for the other kinds
    assert main(["construct", "--kind", "L", "--value", "0.5", "--r", "0.1,0,0", "--out", out]) == 2


def test_verify_exit_codes(tmp_path, capsys):
    w = _write(tmp_path, "w.json", tf.make_werner(0.8))
    assert main(["verify", w, "--kind", "C", "--value", "0.7"]) == 0
    capsys.readouterr()

    schmidt = _write(tmp_path, "s.json", tf.make_pure_schmidt(0.9))
    c = 2 * 0.9 * np.sqrt(1 - 0.81)
    assert main(["verify", schmidt, "--kind", "C", "--value", str(c)]) == 1
    witness = json.loads(capsys.readouterr().out)
    assert witness["failed"] == "deviation nonzero"

    assert main(["verify", w, "--kind", "C", "--value", "0.5"]) == 5
    assert main(["verify", w, "--kind", "L", "--value", "0.95"]) == 4


def test_construct_verify_round_trip_50_per_kind(tmp_path, capsys):
    grids = {
        "L": np.linspace(0.0, 8 / 9 - 1e-3, 50),
        "B": np.linspace(2.0 + 1e-3, 2 * np.sqrt(2), 50),
        "C": np.linspace(0.02, 1.0, 50),
    }
    out = str(tmp_path / "rt.json")
    for kind, values in grids.items():
        for v in values:
            assert main(["construct", "--kind", kind, "--value", str(v), "--out", out]) == 0
            assert main(["verify", out, "--kind", kind, "--value", str(v)]) == 0
    capsys.readouterr()


def test_sweep_linear_entropy(tmp_path, capsys):
    out = str(tmp_path / "sweep_l.csv")
    rc = main(["sweep", "--kind", "L", "--from", "0", "--to", "0.88", "--steps", "40", "--out", out])
    assert rc == 0
    with open(out, newline="") as fh:
        rows = list(csv.DictReader(fh))
    assert len(rows) == 40
    f_vals = [float(r["f_closed_form"]) for r in rows]
    assert all(a > b for a, b in zip(f_vals, f_vals[1:]))  # monotone decreasing
    assert f_vals[-1] > 2 / 3
    for r in rows:
        assert abs(float(r["f_closed_form"]) - float(r["f_oracle"])) < 1e-9
        assert float(r["delta_oracle"]) < 1e-9


def test_sweep_concurrence_curve(tmp_path):
    out = str(tmp_path / "sweep_c.csv")
    assert main(["sweep", "--kind", "C", "--from", "0.1", "--to", "1.0", "--steps", "19", "--out", out]) == 0
    with open(out, newline="") as fh:
        rows = list(csv.DictReader(fh))
    for r in rows:
        v = float(r["value"])
        assert float(r["f_closed_form"]) == pytest.approx((2 + v) / 3, abs=1e-9)
        assert abs(float(r["f_closed_form"]) - float(r["f_oracle"])) < 1e-9


def test_sweep_chsh_endpoints(tmp_path):
    out = str(tmp_path / "sweep_b.csv")
    assert main(["sweep", "--kind", "B", "--from", "2.01", "--to", "2.8284271247",
                 "--steps", "10", "--out", out]) == 0
    with open(out, newline="") as fh:
        rows = list(csv.DictReader(fh))
    assert float(rows[0]["f_closed_form"]) == pytest.approx(
        0.5 * (1 + 2.01 / (2 * np.sqrt(2))), abs=1e-9
    )
    assert float(rows[-1]["f_closed_form"]) == pytest.approx(1.0, abs=1e-6)


def test_sweep_range_violation(tmp_path):
    out = str(tmp_path / "x.csv")
    assert main(["sweep", "--kind", "L", "--from", "0", "--to", "0.95", "--steps", "5", "--out", out]) == 4


def test_sweep_csv_is_crlf(tmp_path):
    out = tmp_path / "s.csv"
    assert main(["sweep", "--kind", "C", "--from", "0.2", "--to", "0.8", "--steps", "4", "--out", str(out)]) == 0
    raw = out.read_bytes()
    assert b"\r\n" in raw


def test_oracle_command(tmp_path, capsys):
    w = _write(tmp_path, "w.json", tf.make_werner(0.5))
    assert main(["oracle", w]) == 0
    out = capsys.readouterr().out
    assert "design-exact" in out
    d_f = float(out.split("|dF| = ")[1].split()[0])
    assert d_f < 1e-12

    bell = _write(tmp_path, "b.json", tf.make_bell(1))
    assert main(["oracle", bell, "--mc", "2000", "--seed", "3"]) == 0
    out = capsys.readouterr().out
    assert "monte-carlo" in out


def test_twelve_significant_digits(tmp_path, capsys):
    path = _write(tmp_path, "w.json", tf.make_werner(1 / 3))
    assert main(["analyze", path, "--json"]) == 0
    rep = json.loads(capsys.readouterr().out)
    # 12 significant digits of (1 + 1/3)/2 = 0.666666666667
    assert rep["metrics"]["max_fidelity"] == pytest.approx(2 / 3, abs=1e-11)
