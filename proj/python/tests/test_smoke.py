import os
import subprocess
from pathlib import Path

import numpy as np
import pytest

import adpasmc

ROOT = Path(__file__).resolve().parents[2]
SCENARIOS = ROOT / "scenarios"


def test_column_schema():
    cols = adpasmc.columns()
    assert len(cols) == 65
    assert cols[0] == "t"
    assert len(set(cols)) == len(cols)
    assert adpasmc.siso_columns() == ["t", "x", "u", "d", "lv", "rv", "e_v_bar", "phi_v3", "zv"]


def test_short_run():
    rec, summary, config = adpasmc.run(str(SCENARIOS / "paper_default.cfg"), ["duration=2"], decimate=10)
    assert rec.shape == (200, 65)
    assert summary["status"] == "ok"
    assert config["duration"] == "2"
    t = rec[:, 0]
    assert np.all(np.diff(t) > 0)
    assert np.isfinite(rec).all()


def test_run_is_deterministic():
    a = adpasmc.run(str(SCENARIOS / "paper_default.cfg"), ["duration=0.5"])
    b = adpasmc.run(str(SCENARIOS / "paper_default.cfg"), ["duration=0.5"])
    assert np.array_equal(a[0], b[0])
    assert a[1] == b[1]


def test_config_errors():
    with pytest.raises(adpasmc.ConfigError, match="kappa0"):
        adpasmc.describe_scenario(str(SCENARIOS / "paper_default.cfg"), ["smc_attitude.kappa0=1.5"])
    with pytest.raises(ValueError, match="missing.cfg"):
        adpasmc.run("missing.cfg")


def test_siso_demo():
    rec, summary, _ = adpasmc.siso_demo()
    assert rec.shape == (30000, 9)
    assert float(summary["max_lv"]) < 50


def test_selftest():
    assert all(passed for _, passed, _, _ in adpasmc.selftest())


def test_schema_round_trip(tmp_path):
    rec, _, _ = adpasmc.run(str(SCENARIOS / "paper_default.cfg"), ["duration=0.1"])
    path = tmp_path / "run.csv"
    np.savetxt(path, rec, delimiter=",", header=",".join(adpasmc.columns()), comments="", fmt="%.17g")
    data = adpasmc.read_csv(path)
    assert list(data) == adpasmc.columns()
    assert np.array_equal(data["theta"], rec[:, adpasmc.columns().index("theta")])


def test_schema_rejects_truncated(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text(",".join(adpasmc.columns()) + "\n" + ",".join(["0"] * 65) + "\n0.001,1,2\n")
    with pytest.raises(adpasmc.SchemaError, match="3 fields"):
        adpasmc.read_csv(path)
    path.write_text("t,x\n0,1\n")
    with pytest.raises(adpasmc.SchemaError, match="header"):
        adpasmc.read_csv(path)


@pytest.mark.skipif("ADPASMC_CLI" not in os.environ, reason="CLI path not provided")
def test_cli_csv_matches_schema(tmp_path):
    subprocess.run(
        [os.environ["ADPASMC_CLI"], "run", str(SCENARIOS / "paper_default.cfg"),
         "--set", "duration=1", "--out", str(tmp_path)],
        check=True, capture_output=True,
    )
    data = adpasmc.read_csv(tmp_path / "paper_default.csv")
    assert len(data["t"]) == 1000
    siso = subprocess.run(
        [os.environ["ADPASMC_CLI"], "siso-demo", "--out", str(tmp_path), "--decimate", "10"],
        check=True, capture_output=True,
    )
    assert siso.returncode == 0
    assert len(adpasmc.read_csv(tmp_path / "siso_demo.csv")["x"]) == 3000
