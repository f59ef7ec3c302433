import json

import pytest

import owcrelay.relay
from owcrelay import (ParameterError, RunSettings, SweepSpec, outage_probability,
                      read_config, rows_to_csv, run_settings_from_config,
                      run_sweep, run_validate, scenario_from_config,
                      sweep_spec_from_config)
from owcrelay.cli import main

BASE = """
[rf]
mu1_db = 25.0

[fso]
mu2_db = 25.0
rytov_var = 2.0

[vlc]
L_m = 3.0
phi_half_deg = 60.0
psi_fov_deg = 60.0
area_m2 = 1e-4
responsivity = 0.4
filter_gain = 1.0
ref_index = 1.5
eta = 0.8
n0_w_per_hz = 1e-21
bandwidth_hz = 20e6
pt_w = 1.0
n_leds = 8

[run]
gamma_th_db = 10.0
samples = 0
seed = 11
"""

SWEEP = BASE + """
[sweep]
axis = mu_db
start_db = 0.0
stop_db = 40.0
step_db = 10.0
rytov_var = 0.25, 2
fso_only_baseline = true
"""


def write_cfg(tmp_path, text, name="cfg.ini"):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


def test_sweep_spec_validation():
    with pytest.raises(ParameterError):
        SweepSpec(start_db=0.0, stop_db=10.0, step_db=0.0)
    with pytest.raises(ParameterError):
        SweepSpec(start_db=10.0, stop_db=0.0, step_db=1.0)
    with pytest.raises(ParameterError):
        SweepSpec(start_db=0.0, stop_db=10.0, step_db=1.0, axis="pt_w")
    spec = SweepSpec(start_db=0.0, stop_db=60.0, step_db=2.0)
    assert spec.grid_db()[0] == 0.0 and spec.grid_db()[-1] == 60.0
    assert len(spec.grid_db()) == 31


def test_variant_order_is_deterministic():
    spec = SweepSpec(start_db=0.0, stop_db=10.0, step_db=5.0,
                     rytov_list=(0.25, 2.0), n_leds_list=(6, 8))
    variants = spec.variants()
    assert variants == [
        {"rytov_var": 0.25, "n_leds": 6}, {"rytov_var": 0.25, "n_leds": 8},
        {"rytov_var": 2.0, "n_leds": 6}, {"rytov_var": 2.0, "n_leds": 8},
    ]
    assert SweepSpec(start_db=0.0, stop_db=10.0, step_db=5.0).variants() == [{}]


def test_run_sweep_rows_fresh_and_ordered(tmp_path):
    cfg = read_config(write_cfg(tmp_path, SWEEP))
    spec = sweep_spec_from_config(cfg)
    run = run_settings_from_config(cfg)
    rows = run_sweep(cfg, run, spec)
    assert len(rows) == 2 * 5  # 2 variants x 5 axis points
    assert [r["rytov_var"] for r in rows] == [0.25] * 5 + [2.0] * 5
    assert [r["mu1_db"] for r in rows[:5]] == [0.0, 10.0, 20.0, 30.0, 40.0]
    for row in rows:
        assert row["mu1_db"] == row["mu2_db"]  # locked axis
        cfg_row = {k: dict(v) for k, v in cfg.items() if k != "sweep"}
        cfg_row["rf"]["mu1_db"] = row["mu1_db"]
        cfg_row["fso"]["mu2_db"] = row["mu2_db"]
        cfg_row["fso"]["rytov_var"] = row["rytov_var"]
        assert row["pout_analytic"] == outage_probability(scenario_from_config(cfg_row))
        assert row["pout_fso_only"] is not None
        assert row["pout_analytic"] <= row["pout_fso_only"] + 1e-15
        assert row["pout_mc"] is None and row["mc_samples"] is None


def test_csv_schema_and_optional_fields(tmp_path):
    cfg = read_config(write_cfg(tmp_path, SWEEP.replace("fso_only_baseline = true",
                                                        "fso_only_baseline = false")))
    rows = run_sweep(cfg, run_settings_from_config(cfg), sweep_spec_from_config(cfg))
    text = rows_to_csv(rows)
    lines = text.strip().split("\n")
    assert lines[0] == ("mu1_db,mu2_db,rytov_var,n_leds,pt_w,L_m,gamma_th_db,"
                        "pout_analytic,pout_fso_only,pout_floor,pout_mc,mc_ci95,"
                        "mc_samples")
    first = lines[1].split(",")
    assert first[8] == "" and first[10] == "" and first[12] == ""  # optionals empty
    assert len(lines) == 1 + len(rows)


def test_axis_variants_mu1_only(tmp_path):
    text = SWEEP.replace("axis = mu_db", "axis = mu1_db")
    cfg = read_config(write_cfg(tmp_path, text))
    rows = run_sweep(cfg, run_settings_from_config(cfg), sweep_spec_from_config(cfg))
    assert all(r["mu2_db"] == 25.0 for r in rows)
    assert [r["mu1_db"] for r in rows[:5]] == [0.0, 10.0, 20.0, 30.0, 40.0]


def test_sweep_with_mc_is_deterministic_across_workers(tmp_path):
    text = SWEEP.replace("samples = 0", "samples = 20000")
    outs = []
    for workers in (1, 2, 8):
        cfg_path = write_cfg(tmp_path, text, name=f"cfg_{workers}.ini")
        out_path = tmp_path / f"out_{workers}.csv"
        code = main(["sweep", "--config", cfg_path, "--out", str(out_path),
                     "--workers", str(workers)])
        assert code == 0
        outs.append(out_path.read_bytes())
    assert outs[0] == outs[1] == outs[2]
    # a repeat run reproduces the same bytes as well
    rerun = tmp_path / "rerun.csv"
    assert main(["sweep", "--config", write_cfg(tmp_path, text, name="rr.ini"),
                 "--out", str(rerun)]) == 0
    assert rerun.read_bytes() == outs[0]


def test_cli_point_reports(tmp_path, capsys):
    cfg_path = write_cfg(tmp_path, BASE)
    assert main(["point", "--config", cfg_path]) == 0
    out = capsys.readouterr().out
    assert "pout_analytic" in out and "pout_floor" in out

    assert main(["point", "--config", cfg_path, "--format", "json",
                 "--samples", "5000"]) == 0
    report = json.loads(capsys.readouterr().out)
    assert 0.0 <= report["pout_analytic"] <= 1.0
    assert report["pout_floor"] <= report["pout_analytic"] + 1e-15
    assert report["mc_samples"] == 5000
    assert report["improvement_vs_fso_only"] >= 1.0

    assert main(["point", "--config", cfg_path, "--format", "csv"]) == 0
    lines = capsys.readouterr().out.strip().split("\n")
    assert len(lines) == 2 and lines[0].startswith("mu1_db,")


def test_cli_config_errors(tmp_path, capsys):
    bad = write_cfg(tmp_path, BASE.replace("pt_w = 1.0", "pt_w = 0.0"))
    assert main(["point", "--config", bad]) == 2
    assert "vlc.pt_w" in capsys.readouterr().err

    bad = write_cfg(tmp_path, BASE.replace("phi_half_deg = 60.0",
                                           "phi_half_deg = 75.0"))
    assert main(["point", "--config", bad]) == 2
    assert "psi_fov" in capsys.readouterr().err

    assert main(["sweep", "--config", write_cfg(tmp_path, BASE),
                 "--out", str(tmp_path / "x.csv")]) == 2  # no [sweep] section
    assert not (tmp_path / "x.csv").exists()  # nothing partial on failure

    assert main(["point", "--config", str(tmp_path / "nope.ini")]) == 2


def test_cli_validate_passes_and_fails(tmp_path, capsys, monkeypatch):
    cfg_path = write_cfg(tmp_path, BASE.replace("samples = 0", "samples = 100000"))
    assert main(["validate", "--config", cfg_path]) == 0
    out = capsys.readouterr().out
    assert "mc_3sigma_agreement" in out and "FAIL" not in out

    # negative control: corrupt the analytic value and the 3-sigma check trips
    real = owcrelay.relay.outage_probability
    monkeypatch.setattr(owcrelay.relay, "outage_probability",
                        lambda s: min(1.0, real(s) * 1.5 + 0.05))
    assert main(["validate", "--config", cfg_path]) == 3
    assert "FAIL" in capsys.readouterr().out


def test_validate_negative_control_via_hook(tmp_path):
    cfg = read_config(write_cfg(tmp_path, BASE))
    run = RunSettings(samples=50_000, seed=3)
    checks = run_validate(cfg, run, analytic_fn=lambda s: 0.77)
    by_name = {c["name"]: c for c in checks}
    assert not by_name["mc_3sigma_agreement"]["passed"]
    healthy = run_validate(cfg, run)
    assert all(c["passed"] for c in healthy)


def test_validate_threshold_below_support(tmp_path):
    # huge backhaul SNRs, threshold under the indoor support: both methods ~ 0
    text = BASE.replace("mu1_db = 25.0", "mu1_db = 80.0")
    text = text.replace("mu2_db = 25.0", "mu2_db = 80.0")
    text = text.replace("gamma_th_db = 10.0", "gamma_th_db = 1.0")
    cfg = read_config(write_cfg(tmp_path, text))
    checks = run_validate(cfg, RunSettings(samples=100_000, seed=5))
    assert all(c["passed"] for c in checks)


@pytest.mark.parametrize("name", ["sweep_turbulence.ini", "sweep_access_points.ini",
                                  "sweep_power_height.ini"])
def test_shipped_sweeps_reach_their_floor(name):
    # the packaged sweep configs top out at 60 dB, where the outage must sit
    # within 10x of the per-variant floor (the floor-visibility requirement)
    import pathlib
    cfg_path = pathlib.Path(__file__).resolve().parents[1] / "configs" / name
    cfg = read_config(str(cfg_path))
    run = RunSettings(samples=0)  # analytic only: keep it fast
    spec = sweep_spec_from_config(cfg)
    rows = run_sweep(cfg, run, spec)
    per_variant = len(spec.grid_db())
    assert spec.grid_db()[-1] >= 60.0
    for i in range(0, len(rows), per_variant):
        block = rows[i:i + per_variant]
        floors = {r["pout_floor"] for r in block}
        assert len(floors) == 1  # floor constant along the axis
        final = block[-1]
        assert final["pout_floor"] > 0.0
        assert final["pout_floor"] <= final["pout_analytic"] <= 10.0 * final["pout_floor"]


def test_shipped_point_config_runs(capsys):
    import pathlib
    cfg = pathlib.Path(__file__).resolve().parents[1] / "configs" / "baseline.ini"
    assert main(["point", "--config", str(cfg), "--samples", "20000"]) == 0
    out = capsys.readouterr().out
    assert "pout_analytic" in out and "pout_mc" in out


def test_json_artifact(tmp_path):
    cfg = read_config(write_cfg(tmp_path, SWEEP))
    cfg_path = write_cfg(tmp_path, SWEEP)
    out_path = tmp_path / "rows.json"
    assert main(["sweep", "--config", cfg_path, "--out", str(out_path),
                 "--format", "json"]) == 0
    rows = json.loads(out_path.read_text())
    spec = sweep_spec_from_config(cfg)
    assert len(rows) == len(spec.grid_db()) * 2
    assert set(rows[0]) == set(
        ("mu1_db", "mu2_db", "rytov_var", "n_leds", "pt_w", "L_m", "gamma_th_db",
         "pout_analytic", "pout_fso_only", "pout_floor", "pout_mc", "mc_ci95",
         "mc_samples"))
    assert rows[0]["pout_mc"] is None
