import dataclasses
import math

import numpy as np
import pytest

from owcrelay import (FsoChannelParams, ParameterError, RfChannelParams,
                      db_to_linear, derive_vlc, linear_to_db, load_scenario,
                      read_config)
from conftest import make_scenario, make_vlc

# high-precision references evaluated with a 50-digit arbitrary precision run
IM_CONST_REF = 3.4377467707849392526e-4
GAMMA_MIN_REF = 2.2515818587186171432
GAMMA_MAX_REF = 576.40495583196598866
GAIN_R1_REF = 3.4377467707849392526e-6


def test_db_to_linear_basic():
    assert db_to_linear(0.0) == 1.0
    assert db_to_linear(10.0) == pytest.approx(10.0, rel=1e-14)
    assert db_to_linear(25.0) == pytest.approx(316.2277660168379332, rel=1e-13)


def test_db_linear_round_trip():
    db = np.linspace(-100.0, 100.0, 2001)
    back = linear_to_db(db_to_linear(db))
    assert np.all(np.abs(back - db) <= 1e-12 * np.maximum(np.abs(db), 1.0))


def test_linear_to_db_rejects_nonpositive():
    for bad in (0.0, -3.0, float("nan")):
        with pytest.raises(ValueError):
            linear_to_db(bad)


def test_lambertian_order_60_degrees():
    d = derive_vlc(make_vlc())
    assert d.m_l == pytest.approx(1.0, abs=1e-14)  # -ln2/ln(cos 60deg) = 1
    assert d.r_e == pytest.approx(3.0 * math.sqrt(3.0), rel=1e-14)


def test_derived_vlc_reference_values(base_vlc):
    d = derive_vlc(base_vlc)
    assert d.im_const == pytest.approx(IM_CONST_REF, rel=1e-13)
    assert d.mu_vlc == pytest.approx(3.2e13, rel=1e-13)
    assert d.gamma_min == pytest.approx(GAMMA_MIN_REF, rel=1e-13)
    assert d.gamma_max == pytest.approx(GAMMA_MAX_REF, rel=1e-13)
    assert d.gamma_min < d.gamma_max


def test_power_scaling_is_exact(base_vlc):
    base = derive_vlc(base_vlc)
    doubled = derive_vlc(dataclasses.replace(base_vlc, pt=2.0 * base_vlc.pt))
    # gamma scales with pt^2; doubling pt must scale both endpoints by
    # exactly 4 in floating point (pure power-of-two rescaling)
    assert doubled.gamma_min == 4.0 * base.gamma_min
    assert doubled.gamma_max == 4.0 * base.gamma_max


@pytest.mark.parametrize("field", ["L", "area", "resp", "filter_gain", "ref_index",
                                   "eta", "n0", "bandwidth", "pt"])
@pytest.mark.parametrize("bad", [0.0, -1.0, float("nan")])
def test_rejects_nonpositive_physical_parameters(field, bad):
    with pytest.raises(ParameterError):
        make_vlc(**{field: bad})


def test_rejects_bad_angles_and_led_count():
    with pytest.raises(ParameterError):
        make_vlc(phi_half=0.0)
    with pytest.raises(ParameterError):
        make_vlc(phi_half=math.pi / 2)
    with pytest.raises(ParameterError):
        make_vlc(psi_fov=math.pi / 2 + 0.01)
    with pytest.raises(ParameterError):
        make_vlc(n_leds=0)
    with pytest.raises(ParameterError) as err:
        make_vlc(phi_half=math.radians(70.0), psi_fov=math.radians(60.0))
    assert "psi_fov" in str(err.value)
    # equality is the widest legal cell: the edge user sits exactly on the FOV
    make_vlc(phi_half=math.radians(60.0), psi_fov=math.radians(60.0))


def test_rf_fso_scenario_validation():
    with pytest.raises(ParameterError):
        RfChannelParams(mu1=0.0)
    with pytest.raises(ParameterError):
        FsoChannelParams.from_rytov(mu2=-1.0, rytov_var=0.25)
    with pytest.raises(ParameterError):
        FsoChannelParams.from_rytov(mu2=10.0, rytov_var=0.0)
    # alpha/beta must recompute from the stored Rytov variance
    good = FsoChannelParams.from_rytov(mu2=10.0, rytov_var=2.0)
    with pytest.raises(ParameterError):
        FsoChannelParams(mu2=10.0, rytov_var=2.0, alpha=good.alpha * 1.01,
                         beta=good.beta)
    with pytest.raises(ValueError):
        make_scenario(gamma_th_db=float("nan"))
    scenario = make_scenario()
    with pytest.raises(ParameterError):
        dataclasses.replace(scenario, gamma_th=0.0)


def test_parameter_error_carries_dotted_key():
    with pytest.raises(ParameterError) as err:
        make_vlc(pt=0.0)
    assert "vlc.pt_w" in str(err.value)


CONFIG_TEXT = """
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
samples = 1000
seed = 7
"""


def test_config_file_round_trip(tmp_path):
    path = tmp_path / "scenario.ini"
    path.write_text(CONFIG_TEXT)
    scenario, run, cfg = load_scenario(str(path))
    assert scenario.rf.mu1 == pytest.approx(db_to_linear(25.0))
    assert scenario.fso.rytov_var == 2.0
    assert scenario.vlc.phi_half == pytest.approx(math.radians(60.0))
    assert scenario.vlc.n_leds == 8
    assert scenario.gamma_th == pytest.approx(10.0)
    assert run.samples == 1000 and run.seed == 7
    assert cfg["vlc"]["pt_w"] == 1.0


def test_config_file_errors(tmp_path):
    bad = tmp_path / "bad.ini"

    bad.write_text(CONFIG_TEXT.replace("pt_w = 1.0", "pt_w = 0.0"))
    with pytest.raises(ParameterError) as err:
        load_scenario(str(bad))
    assert "vlc.pt_w" in str(err.value)

    bad.write_text(CONFIG_TEXT.replace("pt_w = 1.0", "pt_w = oops"))
    with pytest.raises(ParameterError):
        read_config(str(bad))

    bad.write_text(CONFIG_TEXT.replace("pt_w = 1.0", "pt_w = 1.0\nmystery = 3"))
    with pytest.raises(ParameterError) as err:
        read_config(str(bad))
    assert "mystery" in str(err.value)

    bad.write_text(CONFIG_TEXT.replace("mu1_db = 25.0", ""))
    with pytest.raises(ParameterError) as err:
        read_config(str(bad))
    assert "rf.mu1_db" in str(err.value)

    with pytest.raises(ParameterError):
        read_config(str(tmp_path / "missing.ini"))
