"""Scenario definition, parameter validation and dB/linear conversions.

All SNRs are stored on a linear scale internally; decibels appear only at
I/O boundaries (config files, CLI flags, CSV columns).  Geometry angles are
stored in radians; config files take degrees.
"""

from __future__ import annotations

import configparser
import math
from dataclasses import dataclass

from .fso import GammaGammaShape, shapes_from_rytov


class ParameterError(ValueError):
    """A scenario parameter violates its physical constraints.

    ``key`` is the dotted config path (e.g. ``"vlc.pt_w"``) so CLI error
    messages can point at the offending entry.
    """

    def __init__(self, key: str, message: str):
        self.key = key
        super().__init__(f"{key}: {message}")


def db_to_linear(x_db):
    """Convert a decibel value to a linear power ratio, 10**(x/10)."""
    x = _as_float_or_array(x_db)
    return 10.0 ** (x / 10.0)


def linear_to_db(x):
    """Convert a linear power ratio (> 0) to decibels, 10*log10(x)."""
    import numpy as np

    arr = np.asarray(x, dtype=float)
    if np.any(arr <= 0.0) or not np.all(np.isfinite(arr)):
        raise ValueError("linear_to_db requires a finite, strictly positive input")
    out = 10.0 * np.log10(arr)
    return float(out) if arr.ndim == 0 else out


def _as_float_or_array(x):
    import numpy as np

    arr = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise ValueError("expected a finite value")
    return float(arr) if arr.ndim == 0 else arr


def _require_positive(value: float, key: str) -> float:
    value = float(value)
    if not math.isfinite(value) or value <= 0.0:
        raise ParameterError(key, "must be a finite, strictly positive number")
    return value


@dataclass(frozen=True)
class RfChannelParams:
    """Rayleigh-faded radio link; the SNR is exponential with mean mu1."""

    mu1: float  # average SNR, linear

    def __post_init__(self):
        _require_positive(self.mu1, "rf.mu1")


@dataclass(frozen=True)
class FsoChannelParams:
    """Gamma-Gamma faded optical backhaul link.

    ``alpha``/``beta`` are the Gamma-Gamma shape parameters tied to the
    Rytov variance through the plane-wave closed forms; they are validated
    against a recomputation so the triple stays self-consistent.
    """

    mu2: float        # electrical SNR, linear
    rytov_var: float  # turbulence strength metric, sigma_R^2
    alpha: float
    beta: float

    def __post_init__(self):
        _require_positive(self.mu2, "fso.mu2")
        _require_positive(self.rytov_var, "fso.rytov_var")
        _require_positive(self.alpha, "fso.alpha")
        _require_positive(self.beta, "fso.beta")
        ref = shapes_from_rytov(self.rytov_var)
        ok = (math.isclose(self.alpha, ref.alpha, rel_tol=1e-9)
              and math.isclose(self.beta, ref.beta, rel_tol=1e-9))
        if not ok:
            raise ParameterError(
                "fso.alpha/beta",
                f"inconsistent with rytov_var={self.rytov_var!r} "
                f"(expected alpha={ref.alpha!r}, beta={ref.beta!r})")

    @classmethod
    def from_rytov(cls, mu2: float, rytov_var: float) -> "FsoChannelParams":
        _require_positive(rytov_var, "fso.rytov_var")
        s = shapes_from_rytov(rytov_var)
        return cls(mu2=mu2, rytov_var=rytov_var, alpha=s.alpha, beta=s.beta)

    @property
    def shape(self) -> GammaGammaShape:
        return GammaGammaShape(self.alpha, self.beta)


@dataclass(frozen=True)
class VlcGeometry:
    """Room/LED/photodetector geometry and electro-optics of the indoor cell."""

    L: float            # vertical LED-to-user-plane height, m
    phi_half: float     # LED semi-angle at half illuminance, rad
    psi_fov: float      # receiver field of view, rad
    area: float         # photodetector physical area, m^2
    resp: float         # photodetector responsivity, A/W
    filter_gain: float  # optical filter gain
    ref_index: float    # concentrator refractive index
    eta: float          # optical-to-electrical conversion efficiency
    n0: float           # noise spectral density, W/Hz
    bandwidth: float    # baseband modulation bandwidth, Hz
    pt: float           # transmitted optical power per LED, W
    n_leds: int         # number of VLC access points

    def __post_init__(self):
        _require_positive(self.L, "vlc.L_m")
        _require_positive(self.area, "vlc.area_m2")
        _require_positive(self.resp, "vlc.responsivity")
        _require_positive(self.filter_gain, "vlc.filter_gain")
        _require_positive(self.ref_index, "vlc.ref_index")
        _require_positive(self.eta, "vlc.eta")
        _require_positive(self.n0, "vlc.n0_w_per_hz")
        _require_positive(self.bandwidth, "vlc.bandwidth_hz")
        _require_positive(self.pt, "vlc.pt_w")
        if not (0.0 < self.phi_half < math.pi / 2):
            raise ParameterError("vlc.phi_half_deg", "semi-angle must lie in (0, 90) degrees")
        if not (0.0 < self.psi_fov <= math.pi / 2):
            raise ParameterError("vlc.psi_fov_deg", "field of view must lie in (0, 90] degrees")
        if self.phi_half > self.psi_fov:
            raise ParameterError(
                "vlc.phi_half_deg",
                "semi-angle exceeds vlc.psi_fov_deg (field of view); the cell edge "
                "would fall outside the concentrator's nonzero-gain cone")
        if int(self.n_leds) != self.n_leds or self.n_leds < 1:
            raise ParameterError("vlc.n_leds", "must be an integer >= 1")


@dataclass(frozen=True)
class DerivedVlc:
    """Quantities derived from VlcGeometry.

    ``im_const`` collects every gamma-independent factor of the line-of-sight
    channel gain, I(r) = im_const / (r^2 + L^2)^((m_l+3)/2).  The concentrator
    gain is the constant ref_index^2 / sin(psi_fov)^2 because phi_half <=
    psi_fov guarantees every in-cell user sits inside the field of view.

    The SNR support endpoints satisfy F(gamma_min) = 0 and F(gamma_max) = 1
    exactly: gamma_min uses exponent (m_l + 3) on (r_e^2 + L^2), i.e. the
    square of the minimum channel gain.  A variant with exponent (m_l + 3)/2
    sometimes seen in print drops that squaring and breaks the boundary
    condition.
    """

    m_l: float        # Lambertian order
    r_e: float        # cell footprint radius, m
    im_const: float   # gain constant, (channel gain) * m^(m_l+3)
    mu_vlc: float     # SNR scale pt^2 * eta^2 / (n0 * bandwidth)
    gamma_min: float  # SNR at the cell edge, linear
    gamma_max: float  # SNR directly under the LED, linear

    def __post_init__(self):
        if not self.gamma_min < self.gamma_max:
            raise ParameterError("vlc", "degenerate SNR support (gamma_min >= gamma_max)")


def derive_vlc(vlc: VlcGeometry) -> DerivedVlc:
    """Derive Lambertian order, cell radius, gain constant and SNR support."""
    m_l = -math.log(2.0) / math.log(math.cos(vlc.phi_half))
    r_e = vlc.L * math.sin(vlc.phi_half) / math.cos(vlc.phi_half)
    conc_gain = vlc.ref_index ** 2 / math.sin(vlc.psi_fov) ** 2
    im_const = (vlc.area * (m_l + 1.0) * vlc.resp * vlc.filter_gain * conc_gain
                * vlc.L ** (m_l + 1.0) / (2.0 * math.pi))
    mu_vlc = vlc.pt ** 2 * vlc.eta ** 2 / (vlc.n0 * vlc.bandwidth)
    gamma_min = mu_vlc * im_const ** 2 / (r_e ** 2 + vlc.L ** 2) ** (m_l + 3.0)
    gamma_max = mu_vlc * im_const ** 2 / vlc.L ** (2.0 * (m_l + 3.0))
    return DerivedVlc(m_l=m_l, r_e=r_e, im_const=im_const, mu_vlc=mu_vlc,
                      gamma_min=gamma_min, gamma_max=gamma_max)


@dataclass(frozen=True)
class LinkBudgetScenario:
    """One complete end-to-end configuration plus the outage threshold."""

    rf: RfChannelParams
    fso: FsoChannelParams
    vlc: VlcGeometry
    gamma_th: float  # outage threshold SNR, linear

    def __post_init__(self):
        _require_positive(self.gamma_th, "run.gamma_th_db")


@dataclass(frozen=True)
class RunSettings:
    """Operational knobs from the [run] section (MC size, seeding, threads)."""

    samples: int = 0       # 0 disables Monte Carlo columns
    seed: int = 20230917
    batch: int = 250_000
    workers: int = 1

    def __post_init__(self):
        if self.samples < 0:
            raise ParameterError("run.samples", "must be >= 0")
        if self.batch < 1:
            raise ParameterError("run.batch", "must be >= 1")
        if self.workers < 1:
            raise ParameterError("run.workers", "must be >= 1")


# Config file schema: section -> key -> (python type, required)
_SCHEMA = {
    "rf": {"mu1_db": (float, True)},
    "fso": {"mu2_db": (float, True), "rytov_var": (float, True)},
    "vlc": {
        "L_m": (float, True),
        "phi_half_deg": (float, True),
        "psi_fov_deg": (float, True),
        "area_m2": (float, True),
        "responsivity": (float, True),
        "filter_gain": (float, True),
        "ref_index": (float, True),
        "eta": (float, True),
        "n0_w_per_hz": (float, True),
        "bandwidth_hz": (float, True),
        "pt_w": (float, True),
        "n_leds": (int, True),
    },
    "run": {
        "gamma_th_db": (float, True),
        "samples": (int, False),
        "seed": (int, False),
        "batch": (int, False),
        "workers": (int, False),
    },
}

_SWEEP_KEYS = {
    "axis": (str, False),
    "start_db": (float, True),
    "stop_db": (float, True),
    "step_db": (float, True),
    "rytov_var": (list, False),
    "n_leds": (list, False),
    "pt_w": (list, False),
    "L_m": (list, False),
    "fso_only_baseline": (bool, False),
}


def _convert(raw: str, typ, key: str):
    try:
        if typ is float:
            val = float(raw)
            if not math.isfinite(val):
                raise ValueError
            return val
        if typ is int:
            return int(raw)
        if typ is bool:
            lowered = raw.strip().lower()
            if lowered in ("1", "true", "yes", "on"):
                return True
            if lowered in ("0", "false", "no", "off"):
                return False
            raise ValueError
        if typ is list:
            return [float(part) for part in raw.split(",") if part.strip()]
        return raw.strip()
    except ValueError:
        raise ParameterError(key, f"cannot parse {raw!r} as {typ.__name__}") from None


def read_config(path: str) -> dict:
    """Read and type-check a key=value config file with rf/fso/vlc/run sections.

    Returns a nested dict (plus a "sweep" entry when that section is present).
    Unknown sections or keys are rejected so typos surface immediately.
    """
    parser = configparser.ConfigParser(inline_comment_prefixes=("#", ";"))
    parser.optionxform = str  # keys are case-sensitive (L_m)
    try:
        with open(path, "r", encoding="utf-8") as handle:
            parser.read_file(handle)
    except OSError as exc:
        raise ParameterError(str(path), f"cannot read config file ({exc})") from exc
    except configparser.Error as exc:
        raise ParameterError(str(path), f"malformed config file ({exc})") from exc

    out: dict = {}
    for section in parser.sections():
        if section == "sweep":
            schema = _SWEEP_KEYS
        elif section in _SCHEMA:
            schema = _SCHEMA[section]
        else:
            raise ParameterError(section, "unknown config section")
        values = {}
        for key, raw in parser.items(section):
            if key not in schema:
                raise ParameterError(f"{section}.{key}", "unknown config key")
            values[key] = _convert(raw, schema[key][0], f"{section}.{key}")
        for key, (_, required) in schema.items():
            if required and key not in values:
                raise ParameterError(f"{section}.{key}", "missing required key")
        out[section] = values

    for section, schema in _SCHEMA.items():
        if section not in out:
            raise ParameterError(section, "missing required config section")
    return out


def scenario_from_config(cfg: dict) -> LinkBudgetScenario:
    rf = RfChannelParams(mu1=db_to_linear(cfg["rf"]["mu1_db"]))
    fso = FsoChannelParams.from_rytov(
        mu2=db_to_linear(cfg["fso"]["mu2_db"]),
        rytov_var=cfg["fso"]["rytov_var"])
    v = cfg["vlc"]
    vlc = VlcGeometry(
        L=v["L_m"],
        phi_half=math.radians(v["phi_half_deg"]),
        psi_fov=math.radians(v["psi_fov_deg"]),
        area=v["area_m2"],
        resp=v["responsivity"],
        filter_gain=v["filter_gain"],
        ref_index=v["ref_index"],
        eta=v["eta"],
        n0=v["n0_w_per_hz"],
        bandwidth=v["bandwidth_hz"],
        pt=v["pt_w"],
        n_leds=int(v["n_leds"]),
    )
    return LinkBudgetScenario(rf=rf, fso=fso, vlc=vlc,
                              gamma_th=db_to_linear(cfg["run"]["gamma_th_db"]))


def run_settings_from_config(cfg: dict) -> RunSettings:
    run = cfg.get("run", {})
    return RunSettings(
        samples=int(run.get("samples", 0)),
        seed=int(run.get("seed", RunSettings.seed)),
        batch=int(run.get("batch", RunSettings.batch)),
        workers=int(run.get("workers", RunSettings.workers)),
    )


def load_scenario(path: str):
    """Load (scenario, run settings, raw config dict) from a config file."""
    cfg = read_config(path)
    return scenario_from_config(cfg), run_settings_from_config(cfg), cfg
