"""Parameter sweeps, single-point reports and analytic-vs-MC validation.

Sweeps walk the backhaul SNR axis (both link SNRs locked together by
default, since that is how the outage curves are normally presented) for a
cartesian product of variant overrides.  Every row is a fresh library
evaluation of the effective scenario; Monte Carlo columns are filled only
when a sample count is configured.  Output is assembled fully in memory and
written in one step, so a failing run never leaves a partial artifact.
"""

from __future__ import annotations

import copy
import io
import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import relay
from .config import (ParameterError, RunSettings, derive_vlc,
                     scenario_from_config)
from .fso import fso_snr_cdf
from .mc import McConfig, estimate_outage
from .rf import rf_snr_cdf
from .vlc import vlc_best_of_n_cdf, vlc_snr_cdf

CSV_COLUMNS = (
    "mu1_db", "mu2_db", "rytov_var", "n_leds", "pt_w", "L_m", "gamma_th_db",
    "pout_analytic", "pout_fso_only", "pout_floor", "pout_mc", "mc_ci95",
    "mc_samples",
)

_AXES = ("mu_db", "mu1_db", "mu2_db")


@dataclass(frozen=True)
class SweepSpec:
    """One swept dB axis plus variant override lists (cartesian product)."""

    start_db: float
    stop_db: float
    step_db: float
    axis: str = "mu_db"  # mu_db locks mu1 = mu2; mu1_db / mu2_db move one link
    rytov_list: tuple = ()
    n_leds_list: tuple = ()
    pt_list: tuple = ()
    l_list: tuple = ()
    fso_only_baseline: bool = False

    def __post_init__(self):
        if self.axis not in _AXES:
            raise ParameterError("sweep.axis", f"must be one of {_AXES}")
        if self.step_db <= 0.0:
            raise ParameterError("sweep.step_db", "must be > 0")
        if self.stop_db < self.start_db:
            raise ParameterError("sweep.stop_db", "must be >= sweep.start_db")

    def grid_db(self) -> np.ndarray:
        count = int(math.floor((self.stop_db - self.start_db) / self.step_db + 1e-9)) + 1
        return self.start_db + self.step_db * np.arange(count)

    def variants(self) -> list[dict]:
        """Override dicts in deterministic order: rytov, n_leds, pt, L outermost-first."""
        out = [{}]
        for key, values in (("rytov_var", self.rytov_list),
                            ("n_leds", self.n_leds_list),
                            ("pt_w", self.pt_list),
                            ("L_m", self.l_list)):
            if not values:
                continue
            out = [dict(base, **{key: v}) for base in out for v in values]
        return out


def sweep_spec_from_config(cfg: dict) -> SweepSpec | None:
    section = cfg.get("sweep")
    if section is None:
        return None
    return SweepSpec(
        start_db=section["start_db"],
        stop_db=section["stop_db"],
        step_db=section["step_db"],
        axis=section.get("axis", "mu_db"),
        rytov_list=tuple(section.get("rytov_var", ())),
        n_leds_list=tuple(int(n) for n in section.get("n_leds", ())),
        pt_list=tuple(section.get("pt_w", ())),
        l_list=tuple(section.get("L_m", ())),
        fso_only_baseline=bool(section.get("fso_only_baseline", False)),
    )


def _apply_overrides(cfg: dict, overrides: dict) -> dict:
    eff = copy.deepcopy({k: dict(v) for k, v in cfg.items() if k != "sweep"})
    for key, value in overrides.items():
        if key == "rytov_var":
            eff["fso"]["rytov_var"] = value
        elif key == "n_leds":
            eff["vlc"]["n_leds"] = int(value)
        elif key == "pt_w":
            eff["vlc"]["pt_w"] = value
        elif key == "L_m":
            eff["vlc"]["L_m"] = value
        else:
            raise ParameterError(f"sweep.{key}", "unsupported override")
    return eff


def _evaluate_row(cfg_eff: dict, mu1_db: float, mu2_db: float, run: RunSettings,
                  row_seed: int, baseline: bool) -> dict:
    cfg_eff = copy.deepcopy(cfg_eff)
    cfg_eff["rf"]["mu1_db"] = mu1_db
    cfg_eff["fso"]["mu2_db"] = mu2_db
    scenario = scenario_from_config(cfg_eff)
    row = {
        "mu1_db": mu1_db,
        "mu2_db": mu2_db,
        "rytov_var": cfg_eff["fso"]["rytov_var"],
        "n_leds": int(cfg_eff["vlc"]["n_leds"]),
        "pt_w": cfg_eff["vlc"]["pt_w"],
        "L_m": cfg_eff["vlc"]["L_m"],
        "gamma_th_db": cfg_eff["run"]["gamma_th_db"],
        "pout_analytic": relay.outage_probability(scenario),
        "pout_fso_only": relay.fso_only_outage(scenario) if baseline else None,
        "pout_floor": relay.outage_floor(scenario),
        "pout_mc": None,
        "mc_ci95": None,
        "mc_samples": None,
    }
    if run.samples > 0:
        est = estimate_outage(scenario, McConfig(samples=run.samples, seed=row_seed,
                                                 batch=run.batch, workers=1))
        row["pout_mc"] = est.p_hat
        row["mc_ci95"] = est.half_width_95
        row["mc_samples"] = est.n
    return row


def run_sweep(cfg: dict, run: RunSettings, spec: SweepSpec) -> list[dict]:
    """Evaluate the sweep grid: variants outer, axis points inner.

    Row i uses Monte Carlo seed ``run.seed + i`` (its own substream family),
    so results do not depend on how rows are scheduled across workers.
    """
    grid = spec.grid_db()
    jobs = []
    for overrides in spec.variants():
        cfg_eff = _apply_overrides(cfg, overrides)
        for axis_db in grid:
            mu1_db = cfg_eff["rf"]["mu1_db"] if spec.axis == "mu2_db" else float(axis_db)
            mu2_db = cfg_eff["fso"]["mu2_db"] if spec.axis == "mu1_db" else float(axis_db)
            jobs.append((cfg_eff, mu1_db, mu2_db))

    def evaluate(i: int) -> dict:
        cfg_eff, mu1_db, mu2_db = jobs[i]
        return _evaluate_row(cfg_eff, mu1_db, mu2_db, run, run.seed + i,
                             spec.fso_only_baseline)

    if run.workers == 1:
        return [evaluate(i) for i in range(len(jobs))]
    with ThreadPoolExecutor(max_workers=run.workers) as pool:
        return list(pool.map(evaluate, range(len(jobs))))


def _cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return repr(float(value))


def rows_to_csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    buf.write(",".join(CSV_COLUMNS) + "\n")
    for row in rows:
        buf.write(",".join(_cell(row[c]) for c in CSV_COLUMNS) + "\n")
    return buf.getvalue()


def rows_to_json(rows: list[dict]) -> str:
    cleaned = [{c: (None if row[c] is None else row[c]) for c in CSV_COLUMNS}
               for row in rows]
    return json.dumps(cleaned, indent=2) + "\n"


def write_artifact(rows: list[dict], out_path: str, fmt: str) -> None:
    text = rows_to_csv(rows) if fmt == "csv" else rows_to_json(rows)
    with open(out_path, "w", encoding="utf-8", newline="") as handle:
        handle.write(text)


def run_point(cfg: dict, run: RunSettings, baseline: bool = True) -> dict:
    """Single-scenario report: analytic outage, floor, baseline, optional MC."""
    scenario = scenario_from_config(cfg)
    d = derive_vlc(scenario.vlc)
    report = {
        "mu1_db": cfg["rf"]["mu1_db"],
        "mu2_db": cfg["fso"]["mu2_db"],
        "rytov_var": cfg["fso"]["rytov_var"],
        "n_leds": int(cfg["vlc"]["n_leds"]),
        "pt_w": cfg["vlc"]["pt_w"],
        "L_m": cfg["vlc"]["L_m"],
        "gamma_th_db": cfg["run"]["gamma_th_db"],
        "vlc_gamma_min_db": 10.0 * math.log10(d.gamma_min),
        "vlc_gamma_max_db": 10.0 * math.log10(d.gamma_max),
        "pout_analytic": relay.outage_probability(scenario),
        "pout_floor": relay.outage_floor(scenario),
    }
    if baseline:
        report["pout_fso_only"] = relay.fso_only_outage(scenario)
        if report["pout_analytic"] > 0.0:
            report["improvement_vs_fso_only"] = (report["pout_fso_only"]
                                                 / report["pout_analytic"])
    if run.samples > 0:
        est = estimate_outage(scenario, McConfig(samples=run.samples, seed=run.seed,
                                                 batch=run.batch, workers=run.workers))
        report["pout_mc"] = est.p_hat
        report["mc_ci95"] = est.half_width_95
        report["mc_samples"] = est.n
    return report


def _check(name: str, passed: bool, detail: str) -> dict:
    return {"name": name, "passed": bool(passed), "detail": detail}


def run_validate(cfg: dict, run: RunSettings, analytic_fn=None) -> list[dict]:
    """Run the analytic-vs-MC agreement check plus the boundary invariants.

    ``analytic_fn`` replaces the analytic outage evaluation; it exists so a
    negative control (a deliberately corrupted value) can prove the 3-sigma
    comparison actually fails when it should.
    """
    analytic_fn = analytic_fn or relay.outage_probability
    scenario = scenario_from_config(cfg)
    d = derive_vlc(scenario.vlc)
    checks = []

    f_min = vlc_snr_cdf(d.gamma_min, scenario.vlc, d)
    f_max = vlc_snr_cdf(d.gamma_max, scenario.vlc, d)
    checks.append(_check(
        "vlc_support_boundaries",
        abs(f_min) <= 1e-12 and abs(f_max - 1.0) <= 1e-12,
        f"F(gamma_min)={f_min:.3e}, F(gamma_max)-1={f_max - 1.0:.3e}"))

    grid = np.geomspace(scenario.gamma_th * 1e-4,
                        max(scenario.gamma_th * 1e4, d.gamma_max * 4.0), 96)
    for label, fn in (
            ("rf", lambda g: rf_snr_cdf(g, scenario.rf)),
            ("fso", lambda g: fso_snr_cdf(g, scenario.fso.mu2, scenario.fso.shape)),
            ("vlc_best", lambda g: vlc_best_of_n_cdf(g, scenario.vlc, d))):
        values = np.asarray(fn(grid))
        in_range = bool(np.all(values >= -1e-12) and np.all(values <= 1.0 + 1e-12))
        monotone = bool(np.all(np.diff(values) >= -1e-12))
        checks.append(_check(
            f"cdf_shape_{label}", in_range and monotone,
            f"range_ok={in_range}, nondecreasing={monotone}"))

    f1 = float(relay.hybrid_cdf(scenario.gamma_th, scenario.rf, scenario.fso))
    f2 = float(vlc_best_of_n_cdf(scenario.gamma_th, scenario.vlc, d))
    pout = relay.outage_probability(scenario)
    checks.append(_check(
        "outage_bounds",
        max(f1, f2) - 1e-15 <= pout <= min(f1 + f2, 1.0) + 1e-15,
        f"max(F1,F2)={max(f1, f2):.6e} <= pout={pout:.6e} <= F1+F2={f1 + f2:.6e}"))

    direct = f1 + f2 - f1 * f2
    if direct > 1e-10:
        rel = abs(direct - pout) / direct
        checks.append(_check("complement_vs_direct", rel <= 1e-12, f"rel_diff={rel:.3e}"))
    else:
        checks.append(_check("complement_vs_direct", True,
                             "skipped (both hop outages too small to condition the direct form)"))

    fso_only = relay.fso_only_outage(scenario)
    checks.append(_check("hybrid_not_worse_than_fso_only",
                         pout <= fso_only + 1e-15,
                         f"hybrid={pout:.6e}, fso_only={fso_only:.6e}"))

    floor = relay.outage_floor(scenario)
    checks.append(_check("floor_is_lower_bound", floor <= pout + 1e-15,
                         f"floor={floor:.6e}, pout={pout:.6e}"))

    samples = run.samples if run.samples > 0 else 200_000
    est = estimate_outage(scenario, McConfig(samples=samples, seed=run.seed,
                                             batch=run.batch, workers=run.workers))
    p_ref = float(analytic_fn(scenario))
    diff = abs(est.p_hat - p_ref)
    # the binomial CI collapses at p_hat in {0, 1}; allow the rule-of-three
    # band there so a floor-free scenario with both methods at ~0 still passes
    degenerate_ok = ((est.p_hat == 0.0 and p_ref <= 5.0 / samples)
                     or (est.p_hat == 1.0 and 1.0 - p_ref <= 5.0 / samples))
    checks.append(_check(
        "mc_3sigma_agreement",
        diff <= 3.0 * est.half_width_95 or degenerate_ok,
        f"analytic={p_ref:.6e}, mc={est.p_hat:.6e}, 3*ci95={3.0 * est.half_width_95:.6e}, "
        f"n={samples}"))
    return checks
