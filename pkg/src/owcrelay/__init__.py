"""Outage analysis of a hybrid RF/FSO backhaul relayed into an indoor LED cell.

The outdoor hop selection-combines a Rayleigh-faded radio link with a
Gamma-Gamma turbulence-faded optical link; a decode-and-forward relay feeds
an indoor visible-light cell served by the best of N ceiling LEDs.  The
package provides the closed-form outage probability, a seeded Monte Carlo
engine that validates it, and sweep tooling that emits CSV/JSON curves.
"""

from .config import (DerivedVlc, FsoChannelParams, LinkBudgetScenario,
                     ParameterError, RfChannelParams, RunSettings, VlcGeometry,
                     db_to_linear, derive_vlc, linear_to_db, load_scenario,
                     read_config, run_settings_from_config, scenario_from_config)
from .fso import GammaGammaShape, fso_snr_cdf, fso_snr_pdf, shapes_from_rytov
from .mc import (McConfig, McEstimate, estimate_outage, sample_fso_snr,
                 sample_rf_snr, sample_vlc_best_snr, stream_rng)
from .relay import (combine_hop_outage, fso_only_outage, hybrid_cdf,
                    outage_floor, outage_probability)
from .rf import rf_snr_cdf, rf_snr_pdf
from .special import bessel_k, log_bessel_k
from .sweep import (CSV_COLUMNS, SweepSpec, rows_to_csv, rows_to_json,
                    run_point, run_sweep, run_validate, sweep_spec_from_config,
                    write_artifact)
from .vlc import vlc_best_of_n_cdf, vlc_gain_at, vlc_snr_cdf, vlc_snr_pdf

__version__ = "0.1.0"

__all__ = [
    "DerivedVlc", "FsoChannelParams", "GammaGammaShape", "LinkBudgetScenario",
    "McConfig", "McEstimate", "ParameterError", "RfChannelParams", "RunSettings",
    "SweepSpec", "VlcGeometry", "CSV_COLUMNS", "bessel_k", "combine_hop_outage",
    "db_to_linear", "derive_vlc", "estimate_outage", "fso_only_outage",
    "fso_snr_cdf", "fso_snr_pdf", "hybrid_cdf", "linear_to_db", "load_scenario",
    "log_bessel_k", "outage_floor", "outage_probability", "read_config",
    "rf_snr_cdf", "rf_snr_pdf", "rows_to_csv", "rows_to_json", "run_point",
    "run_settings_from_config", "run_sweep", "run_validate", "sample_fso_snr",
    "sample_rf_snr", "sample_vlc_best_snr", "scenario_from_config",
    "shapes_from_rytov", "stream_rng", "sweep_spec_from_config",
    "vlc_best_of_n_cdf", "vlc_gain_at", "vlc_snr_cdf", "vlc_snr_pdf",
    "write_artifact",
]
