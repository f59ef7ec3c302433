"""Selection combining of the two backhaul links and end-to-end outage.

The outdoor hop picks the stronger of the radio and optical links, so its
SNR CDF is the product F_rf * F_fso.  The decode-and-forward relay makes the
end-to-end SNR the minimum of the two hops, giving

    P_out = F1 + F2 - F1 F2 = 1 - (1 - F1)(1 - F2)

evaluated at the threshold; the complement-product form avoids cancellation
when both hop outages are tiny.
"""

from __future__ import annotations

import numpy as np

from .config import LinkBudgetScenario, derive_vlc
from .fso import fso_snr_cdf
from .rf import rf_snr_cdf
from .vlc import vlc_best_of_n_cdf


def combine_hop_outage(f1, f2):
    """Outage of min(hop1, hop2) from the two hop CDFs at the threshold."""
    with np.errstate(divide="ignore"):  # log1p(-1) = -inf is the f = 1 case
        return -np.expm1(np.log1p(-np.asarray(f1, dtype=float))
                         + np.log1p(-np.asarray(f2, dtype=float)))


def hybrid_cdf(gamma, rf_params, fso_params):
    """CDF of the selection-combined outdoor SNR: F_rf(gamma) * F_fso(gamma)."""
    return (rf_snr_cdf(gamma, rf_params)
            * fso_snr_cdf(gamma, fso_params.mu2, fso_params.shape))


def outage_probability(s: LinkBudgetScenario) -> float:
    """End-to-end outage probability at the scenario threshold."""
    f1 = hybrid_cdf(s.gamma_th, s.rf, s.fso)
    f2 = vlc_best_of_n_cdf(s.gamma_th, s.vlc, derive_vlc(s.vlc))
    return float(combine_hop_outage(f1, f2))


def outage_floor(s: LinkBudgetScenario) -> float:
    """Limit of the outage as both backhaul SNRs grow without bound.

    The outdoor hop outage vanishes, leaving the indoor best-of-N CDF at the
    threshold: the floor is set entirely by the LED cell.
    """
    return float(vlc_best_of_n_cdf(s.gamma_th, s.vlc, derive_vlc(s.vlc)))


def fso_only_outage(s: LinkBudgetScenario) -> float:
    """Outage of the comparison system whose outdoor hop has no radio backup."""
    f1 = fso_snr_cdf(s.gamma_th, s.fso.mu2, s.fso.shape)
    f2 = vlc_best_of_n_cdf(s.gamma_th, s.vlc, derive_vlc(s.vlc))
    return float(combine_hop_outage(f1, f2))
