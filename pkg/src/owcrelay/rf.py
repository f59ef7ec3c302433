"""Rayleigh-fading radio link statistics.

The instantaneous SNR is exponential with mean mu1:
pdf(g) = exp(-g/mu1)/mu1, cdf(g) = 1 - exp(-g/mu1).
"""

from __future__ import annotations

import numpy as np

from .config import RfChannelParams


def _checked(gamma):
    arr = np.asarray(gamma, dtype=float)
    if np.any(arr < 0.0):
        raise ValueError("gamma must be >= 0")
    return arr


def rf_snr_pdf(gamma, p: RfChannelParams):
    """Density of the radio-link SNR at ``gamma`` (linear scale)."""
    arr = _checked(gamma)
    out = np.exp(-arr / p.mu1) / p.mu1
    return float(out) if arr.ndim == 0 else out


def rf_snr_cdf(gamma, p: RfChannelParams):
    """P(SNR <= gamma).  Uses expm1 so tiny gamma/mu1 keeps full precision."""
    arr = _checked(gamma)
    out = -np.expm1(-arr / p.mu1)
    return float(out) if arr.ndim == 0 else out
