"""Line-of-sight statistics of the indoor LED cell for a random user.

A user is dropped uniformly on the disk of radius r_e under the LED, so the
radial distance has density 2 r / r_e^2.  The channel gain is
I(r) = im_const / (r^2 + L^2)^((m_l+3)/2) and the electrical SNR is
gamma = mu_vlc * I^2, supported on [gamma_min, gamma_max].

With N access points the serving link is the one with the best gain; the
per-LED links are treated as independent and identically distributed, so
the best-of-N CDF is the single-link CDF raised to N.  (For
a single user and N fixed ceiling LEDs the distances are geometrically
coupled; the i.i.d. abstraction is the modeling choice here and keeps the
closed form exact.)
"""

from __future__ import annotations

import numpy as np

from .config import DerivedVlc, VlcGeometry, derive_vlc


def vlc_gain_at(r, g: VlcGeometry, d: DerivedVlc | None = None):
    """LOS channel gain at radial distance r from the cell center, 0 <= r <= r_e."""
    d = d or derive_vlc(g)
    arr = np.asarray(r, dtype=float)
    if np.any(arr < 0.0) or np.any(arr > d.r_e) or not np.all(np.isfinite(arr)):
        raise ValueError(f"r must lie in [0, r_e] = [0, {d.r_e!r}]")
    out = d.im_const / (arr ** 2 + g.L ** 2) ** ((d.m_l + 3.0) / 2.0)
    return float(out) if arr.ndim == 0 else out


def vlc_snr_pdf(gamma, g: VlcGeometry, d: DerivedVlc | None = None):
    """Density of the single-link SNR; zero outside [gamma_min, gamma_max].

    f(gamma) = mu_vlc^(1/(m+3)) im^(2/(m+3)) / (r_e^2 (m+3)) * gamma^(-(m+4)/(m+3))
    """
    d = d or derive_vlc(g)
    arr = np.asarray(gamma, dtype=float)
    m = d.m_l
    coef = (d.mu_vlc ** (1.0 / (m + 3.0)) * d.im_const ** (2.0 / (m + 3.0))
            / (d.r_e ** 2 * (m + 3.0)))
    with np.errstate(invalid="ignore"):
        out = np.where((arr >= d.gamma_min) & (arr <= d.gamma_max),
                       coef * np.abs(arr) ** (-(m + 4.0) / (m + 3.0)), 0.0)
    return float(out) if arr.ndim == 0 else out


def vlc_snr_cdf(gamma, g: VlcGeometry, d: DerivedVlc | None = None):
    """P(SNR <= gamma) for a single link, clamped to 0/1 outside the support.

    F(gamma) = 1 + L^2/r_e^2 - im^(2/(m+3))/r_e^2 * (gamma/mu_vlc)^(-1/(m+3))
    """
    d = d or derive_vlc(g)
    arr = np.asarray(gamma, dtype=float)
    m = d.m_l
    safe = np.clip(arr, d.gamma_min, d.gamma_max)
    val = (1.0 + g.L ** 2 / d.r_e ** 2
           - d.im_const ** (2.0 / (m + 3.0)) / d.r_e ** 2
           * (safe / d.mu_vlc) ** (-1.0 / (m + 3.0)))
    out = np.where(arr <= d.gamma_min, 0.0, np.where(arr >= d.gamma_max, 1.0, val))
    return float(out) if arr.ndim == 0 else out


def vlc_best_of_n_cdf(gamma, g: VlcGeometry, d: DerivedVlc | None = None):
    """P(best-of-N SNR <= gamma) = single-link CDF raised to n_leds."""
    d = d or derive_vlc(g)
    base = vlc_snr_cdf(gamma, g, d)
    return np.asarray(base) ** g.n_leds if np.ndim(base) else base ** g.n_leds
