"""Per-link statistics walkthrough.

Evaluates the three channel models that make up the relayed system: the
Rayleigh-faded radio link, the Gamma-Gamma turbulence optical link, and the
indoor LED cell, printing a small CDF table for each.
"""

import numpy as np

from owcrelay import (RfChannelParams, db_to_linear, derive_vlc, fso_snr_cdf,
                      linear_to_db, rf_snr_cdf, shapes_from_rytov,
                      vlc_best_of_n_cdf, vlc_snr_cdf, VlcGeometry)

mu = db_to_linear(25.0)
grid_db = np.arange(-10.0, 31.0, 5.0)
grid = db_to_linear(grid_db)

# --- radio link: exponential SNR -------------------------------------------
rf = RfChannelParams(mu1=mu)
print("Radio link, average SNR 25 dB")
for g_db, f in zip(grid_db, rf_snr_cdf(grid, rf)):
    print(f"  F({g_db:+5.1f} dB) = {f:.6f}")

# --- optical backhaul: Gamma-Gamma fading ----------------------------------
print("\nOptical backhaul, electrical SNR 25 dB")
for rytov in (0.25, 2.0):
    s = shapes_from_rytov(rytov)
    regime = "weak" if rytov < 1.0 else "strong"
    print(f"  Rytov variance {rytov} ({regime} turbulence): "
          f"alpha = {s.alpha:.3f}, beta = {s.beta:.3f}")
    values = fso_snr_cdf(grid, mu, s)
    for g_db, f in zip(grid_db[::2], values[::2]):
        print(f"    F({g_db:+5.1f} dB) = {f:.3e}")

# --- indoor LED cell ---------------------------------------------------------
import math

vlc = VlcGeometry(L=3.0, phi_half=math.radians(60.0), psi_fov=math.radians(60.0),
                  area=1e-4, resp=0.4, filter_gain=1.0, ref_index=1.5, eta=0.8,
                  n0=1e-21, bandwidth=20e6, pt=1.0, n_leds=8)
d = derive_vlc(vlc)
print(f"\nIndoor cell: footprint radius {d.r_e:.2f} m, SNR support "
      f"[{linear_to_db(d.gamma_min):.1f}, {linear_to_db(d.gamma_max):.1f}] dB")
for g_db in (5.0, 10.0, 15.0, 20.0, 25.0):
    g = db_to_linear(g_db)
    print(f"  single link F({g_db:4.1f} dB) = {vlc_snr_cdf(g, vlc):.4f}   "
          f"best of 8: {vlc_best_of_n_cdf(g, vlc):.3e}")
