"""Modified Bessel function of the second kind, K_nu, for real order.

The evaluation follows the classic two-regime scheme built around the
I_{-nu}/I_nu reflection structure of K:

* x <= 2: Temme's cancellation-free rearrangement of the reflection series,
  which stays finite as nu approaches an integer (the 0/0 limits are folded
  into two even auxiliary functions of the fractional order, computed from a
  Taylor series near zero).
* x > 2: a Steed-type continued fraction (Thompson-Barnett CF2) for the
  exponentially scaled K, which is where the raw reflection series would lose
  all precision to cancellation between the two I series.

Both regimes produce the pair (K_mu, K_{mu+1}) for |mu| <= 1/2; the stable
upward three-term recurrence then climbs to the requested order.  Everything
is vectorized over x for a scalar order.

Accuracy is a few ULP across x in [1e-6, 50] and |nu| <= 30 (checked against
a 30-digit reference in the test suite; the contract is 1e-10 relative).
"""

from __future__ import annotations

import numpy as np
from scipy.special import rgamma

_EPS = np.finfo(float).eps
_EULER = 0.5772156649015328606
# zeta values for the small-mu Taylor series of the auxiliary gamma functions
_Z2 = np.pi ** 2 / 6.0
_Z3 = 1.2020569031595942854
_Z4 = np.pi ** 4 / 90.0
_Z5 = 1.0369277551433699263
_Z6 = np.pi ** 6 / 945.0
_Z7 = 1.0083492773819228268

_MAX_SERIES = 400
_MAX_CF = 40000


def _temme_gammas(mu: float):
    """Auxiliary coefficients for Temme's series, |mu| <= 1/2.

    Returns (gam1, gam2, 1/Gamma(1+mu), 1/Gamma(1-mu)) with
    gam1 = (1/Gamma(1-mu) - 1/Gamma(1+mu)) / (2 mu), gam2 the even average.
    gam1 has a removable singularity at mu = 0 (value -euler_gamma); near
    zero it is evaluated from exp/sinh Taylor series in mu^2 instead of the
    cancelling difference.
    """
    gampl = float(rgamma(1.0 + mu))
    gammi = float(rgamma(1.0 - mu))
    if abs(mu) >= 0.02:
        gam1 = (gammi - gampl) / (2.0 * mu)
    else:
        mu2 = mu * mu
        odd_over_mu = _EULER + mu2 * (_Z3 / 3.0 + mu2 * (_Z5 / 5.0 + mu2 * (_Z7 / 7.0)))
        o = odd_over_mu * mu
        even = -mu2 * (_Z2 / 2.0 + mu2 * (_Z4 / 4.0 + mu2 * (_Z6 / 6.0)))
        sinh_o_over_mu = odd_over_mu * (1.0 + o * o / 6.0 + o ** 4 / 120.0)
        gam1 = -np.exp(even) * sinh_o_over_mu
    gam2 = 0.5 * (gammi + gampl)
    return gam1, gam2, gampl, gammi


def _k_pair_series(mu: float, x: np.ndarray, scaled: bool):
    """(K_mu, K_{mu+1}) by Temme's series; requires x <= 2 and |mu| <= 1/2."""
    gam1, gam2, gampl, gammi = _temme_gammas(mu)
    x2 = 0.5 * x
    d = -np.log(x2)
    e = mu * d
    fact = (np.pi * mu / np.sin(np.pi * mu)) if mu != 0.0 else 1.0
    safe_e = np.where(e != 0.0, e, 1.0)
    fact2 = np.where(e != 0.0, np.sinh(safe_e) / safe_e, 1.0)
    ff = fact * (gam1 * np.cosh(e) + gam2 * fact2 * d)
    ksum = ff.copy()
    ex = np.exp(e)
    p = 0.5 * ex / gampl
    q = 0.5 / (ex * gammi)
    c = np.ones_like(x)
    xx = x2 * x2
    ksum1 = p.copy()
    active = np.ones_like(x, dtype=bool)
    for i in range(1, _MAX_SERIES):
        ff = (i * ff + p + q) / (i * i - mu * mu)
        c = c * xx / i
        p = p / (i - mu)
        q = q / (i + mu)
        dl = c * ff
        ksum = np.where(active, ksum + dl, ksum)
        dl1 = c * (p - i * ff)
        ksum1 = np.where(active, ksum1 + dl1, ksum1)
        active &= np.abs(dl) >= np.abs(ksum) * _EPS
        if not active.any():
            break
    else:
        raise RuntimeError("K_nu small-x series did not converge")
    k0 = ksum
    k1 = ksum1 * (2.0 / x)
    if scaled:
        s = np.exp(x)
        k0, k1 = k0 * s, k1 * s
    return k0, k1


def _k_pair_cf2(mu: float, x: np.ndarray, scaled: bool):
    """(K_mu, K_{mu+1}) by the CF2 continued fraction; requires x > 2."""
    a1 = 0.25 - mu * mu
    b = 2.0 * (1.0 + x)
    d = 1.0 / b
    h = d.copy()
    delh = d.copy()
    q1 = np.zeros_like(x)
    q2 = np.ones_like(x)
    q = np.full_like(x, a1)
    c = np.full_like(x, a1)
    a = -a1
    s = 1.0 + q * delh
    active = np.ones_like(x, dtype=bool)
    for i in range(2, _MAX_CF):
        a -= 2.0 * (i - 1)
        c = -a * c / i
        qnew = (q1 - b * q2) / a
        q1 = q2
        q2 = qnew
        q = q + c * qnew
        b = b + 2.0
        d = 1.0 / (b + a * d)
        delh = (b * d - 1.0) * delh
        h = np.where(active, h + delh, h)
        dels = q * delh
        s = np.where(active, s + dels, s)
        active &= np.abs(dels) >= np.abs(s) * _EPS
        if not active.any():
            break
    else:
        raise RuntimeError("K_nu continued fraction did not converge")
    k0 = np.sqrt(np.pi / (2.0 * x)) / s
    if not scaled:
        k0 = k0 * np.exp(-x)
    k1 = k0 * (mu + x + 0.5 - a1 * h) / x
    return k0, k1


def bessel_k(nu: float, x, scaled: bool = False):
    """K_nu(x) for real order nu and x > 0, vectorized over x.

    With ``scaled=True`` returns exp(x) * K_nu(x), which stays representable
    for large x where the plain value underflows.
    """
    nu = float(nu)
    if not np.isfinite(nu):
        raise ValueError("order nu must be finite")
    arr = np.asarray(x, dtype=float)
    scalar_in = arr.ndim == 0
    arr = np.atleast_1d(arr)
    if np.any(arr <= 0.0) or not np.all(np.isfinite(arr)):
        raise ValueError("x must be finite and > 0")

    anu = abs(nu)  # K_{-nu} = K_nu
    n = int(anu + 0.5)
    mu = anu - n  # fractional part in [-1/2, 1/2]

    k0 = np.empty_like(arr)
    k1 = np.empty_like(arr)
    small = arr <= 2.0
    if small.any():
        k0[small], k1[small] = _k_pair_series(mu, arr[small], scaled)
    large = ~small
    if large.any():
        k0[large], k1[large] = _k_pair_cf2(mu, arr[large], scaled)

    if n == 0:
        out = k0
    else:
        kprev, kcur = k0, k1
        for l in range(1, n):
            kprev, kcur = kcur, kprev + (2.0 * (mu + l) / arr) * kcur
        out = kcur
    return float(out[0]) if scalar_in else out


def log_bessel_k(nu: float, x):
    """log K_nu(x), safe deep into the exponential tail."""
    arr = np.asarray(x, dtype=float)
    out = np.log(bessel_k(nu, arr, scaled=True)) - arr
    return float(out) if arr.ndim == 0 else out
