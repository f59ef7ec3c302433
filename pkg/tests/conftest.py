"""Shared fixtures and independent oracles for the test suite.

The Gamma-Gamma CDF oracle here deliberately avoids the package's own
special-function kernel and quadrature: it integrates the density written
from scratch with scipy's Bessel K through scipy's adaptive QUADPACK
routine, so series, kernel and quadrature engine are all cross-checked
against an implementation that shares none of their code.
"""

import math

import numpy as np
import pytest
from scipy import integrate
from scipy.special import gammaln, kv
from scipy.stats import kstwobign

from owcrelay import (FsoChannelParams, LinkBudgetScenario, RfChannelParams,
                      VlcGeometry, db_to_linear)

# Reference photodetector/LED electro-optics plus the documented example
# defaults (L = 3 m, half-angle 60 deg, Pt = 1 W, B = 20 MHz, threshold 10 dB).
BASE_VLC = dict(
    L=3.0,
    phi_half=math.radians(60.0),
    psi_fov=math.radians(60.0),
    area=1e-4,
    resp=0.4,
    filter_gain=1.0,
    ref_index=1.5,
    eta=0.8,
    n0=1e-21,
    bandwidth=20e6,
    pt=1.0,
    n_leds=8,
)

RYTOV_WEAK = 0.25
RYTOV_STRONG = 2.0


def make_vlc(**overrides) -> VlcGeometry:
    params = dict(BASE_VLC)
    params.update(overrides)
    return VlcGeometry(**params)


def make_scenario(mu_db=25.0, rytov=RYTOV_STRONG, gamma_th_db=10.0,
                  mu1_db=None, mu2_db=None, **vlc_overrides) -> LinkBudgetScenario:
    return LinkBudgetScenario(
        rf=RfChannelParams(mu1=db_to_linear(mu1_db if mu1_db is not None else mu_db)),
        fso=FsoChannelParams.from_rytov(
            mu2=db_to_linear(mu2_db if mu2_db is not None else mu_db),
            rytov_var=rytov),
        vlc=make_vlc(**vlc_overrides),
        gamma_th=db_to_linear(gamma_th_db),
    )


def oracle_gg_snr_cdf(gamma, mu2, alpha, beta, epsrel=1e-11):
    """Adaptive-quadrature CDF oracle, independent of the library internals.

    Integrates the density in w = (gamma/mu2)^(1/4) (the sqrt-irradiance
    variable), where the Bessel argument is linear and the lower endpoint is
    a mild algebraic singularity.
    """
    a, b = (alpha, beta) if alpha >= beta else (beta, alpha)
    lead = math.log(4.0) + 0.5 * (a + b) * math.log(a * b) - gammaln(a) - gammaln(b)
    root = 2.0 * math.sqrt(a * b)

    def integrand(w):
        return math.exp(lead + (a + b - 1.0) * math.log(w)) * kv(a - b, root * w)

    v = (gamma / mu2) ** 0.25
    if v == 0.0:
        return 0.0
    val, _ = integrate.quad(integrand, 0.0, v, epsabs=0.0, epsrel=epsrel, limit=400)
    return min(val, 1.0)


def ks_critical(n, level=0.01):
    """Asymptotic Kolmogorov-Smirnov critical value for sample size n."""
    return float(kstwobign.isf(level)) / math.sqrt(n)


@pytest.fixture(scope="session")
def weak_shape():
    from owcrelay import shapes_from_rytov
    return shapes_from_rytov(RYTOV_WEAK)


@pytest.fixture(scope="session")
def strong_shape():
    from owcrelay import shapes_from_rytov
    return shapes_from_rytov(RYTOV_STRONG)


@pytest.fixture(scope="session")
def base_vlc():
    return make_vlc()


@pytest.fixture()
def rng():
    return np.random.default_rng(20230917)
