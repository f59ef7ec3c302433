"""Monte Carlo oracle for every analytic quantity in the package.

Sampling is split into independent substreams of at most ``batch`` samples.
Substream i uses a Philox generator keyed by the seed with counter block
[0, 0, 0, i], so streams are independent by construction and the estimate is
bit-identical for a fixed (seed, samples, batch) no matter how many worker
threads execute the streams: per-stream outage counts are integers and are
reduced in stream order.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .config import LinkBudgetScenario, RfChannelParams, VlcGeometry, derive_vlc
from .fso import GammaGammaShape

_Z95 = 1.959963984540054  # two-sided 95% normal quantile


@dataclass(frozen=True)
class McConfig:
    samples: int
    seed: int = 20230917
    batch: int = 250_000
    workers: int = 1

    def __post_init__(self):
        if self.samples < 1:
            raise ValueError("samples must be >= 1")
        if self.batch < 1:
            raise ValueError("batch must be >= 1")
        if self.workers < 1:
            raise ValueError("workers must be >= 1")


@dataclass(frozen=True)
class McEstimate:
    p_hat: float          # outage estimate
    half_width_95: float  # 95% normal-approximation confidence half-width
    n: int                # samples used

    def __post_init__(self):
        if not (0.0 <= self.p_hat <= 1.0) or self.half_width_95 < 0.0:
            raise ValueError("inconsistent Monte Carlo estimate")


def stream_rng(seed: int, stream: int) -> np.random.Generator:
    """Generator for one counter-based substream of a seeded run."""
    bg = np.random.Philox(key=int(seed) & ((1 << 128) - 1), counter=[0, 0, 0, int(stream)])
    return np.random.Generator(bg)


def sample_rf_snr(rng: np.random.Generator, p: RfChannelParams, size=None):
    """Exponential SNR with mean mu1, drawn by inverting 1 - exp(-g/mu1)."""
    u = rng.random(size)
    return -p.mu1 * np.log1p(-u)


def sample_fso_snr(rng: np.random.Generator, mu2: float, s: GammaGammaShape, size=None):
    """Gamma-Gamma SNR: gamma = mu2 * (X*Y)^2 with unit-mean Gamma factors.

    The generator's gamma sampler is the standard squeeze/rejection method
    (with the shape<1 boost), which strong turbulence needs since beta can
    approach 1.
    """
    x = rng.gamma(s.alpha, 1.0 / s.alpha, size)
    y = rng.gamma(s.beta, 1.0 / s.beta, size)
    irr = x * y
    return mu2 * irr * irr


def sample_vlc_best_snr(rng: np.random.Generator, g: VlcGeometry, size=None, d=None):
    """Best-of-N indoor SNR for one user: N radii r = r_e sqrt(u), max SNR.

    Matches the i.i.d. best-link model: the closest of N independently placed
    distances gives the largest gain.
    """
    d = d or derive_vlc(g)
    shape = (g.n_leds,) if size is None else (int(size), g.n_leds)
    u = rng.random(shape)
    r_sq = d.r_e ** 2 * u
    snr = d.mu_vlc * d.im_const ** 2 / (r_sq + g.L ** 2) ** (d.m_l + 3.0)
    out = snr.max(axis=-1)
    return float(out) if size is None else out


def _stream_outage_count(s: LinkBudgetScenario, d, seed: int, stream: int, n: int) -> int:
    rng = stream_rng(seed, stream)
    g1 = np.maximum(sample_rf_snr(rng, s.rf, n),
                    sample_fso_snr(rng, s.fso.mu2, s.fso.shape, n))
    g2 = sample_vlc_best_snr(rng, s.vlc, n, d)
    return int(np.count_nonzero(np.minimum(g1, g2) < s.gamma_th))


def estimate_outage(s: LinkBudgetScenario, mc: McConfig) -> McEstimate:
    """Estimate P[min(max(rf, fso), best vlc) < gamma_th] with a 95% CI."""
    d = derive_vlc(s.vlc)
    sizes = []
    remaining = mc.samples
    while remaining > 0:
        take = min(mc.batch, remaining)
        sizes.append(take)
        remaining -= take

    def run(i: int) -> int:
        return _stream_outage_count(s, d, mc.seed, i, sizes[i])

    if mc.workers == 1 or len(sizes) == 1:
        counts = [run(i) for i in range(len(sizes))]
    else:
        with ThreadPoolExecutor(max_workers=mc.workers) as pool:
            counts = list(pool.map(run, range(len(sizes))))

    hits = sum(counts)  # integer reduction: order independent, merged as indexed
    p_hat = hits / mc.samples
    half = _Z95 * math.sqrt(p_hat * (1.0 - p_hat) / mc.samples)
    return McEstimate(p_hat=p_hat, half_width_95=half, n=mc.samples)
