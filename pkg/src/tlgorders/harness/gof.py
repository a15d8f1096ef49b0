"""Monte-Carlo cross-check of the analytic system cdf.

Component lifetimes are drawn by inverse transform, reduced to the minimum
(series) or maximum (parallel) per replicate, and compared with
``system_cdf`` through the one-sample Kolmogorov-Smirnov statistic.
"""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass

import numpy as np
from scipy import stats

from ..errors import DomainError
from ..systems import SystemSpec, system_cdf
from ..tlg import tlg_sample

MIN_SAMPLES = 100
KS_BOUND = 0.01
# asymptotic 1% critical value of sqrt(n) * D
KS_C99 = 1.63


@dataclass
class GofReport:
    n_samples: int
    seed: int
    statistic: float
    pvalue: float
    threshold: float
    passed: bool

    def to_dict(self) -> dict:
        return asdict(self)


def system_sample(s: SystemSpec, rng: np.random.Generator, n: int) -> np.ndarray:
    draws = np.stack([tlg_sample(c, rng, n) for c in s.components])
    return draws.min(axis=0) if s.topology == "series" else draws.max(axis=0)


def monte_carlo_gof(s: SystemSpec, n_samples: int = 100_000, seed: int = 0) -> GofReport:
    """Pass iff the KS distance is below max(0.01, 1.63/sqrt(n))."""
    if n_samples < MIN_SAMPLES:
        raise DomainError(f"need at least {MIN_SAMPLES} samples, got {n_samples}")
    rng = np.random.default_rng(seed)
    sample = system_sample(s, rng, n_samples)
    res = stats.kstest(sample, lambda x: system_cdf(s, x))
    threshold = max(KS_BOUND, KS_C99 / math.sqrt(n_samples))
    return GofReport(
        n_samples=n_samples,
        seed=seed,
        statistic=float(res.statistic),
        pvalue=float(res.pvalue),
        threshold=threshold,
        passed=bool(res.statistic < threshold),
    )
