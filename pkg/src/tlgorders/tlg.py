"""The Topp-Leone generated family TL-G(alpha, theta, xi).

    F(x) = (G^theta (2 - G^theta))^alpha
    f(x) = 2 alpha theta g G^(theta alpha - 1) (1 - G^theta) (2 - G^theta)^(alpha - 1)

All evaluations go through logarithms. Writing y = G^theta, the cdf is
t^alpha with t = y(2 - y) = 1 - (1 - y)^2, so both F and 1 - F can be formed
from 1 - y without subtracting nearly equal numbers.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any, Mapping

import numpy as np

from .baseline import BaselineSpec, _as_finite, _as_probability, _out
from .errors import DomainError

ABS_TOL = 1e-12
FD_REL_TOL = 1e-6


@dataclass(frozen=True)
class TLGParams:
    alpha: float
    theta: float
    baseline: BaselineSpec

    def __post_init__(self):
        for name in ("alpha", "theta"):
            value = float(getattr(self, name))
            if not (math.isfinite(value) and value > 0):
                raise DomainError(f"{name} must be positive and finite, got {value!r}")
            object.__setattr__(self, name, value)
        if not isinstance(self.baseline, BaselineSpec):
            raise DomainError("baseline must be a BaselineSpec")

    @property
    def support(self) -> tuple[float, float]:
        return self.baseline.support_lo, self.baseline.support_hi

    def to_dict(self) -> dict[str, Any]:
        return {"alpha": self.alpha, "theta": self.theta, "baseline": self.baseline.to_dict()}

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "TLGParams":
        try:
            return cls(
                alpha=data["alpha"],
                theta=data["theta"],
                baseline=BaselineSpec.from_dict(data["baseline"]),
            )
        except (KeyError, TypeError) as exc:
            raise DomainError(f"malformed TL-G component {data!r}") from exc


def _parts(p: TLGParams, x: np.ndarray):
    """Return (log G, 1 - G^theta, log t) where F = t^alpha."""
    G, S = p.baseline._cdf_sf(x)
    with np.errstate(divide="ignore", invalid="ignore"):
        log_g_cdf = np.where(G < 0.5, np.log(G), np.log1p(-S))
        log_y = p.theta * log_g_cdf
        one_minus_y = -np.expm1(log_y)
        # t = y (2 - y) for small y, t = 1 - (1 - y)^2 near 1
        log_t = np.where(
            one_minus_y > 0.5,
            log_y + np.log1p(one_minus_y),
            np.log1p(-(one_minus_y * one_minus_y)),
        )
    return log_g_cdf, one_minus_y, log_t


def logcdf(p: TLGParams, x: np.ndarray) -> np.ndarray:
    return p.alpha * _parts(p, x)[2]


def logsf(p: TLGParams, x: np.ndarray) -> np.ndarray:
    log_f = logcdf(p, x)
    with np.errstate(divide="ignore"):
        return np.log(-np.expm1(log_f))


def logpdf(p: TLGParams, x: np.ndarray) -> np.ndarray:
    a, th = p.alpha, p.theta
    lo, hi = p.support
    log_g_cdf, one_minus_y, _ = _parts(p, x)
    with np.errstate(divide="ignore", invalid="ignore"):
        log_dens = np.log(p.baseline._pdf(x))
        power = a * th - 1.0
        at_zero = np.isneginf(log_g_cdf)
        # limit of G^(theta alpha - 1) as G -> 0
        limit = math.inf if power < 0 else (0.0 if power == 0 else -math.inf)
        g_term = np.where(at_zero, limit, power * np.where(at_zero, 0.0, log_g_cdf))
        out = (
            math.log(2.0 * a * th)
            + log_dens
            + g_term
            + np.log(one_minus_y)
            + (a - 1.0) * np.log1p(one_minus_y)
        )
    outside = (x < lo) | (x > hi) | np.isnan(out)
    return np.where(outside, -math.inf, out)


def tlg_cdf(p: TLGParams, x):
    arr = _as_finite(x)
    return _out(np.exp(logcdf(p, arr)), x)


def tlg_survival(p: TLGParams, x):
    """1 - F(x), formed as -expm1(alpha log t) so it stays accurate as F -> 1."""
    arr = _as_finite(x)
    return _out(-np.expm1(logcdf(p, arr)), x)


def tlg_pdf(p: TLGParams, x):
    """Density; +inf at the support infimum when theta*alpha < 1."""
    arr = _as_finite(x)
    return _out(np.exp(logpdf(p, arr)), x)


def _check_open_support(lo, hi, arr, x):
    if not np.all((arr > lo) & (arr < hi)):
        raise DomainError(f"x must lie strictly inside the support ({lo}, {hi}), got {x!r}")


def tlg_hazard(p: TLGParams, x):
    """f / (1 - F); +inf where the survival underflows to zero."""
    arr = _as_finite(x)
    _check_open_support(*p.support, arr, x)
    with np.errstate(invalid="ignore"):
        log_h = logpdf(p, arr) - logsf(p, arr)
    log_h = np.where(np.isnan(log_h), math.inf, log_h)
    return _out(np.exp(log_h), x)


def tlg_quantile(p: TLGParams, u):
    """Invert the cdf in closed form.

    With w = u^(1/alpha), y = G^theta solves y^2 - 2y + w = 0; the admissible
    root is y = 1 - sqrt(1 - w), evaluated as w / (1 + sqrt(1 - w)).
    """
    arr = _as_probability(u)
    with np.errstate(divide="ignore"):
        log_w = np.log(arr) / p.alpha
        root = np.sqrt(-np.expm1(log_w))
        log_y = log_w - np.log1p(root)
        log_G = log_y / p.theta
        G = np.exp(log_G)
        S = -np.expm1(log_G)
    b = p.baseline
    out = np.where(G > 0.5, b._isf(S), b._quantile(np.minimum(G, 0.5)))
    return _out(out, u)


def tlg_sample(p: TLGParams, rng: np.random.Generator, n: int) -> np.ndarray:
    """Draw ``n`` variates by inverse transform using the caller's generator."""
    if n < 0:
        raise DomainError(f"sample size must be nonnegative, got {n}")
    if n == 0:
        return np.empty(0)
    return np.asarray(tlg_quantile(p, rng.random(n)), dtype=float)
