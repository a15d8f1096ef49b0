"""Series (minimum) and parallel (maximum) lifetimes of independent TL-G components.

Products over components are accumulated as sums of logarithms. Densities use
the leave-one-out form

    parallel:  f = sum_k f_k * prod_{j != k} F_j
    series:    f = sum_k f_k * prod_{j != k} (1 - F_j)

which equals F * sum f_k / F_k (resp. S * sum r_k) but never divides by a
component cdf that vanishes at the support infimum.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any, Mapping, Sequence

import numpy as np
from scipy.special import logsumexp

from . import tlg
from .baseline import BaselineSpec, _as_finite, _out
from .errors import DomainError
from .tlg import TLGParams

TOPOLOGIES = ("series", "parallel")


@dataclass(frozen=True)
class SystemSpec:
    components: tuple[TLGParams, ...]
    topology: str

    def __post_init__(self):
        comps = tuple(self.components)
        if not comps:
            raise DomainError("a system needs at least one component")
        if not all(isinstance(c, TLGParams) for c in comps):
            raise DomainError("components must be TLGParams")
        if self.topology not in TOPOLOGIES:
            raise DomainError(f"topology must be one of {TOPOLOGIES}, got {self.topology!r}")
        object.__setattr__(self, "components", comps)

    @property
    def n(self) -> int:
        return len(self.components)

    @property
    def support(self) -> tuple[float, float]:
        """Common support of the components (intersection)."""
        lo = max(c.baseline.support_lo for c in self.components)
        hi = min(c.baseline.support_hi for c in self.components)
        return lo, hi

    def to_dict(self) -> dict[str, Any]:
        return {"topology": self.topology, "components": [c.to_dict() for c in self.components]}

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "SystemSpec":
        try:
            comps = tuple(TLGParams.from_dict(c) for c in data["components"])
            return cls(components=comps, topology=data["topology"])
        except (KeyError, TypeError) as exc:
            raise DomainError(f"malformed system object {data!r}") from exc


def make_system(
    alphas: Sequence[float] | float,
    thetas: Sequence[float] | float,
    baseline: BaselineSpec,
    topology: str,
) -> SystemSpec:
    """Build a system from per-component (or broadcast scalar) alpha and theta."""
    a = np.atleast_1d(np.asarray(alphas, dtype=float))
    t = np.atleast_1d(np.asarray(thetas, dtype=float))
    a, t = np.broadcast_arrays(a, t)
    comps = tuple(TLGParams(float(ai), float(ti), baseline) for ai, ti in zip(a, t))
    return SystemSpec(comps, topology)


# -- log-space building blocks (arrays in, arrays out) -----------------------


def _stack(fn, s: SystemSpec, x: np.ndarray) -> np.ndarray:
    return np.stack([fn(c, x) for c in s.components])


def _log_leave_one_out(logs: np.ndarray) -> np.ndarray:
    """Row k holds sum_{j != k} logs[j]; exact even when some rows are -inf."""
    n = logs.shape[0]
    out = np.empty_like(logs)
    for k in range(n):
        others = [logs[j] for j in range(n) if j != k]
        out[k] = np.sum(others, axis=0) if others else 0.0
    return out


def system_logcdf(s: SystemSpec, x: np.ndarray) -> np.ndarray:
    if s.topology == "parallel":
        return _stack(tlg.logcdf, s, x).sum(axis=0)
    log_surv = _stack(tlg.logsf, s, x).sum(axis=0)
    with np.errstate(divide="ignore"):
        return np.log(-np.expm1(log_surv))


def system_logsf(s: SystemSpec, x: np.ndarray) -> np.ndarray:
    if s.topology == "series":
        return _stack(tlg.logsf, s, x).sum(axis=0)
    log_cdf = _stack(tlg.logcdf, s, x).sum(axis=0)
    with np.errstate(divide="ignore"):
        return np.log(-np.expm1(log_cdf))


def system_logpdf(s: SystemSpec, x: np.ndarray) -> np.ndarray:
    own = _stack(tlg.logpdf, s, x)
    rest_fn = tlg.logcdf if s.topology == "parallel" else tlg.logsf
    rest = _log_leave_one_out(_stack(rest_fn, s, x))
    with np.errstate(invalid="ignore"):
        terms = own + rest
    # inf + (-inf): a diverging density times a vanishing product; the
    # product decays polynomially faster in G, so the term is 0
    terms = np.where(np.isnan(terms), -math.inf, terms)
    with np.errstate(divide="ignore"):
        return logsumexp(terms, axis=0)


def _check_open_support(s: SystemSpec, arr, x):
    lo, hi = s.support
    if not np.all((arr > lo) & (arr < hi)):
        raise DomainError(f"x must lie strictly inside the common support ({lo}, {hi}), got {x!r}")


# -- public API --------------------------------------------------------------


def system_cdf(s: SystemSpec, x):
    arr = _as_finite(x)
    if s.topology == "parallel":
        return _out(np.exp(system_logcdf(s, arr)), x)
    return _out(-np.expm1(_stack(tlg.logsf, s, arr).sum(axis=0)), x)


def system_survival(s: SystemSpec, x):
    arr = _as_finite(x)
    if s.topology == "series":
        return _out(np.exp(system_logsf(s, arr)), x)
    return _out(-np.expm1(_stack(tlg.logcdf, s, arr).sum(axis=0)), x)


def system_pdf(s: SystemSpec, x):
    arr = _as_finite(x)
    _check_open_support(s, arr, x)
    return _out(np.exp(system_logpdf(s, arr)), x)


def system_hazard(s: SystemSpec, x):
    """Series: sum of component hazards. Parallel: pdf / survival."""
    arr = _as_finite(x)
    _check_open_support(s, arr, x)
    if s.topology == "series":
        return _out(np.sum([tlg.tlg_hazard(c, arr) for c in s.components], axis=0), x)
    with np.errstate(invalid="ignore"):
        log_h = system_logpdf(s, arr) - system_logsf(s, arr)
    log_h = np.where(np.isnan(log_h), math.inf, log_h)
    return _out(np.exp(log_h), x)


def parallel_pdf_closed_form(s: SystemSpec, x):
    """Density of the maximum when every component shares theta and baseline.

    With A = sum of shapes, y = G^theta:
        f = 2 theta A g G^(theta A - 1) (2 - y)^A (1 - y) / (2 - y)
    """
    if s.topology != "parallel":
        raise DomainError("closed form applies to parallel systems only")
    first = s.components[0]
    if any(c.theta != first.theta or c.baseline != first.baseline for c in s.components):
        raise DomainError("closed form needs a common theta and baseline")
    total = sum(c.alpha for c in s.components)
    theta = first.theta
    arr = _as_finite(x)
    _check_open_support(s, arr, x)
    G = first.baseline._cdf_sf(arr)[0]
    g = first.baseline._pdf(arr)
    y = G**theta
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        dens = (
            2.0 * theta * total * g
            * G ** (theta * total - 1.0)
            * (2.0 - y) ** total
            * ((1.0 - y) / (2.0 - y))
        )
    return _out(dens, x)


@dataclass(frozen=True)
class RatioCurve:
    x: np.ndarray
    ratio: np.ndarray
    flagged: np.ndarray  # True where the denominator density underflowed

    def rows(self) -> list[tuple[float, float]]:
        return list(zip(self.x.tolist(), self.ratio.tolist()))


def density_ratio_curve(sX: SystemSpec, sY: SystemSpec, grid) -> RatioCurve:
    """Pointwise f_Y / f_X as exp(log f_Y - log f_X) over a grid."""
    if sX.topology != sY.topology:
        raise DomainError("density ratios are compared between systems of the same topology")
    x = np.asarray(getattr(grid, "points", grid), dtype=float)
    _check_open_support(sX, x, "grid")
    _check_open_support(sY, x, "grid")
    log_fx = system_logpdf(sX, x)
    log_fy = system_logpdf(sY, x)
    with np.errstate(invalid="ignore", over="ignore"):
        ratio = np.exp(log_fy - log_fx)
    flagged = ~np.isfinite(log_fx) | ~np.isfinite(ratio)
    return RatioCurve(x=x, ratio=np.where(flagged, np.nan, ratio), flagged=flagged)
