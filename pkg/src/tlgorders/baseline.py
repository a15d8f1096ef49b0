"""Baseline (parent) distributions G(x; xi) plugged into the TL-G generator.

Every function accepts a scalar or an array of abscissae and returns the same
shape back (a Python float for scalar input).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, Mapping

import numpy as np

from .errors import DomainError

FAMILIES = ("uniform01", "exponential", "weibull", "log_logistic")

# required parameter names and defaults (None = required)
_PARAMS: dict[str, dict[str, float | None]] = {
    "uniform01": {"scale": 1.0},
    "exponential": {"rate": None},
    "weibull": {"shape": None, "scale": 1.0},
    "log_logistic": {"shape": None, "scale": 1.0},
}


def _as_finite(x, name="x"):
    arr = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise DomainError(f"{name} must be finite, got {x!r}")
    return arr


def _as_probability(u, name="u"):
    arr = np.asarray(u, dtype=float)
    if not np.all((arr >= 0.0) & (arr <= 1.0)):
        raise DomainError(f"{name} must lie in [0, 1], got {u!r}")
    return arr


def _out(arr, like):
    if np.ndim(like) == 0:
        return float(arr)
    return arr


@dataclass(frozen=True)
class BaselineSpec:
    """A parent lifetime distribution with support on the nonnegative reals.

    ``uniform01`` accepts an optional ``scale`` b (uniform on (0, b), default 1);
    ``exponential`` needs ``rate``; ``weibull`` and ``log_logistic`` need
    ``shape`` and accept ``scale`` (default 1).
    """

    family: str
    params: Mapping[str, float] = field(default_factory=dict)

    def __post_init__(self):
        if self.family not in _PARAMS:
            raise DomainError(f"unknown baseline family {self.family!r}; expected one of {FAMILIES}")
        spec = _PARAMS[self.family]
        unknown = set(self.params) - set(spec)
        if unknown:
            raise DomainError(f"unexpected parameters {sorted(unknown)} for {self.family}")
        resolved = {}
        for name, default in spec.items():
            value = self.params.get(name, default)
            if value is None:
                raise DomainError(f"{self.family} baseline requires parameter {name!r}")
            value = float(value)
            if not (math.isfinite(value) and value > 0):
                raise DomainError(f"parameter {name!r} must be positive and finite, got {value!r}")
            resolved[name] = value
        object.__setattr__(self, "params", resolved)

    def __hash__(self):
        return hash((self.family, tuple(sorted(self.params.items()))))

    @property
    def support_lo(self) -> float:
        return 0.0

    @property
    def support_hi(self) -> float:
        if self.family == "uniform01":
            return self.params["scale"]
        return math.inf

    # -- core evaluations on arrays, no validation --------------------------

    def _cdf_sf(self, x: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """Return (G, 1 - G), each computed without cancellation."""
        p = self.params
        xp = np.maximum(x, 0.0)
        with np.errstate(over="ignore", divide="ignore", invalid="ignore"):
            if self.family == "uniform01":
                G = np.clip(x / p["scale"], 0.0, 1.0)
                return G, 1.0 - G
            if self.family == "exponential":
                z = p["rate"] * xp
            elif self.family == "weibull":
                z = (xp / p["scale"]) ** p["shape"]
            else:  # log_logistic
                z = (xp / p["scale"]) ** p["shape"]
                return z / (1.0 + z), 1.0 / (1.0 + z)
            return -np.expm1(-z), np.exp(-z)

    def _pdf(self, x: np.ndarray) -> np.ndarray:
        p = self.params
        inside = x >= 0.0
        xp = np.where(inside, x, 1.0)
        with np.errstate(over="ignore", divide="ignore", invalid="ignore"):
            if self.family == "uniform01":
                b = p["scale"]
                return np.where(inside & (x <= b), 1.0 / b, 0.0)
            if self.family == "exponential":
                lam = p["rate"]
                d = lam * np.exp(-lam * xp)
            elif self.family == "weibull":
                k, s = p["shape"], p["scale"]
                z = xp / s
                d = (k / s) * z ** (k - 1.0) * np.exp(-(z**k))
            else:
                k, s = p["shape"], p["scale"]
                z = xp / s
                d = (k / s) * z ** (k - 1.0) / (1.0 + z**k) ** 2
        return np.where(inside, d, 0.0)

    def _logcdf(self, x: np.ndarray) -> np.ndarray:
        G, S = self._cdf_sf(x)
        with np.errstate(divide="ignore"):
            return np.where(G < 0.5, np.log(G), np.log1p(-S))

    def _quantile(self, u: np.ndarray) -> np.ndarray:
        p = self.params
        with np.errstate(divide="ignore", over="ignore"):
            if self.family == "uniform01":
                return u * p["scale"]
            if self.family == "exponential":
                return -np.log1p(-u) / p["rate"]
            if self.family == "weibull":
                return p["scale"] * (-np.log1p(-u)) ** (1.0 / p["shape"])
            return p["scale"] * (u / (1.0 - u)) ** (1.0 / p["shape"])

    def _isf(self, s: np.ndarray) -> np.ndarray:
        """Inverse survival: x with 1 - G(x) = s, accurate for small s."""
        p = self.params
        with np.errstate(divide="ignore", over="ignore"):
            if self.family == "uniform01":
                return (1.0 - s) * p["scale"]
            if self.family == "exponential":
                return -np.log(s) / p["rate"]
            if self.family == "weibull":
                return p["scale"] * (-np.log(s)) ** (1.0 / p["shape"])
            return p["scale"] * ((1.0 - s) / s) ** (1.0 / p["shape"])

    # -- public scalar/array API --------------------------------------------

    def cdf(self, x):
        arr = _as_finite(x)
        return _out(self._cdf_sf(arr)[0], x)

    def sf(self, x):
        arr = _as_finite(x)
        return _out(self._cdf_sf(arr)[1], x)

    def pdf(self, x):
        arr = _as_finite(x)
        return _out(self._pdf(arr), x)

    def quantile(self, u):
        arr = _as_probability(u)
        return _out(self._quantile(arr), u)

    def to_dict(self) -> dict[str, Any]:
        return {"family": self.family, "params": dict(self.params)}

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "BaselineSpec":
        try:
            return cls(family=data["family"], params=dict(data.get("params", {})))
        except (KeyError, TypeError) as exc:
            raise DomainError(f"malformed baseline object {data!r}") from exc


def baseline_cdf(spec: BaselineSpec, x):
    """G(x; xi); 0 below the support and 1 above it."""
    return spec.cdf(x)


def baseline_pdf(spec: BaselineSpec, x):
    return spec.pdf(x)


def baseline_quantile(spec: BaselineSpec, u):
    """Smallest x with G(x) >= u; u in {0, 1} maps to the support endpoints."""
    return spec.quantile(u)


def exponential(rate: float = 1.0) -> BaselineSpec:
    return BaselineSpec("exponential", {"rate": rate})
