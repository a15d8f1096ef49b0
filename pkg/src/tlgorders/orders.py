"""Grid-based checks of the usual stochastic, hazard rate and likelihood ratio orders.

Every check is a semidecision: ``holds=True`` means no violation was found on
the grid, not that the ordering holds for all x. The orders follow the
convention "X is smaller than Y":

    st:  F_Y(x) <= F_X(x)
    hr:  r_X(x) >= r_Y(x), equivalently S_Y / S_X nondecreasing
    lr:  f_Y / f_X nondecreasing
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, Sequence, Union

import numpy as np
from scipy.optimize import brentq

from . import systems, tlg
from .baseline import BaselineSpec
from .errors import DomainError, NumericalInconsistencyError, UnreliableGridError
from .systems import SystemSpec
from .tlg import TLGParams

DOMINANCE_TOL = 1e-9
MONOTONE_TOL = 1e-9
MIN_RUN = 3
MAX_FLAGGED_FRACTION = 0.01
# an hr formulation only overrules the other when it fails by this multiple of tol
INCONSISTENCY_FACTOR = 1e3
# tail probability levels probed beyond each grid end by the lr check
TAIL_PROBES = (1e-4, 1e-6, 1e-8)

Distribution = Union[BaselineSpec, TLGParams, SystemSpec]


def _as_system(d: TLGParams | SystemSpec) -> SystemSpec:
    if isinstance(d, SystemSpec):
        return d
    if isinstance(d, TLGParams):
        return SystemSpec((d,), "series")
    raise DomainError(f"expected TLGParams or SystemSpec, got {type(d).__name__}")


def support_of(d: Distribution) -> tuple[float, float]:
    if isinstance(d, BaselineSpec):
        return d.support_lo, d.support_hi
    return d.support


def quantile_of(d: Distribution, u: float) -> float:
    if isinstance(d, BaselineSpec):
        return float(d.quantile(u))
    if isinstance(d, TLGParams):
        return float(tlg.tlg_quantile(d, u))
    return system_quantile(d, u)


def system_quantile(s: SystemSpec, u: float) -> float:
    """Root of the system cdf, bracketed by component quantiles."""
    if s.n == 1:
        return float(tlg.tlg_quantile(s.components[0], u))
    if u <= 0.0 or u >= 1.0:
        lo, hi = s.support
        return lo if u <= 0 else hi
    n = s.n
    qs = lambda p: [float(tlg.tlg_quantile(c, p)) for c in s.components]  # noqa: E731
    if s.topology == "parallel":
        # prod F_k = u needs every F_k >= u, and is guaranteed once every F_k >= u^(1/n)
        a, b = max(qs(u)), max(qs(u ** (1.0 / n)))
    else:
        a, b = min(qs(-math.expm1(math.log1p(-u) / n))), min(qs(u))
    # log scale keeps both tails resolvable; h is increasing in z
    if u < 0.5:
        target = math.log(u)
        h = lambda z: float(systems.system_logcdf(s, np.asarray(z))) - target  # noqa: E731
    else:
        target = math.log1p(-u)
        h = lambda z: target - float(systems.system_logsf(s, np.asarray(z)))  # noqa: E731
    a, b = min(a, b), max(a, b)
    ha, hb = h(a), h(b)
    if ha >= 0 or hb <= 0:
        # bracket endpoints are themselves quantiles, exact up to rounding
        return a if abs(ha) <= abs(hb) else b
    return brentq(h, a, b, xtol=1e-15 * b, rtol=1e-15)


# -- grids -------------------------------------------------------------------


@dataclass(frozen=True)
class EvaluationGrid:
    points: np.ndarray
    q_lo: float = 0.001
    q_hi: float = 0.999
    count: int = 512
    spacing: str = "linear"

    @property
    def lo(self) -> float:
        return float(self.points[0])

    @property
    def hi(self) -> float:
        return float(self.points[-1])

    def metadata(self) -> dict[str, Any]:
        return {
            "grid_lo": self.lo,
            "grid_hi": self.hi,
            "q_lo": self.q_lo,
            "q_hi": self.q_hi,
            "count": self.count,
            "spacing": self.spacing,
        }


def build_grid(
    specs: Sequence[Distribution],
    q_lo: float = 0.001,
    q_hi: float = 0.999,
    count: int = 512,
    spacing: str = "linear",
) -> EvaluationGrid:
    """Grid from the smallest q_lo-quantile to the largest q_hi-quantile of the
    given distributions, clipped to the inside of their common support."""
    if not specs:
        raise DomainError("need at least one distribution to build a grid")
    if not 0.0 < q_lo < q_hi < 1.0:
        raise DomainError(f"need 0 < q_lo < q_hi < 1, got {q_lo}, {q_hi}")
    if count < 16:
        raise DomainError(f"grid count must be at least 16, got {count}")
    if spacing not in ("linear", "geometric"):
        raise DomainError(f"unknown spacing {spacing!r}")
    lo = min(quantile_of(d, q_lo) for d in specs)
    hi = max(quantile_of(d, q_hi) for d in specs)
    s_lo = max(support_of(d)[0] for d in specs)
    s_hi = min(support_of(d)[1] for d in specs)
    lo, hi = max(lo, s_lo), min(hi, s_hi)
    if not hi > lo:
        raise DomainError(f"empty grid: [{lo}, {hi}] after intersecting supports")
    pad = 1e-9 * (hi - lo)
    if lo <= s_lo:
        lo = s_lo + pad
    if hi >= s_hi:
        hi = s_hi - pad
    if spacing == "geometric":
        if lo <= 0:
            raise DomainError("geometric spacing needs a positive lower end")
        points = np.geomspace(lo, hi, count)
    else:
        points = np.linspace(lo, hi, count)
    if not np.all(np.diff(points) > 0):
        raise DomainError("grid collapsed; quantile range too narrow for the requested count")
    return EvaluationGrid(points=points, q_lo=q_lo, q_hi=q_hi, count=count, spacing=spacing)


def _points(grid, X, Y) -> np.ndarray:
    x = np.asarray(getattr(grid, "points", grid), dtype=float)
    for d in (X, Y):
        lo, hi = support_of(d)
        if not np.all((x > lo) & (x < hi)):
            raise DomainError(f"grid leaves the open support ({lo}, {hi})")
    return x


# -- verdicts ----------------------------------------------------------------


@dataclass
class OrderVerdict:
    order: str
    holds: bool
    min_margin: float
    witness: tuple[float, float, float] | None = None
    monotone_class: str | None = None
    turning_points: list[tuple[float, float]] = field(default_factory=list)
    flagged: int = 0
    tol: float = DOMINANCE_TOL

    def to_dict(self) -> dict[str, Any]:
        return {
            "order": self.order,
            "holds": self.holds,
            "witness": list(self.witness) if self.witness is not None else None,
            "min_margin": self.min_margin,
            "monotone_class": self.monotone_class,
            "turning_points": [list(tp) for tp in self.turning_points],
        }


def _dominance(order: str, x, lhs, rhs, tol) -> OrderVerdict:
    """Verdict for lhs <= rhs pointwise; margin = rhs - lhs."""
    margin = rhs - lhs
    k = int(np.argmin(margin))
    min_margin = float(margin[k])
    holds = min_margin >= -tol
    witness = None
    if not holds:
        first = int(np.argmax(margin < -tol))
        witness = (float(x[first]), float(lhs[first]), float(rhs[first]))
    return OrderVerdict(order=order, holds=holds, min_margin=min_margin, witness=witness, tol=tol)


def check_usual_stochastic(X, Y, grid, tol: float = DOMINANCE_TOL) -> OrderVerdict:
    """X <=_st Y on the grid: F_Y - F_X <= tol everywhere."""
    x = _points(grid, X, Y)
    fx = np.asarray(cdf_of(X, x))
    fy = np.asarray(cdf_of(Y, x))
    return _dominance("st", x, fy, fx, tol)


def check_hazard_rate(X, Y, grid, tol: float = DOMINANCE_TOL) -> OrderVerdict:
    """X <=_hr Y on the grid.

    Primary: r_X - r_Y >= -tol pointwise. Cross-check: the log survival ratio
    log(S_Y / S_X) must not decrease; its difference quotient between grid
    points is the interval-averaged hazard gap, so it shares the same units
    and tolerance. A disagreement where the failing side misses by more than
    INCONSISTENCY_FACTOR * tol raises NumericalInconsistencyError; otherwise
    the pointwise criterion decides.
    """
    x = _points(grid, X, Y)
    sx, sy = _as_system(X), _as_system(Y)
    rx = np.asarray(systems.system_hazard(sx, x))
    ry = np.asarray(systems.system_hazard(sy, x))
    if not (np.all(np.isfinite(rx)) and np.all(np.isfinite(ry))):
        raise DomainError("hazard rate undefined (survival underflow) at a grid point")
    verdict = _dominance("hr", x, ry, rx, tol)

    log_ratio = systems.system_logsf(sy, x) - systems.system_logsf(sx, x)
    slope = np.diff(log_ratio) / np.diff(x)
    k = int(np.argmin(slope))
    cross_min = float(slope[k])
    cross_holds = cross_min >= -tol
    if cross_holds != verdict.holds:
        failing = verdict.min_margin if not verdict.holds else cross_min
        if failing < -INCONSISTENCY_FACTOR * tol:
            raise NumericalInconsistencyError(
                f"hazard gap ({verdict.min_margin:.3e}) and survival-ratio slope "
                f"({cross_min:.3e}, near x={x[k]:.6g}) disagree"
            )
    return verdict


def _sign_runs(signs: np.ndarray) -> list[list[int]]:
    """Runs of equal nonzero signs as [sign, start, stop) triples; zeros are skipped."""
    runs: list[list[int]] = []
    for i, s in enumerate(signs):
        if s == 0:
            continue
        if runs and runs[-1][0] == s:
            runs[-1][2] = i + 1
        else:
            runs.append([int(s), i, i + 1])
    return runs


def classify_monotone(values: np.ndarray, tol: float = MONOTONE_TOL, min_run: int = MIN_RUN):
    """Classify a sequence as increasing/decreasing/constant/non-monotone.

    A difference counts as a rise (fall) only when it exceeds tol*(1+|v|).
    Runs shorter than ``min_run`` are treated as chatter and dropped before
    looking for sign changes. Returns (class, list of turning-point indices).
    """
    v = np.asarray(values, dtype=float)
    d = np.diff(v)
    scale = tol * (1.0 + np.maximum(np.abs(v[:-1]), np.abs(v[1:])))
    signs = np.where(d > scale, 1, np.where(d < -scale, -1, 0))
    if not np.any(signs):
        return "constant", []
    runs = [r for r in _sign_runs(signs) if r[2] - r[1] >= min_run]
    merged: list[list[int]] = []
    for r in runs:
        if merged and merged[-1][0] == r[0]:
            merged[-1][2] = r[2]
        else:
            merged.append(list(r))
    if not merged:
        # only chatter: fall back to the raw signs
        has_up, has_down = bool(np.any(signs > 0)), bool(np.any(signs < 0))
        if has_up and not has_down:
            return "increasing", []
        if has_down and not has_up:
            return "decreasing", []
        return "constant", []
    if len(merged) == 1:
        return ("increasing" if merged[0][0] > 0 else "decreasing"), []
    # the turning point is the grid index where the earlier run ends
    turns = [merged[i][2] for i in range(len(merged) - 1)]
    return "non-monotone", turns


def _tail_points(sx: SystemSpec, sy: SystemSpec, lo: float, hi: float):
    """Abscissae beyond the grid ends: extreme component quantiles of either system."""
    s_lo = max(sx.support[0], sy.support[0])
    s_hi = min(sx.support[1], sy.support[1])
    levels = np.array(TAIL_PROBES)
    pts = np.concatenate(
        [np.asarray(tlg.tlg_quantile(c, np.concatenate([levels, 1.0 - levels])))
         for c in sx.components + sy.components]
    )
    pts = np.unique(pts[np.isfinite(pts)])
    below = pts[(pts > s_lo) & (pts < lo)]
    above = pts[(pts > hi) & (pts < s_hi)]
    return below, above


def check_likelihood_ratio(X, Y, grid, tol: float = MONOTONE_TOL, tails: bool = True) -> OrderVerdict:
    """X <=_lr Y on the grid: f_Y / f_X classified increasing or constant.

    When the grid alone looks increasing or constant, the ratio is also
    evaluated at a few extreme quantiles beyond each grid end (``tails``); a
    ratio above the first grid value below the grid, or below the last grid
    value above it, by more than the monotone tolerance makes the curve
    non-monotone with the turn at that grid end.
    """
    x = _points(grid, X, Y)
    sx, sy = _as_system(X), _as_system(Y)
    if sx.topology != sy.topology and (sx.n > 1 or sy.n > 1):
        raise DomainError("likelihood ratio check compares systems of the same topology")
    if sx.topology != sy.topology:
        sy = SystemSpec(sy.components, sx.topology)
    curve = systems.density_ratio_curve(sx, sy, x)
    n_flag = int(np.sum(curve.flagged))
    if n_flag > MAX_FLAGGED_FRACTION * x.size:
        raise UnreliableGridError(f"{n_flag} of {x.size} grid points have an underflowed density")
    keep = ~curve.flagged
    xs, ratio = x[keep], curve.ratio[keep]
    cls, turns = classify_monotone(ratio, tol)
    d = np.diff(ratio)
    scale = tol * (1.0 + np.maximum(np.abs(ratio[:-1]), np.abs(ratio[1:])))
    slack = d + scale  # >= 0 where the step is not a clear fall
    min_margin = float(np.min(slack)) if slack.size else 0.0
    turning = [(float(xs[i]), float(ratio[i])) for i in turns]
    witness = None
    if cls == "non-monotone":
        i = turns[0]
        witness = (float(xs[i]), float(ratio[i - 1]), float(ratio[i]))
    elif cls == "decreasing":
        i = int(np.argmin(slack))
        witness = (float(xs[i + 1]), float(ratio[i]), float(ratio[i + 1]))
    elif tails and xs.size:
        below, above = _tail_points(sx, sy, float(xs[0]), float(xs[-1]))
        r_lo, r_hi = float(ratio[0]), float(ratio[-1])
        for xt, end, r_end, sign in [(above, -1, r_hi, -1.0), (below, 0, r_lo, 1.0)]:
            if xt.size == 0:
                continue
            rt = systems.density_ratio_curve(sx, sy, xt).ratio
            # sign * (r_tail - r_end) > 0 means the ratio falls past the top end
            # or rises below the bottom end
            excess = sign * (rt - r_end) - tol * (1.0 + np.maximum(np.abs(rt), abs(r_end)))
            excess = np.where(np.isfinite(excess), excess, -np.inf)
            j = int(np.argmax(excess))
            if excess[j] > 0:
                cls = "non-monotone"
                min_margin = min(min_margin, -float(excess[j]))
                turning = [(float(xs[end]), r_end)]
                witness = (float(xt[j]), r_end, float(rt[j]))
                break
    holds = cls in ("increasing", "constant")
    return OrderVerdict(
        order="lr",
        holds=holds,
        min_margin=min_margin,
        witness=witness,
        monotone_class=cls,
        turning_points=turning,
        flagged=n_flag,
        tol=tol,
    )


def baseline_st_order(G1: BaselineSpec, G2: BaselineSpec, grid, tol: float = DOMINANCE_TOL) -> str:
    """Compare two baselines in the usual stochastic order on a grid.

    Returns ``first_leq_second`` when G2 <= G1 everywhere (the first is
    stochastically smaller), ``second_leq_first`` for the reverse, ``equal``
    when both hold and ``incomparable`` when the cdfs cross.
    """
    x = np.asarray(getattr(grid, "points", grid), dtype=float)
    if x.size == 0 or not np.all(np.isfinite(x)):
        raise DomainError("grid must be a nonempty array of finite points")
    diff = np.asarray(G1.cdf(x)) - np.asarray(G2.cdf(x))
    first = bool(np.all(diff >= -tol))
    second = bool(np.all(diff <= tol))
    if first and second:
        return "equal"
    if first:
        return "first_leq_second"
    if second:
        return "second_leq_first"
    return "incomparable"


def cdf_of(d: Distribution, x):
    if isinstance(d, BaselineSpec):
        return d.cdf(x)
    if isinstance(d, TLGParams):
        return tlg.tlg_cdf(d, x)
    return systems.system_cdf(d, x)
