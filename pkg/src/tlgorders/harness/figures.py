"""Figure data for two worked system comparisons and their density-ratio curves.

Each figure is a one-column series over the default quantile-bounded grid,
written as CSV with '#'-prefixed metadata lines ahead of the header.
"""
from __future__ import annotations

import io
import json
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from .. import __version__
from ..baseline import exponential
from ..errors import DomainError
from ..orders import OrderVerdict, build_grid, check_hazard_rate, check_likelihood_ratio, check_usual_stochastic
from ..systems import SystemSpec, density_ratio_curve, make_system, system_cdf, system_hazard

FIGURE_IDS = ("fig1a", "fig1b", "fig2a", "fig2b")

_CAPTIONS = {
    "fig1a": "hazard rate difference r_X(x) - r_Y(x) of two 2-component series systems",
    "fig1b": "density ratio f_Y(x) / f_X(x) of the fig1a series systems",
    "fig2a": "cdf difference F_X(x) - F_Y(x) of two 2-component parallel systems",
    "fig2b": "density ratio f_Y(x) / f_X(x) of the fig2a parallel systems",
}

_EXPECTED = {
    "fig1a": "hazard_diff >= -tol at every row (X <=_hr Y)",
    "fig1b": "density_ratio non-monotone, rising then falling, one turning point",
    "fig2a": "cdf_diff >= -tol at every row (X <=_st Y)",
    "fig2b": "density_ratio non-monotone, rising then falling, one turning point",
}


def figure_systems(fig_id: str) -> tuple[SystemSpec, SystemSpec]:
    base = exponential(1.0)
    if fig_id in ("fig1a", "fig1b"):
        return (
            make_system([1.0, 9.0], 0.5, base, "series"),
            make_system([4.0, 6.0], 0.5, base, "series"),
        )
    if fig_id in ("fig2a", "fig2b"):
        return (
            make_system(0.5, [0.1, 0.4], base, "parallel"),
            make_system(0.5, [0.2, 0.5], base, "parallel"),
        )
    raise DomainError(f"unknown figure id {fig_id!r}; expected one of {FIGURE_IDS}")


@dataclass
class FigureSeries:
    figure_id: str
    column: str
    x: np.ndarray
    values: np.ndarray
    verdict: OrderVerdict
    matches_expected: bool
    metadata: dict[str, Any] = field(default_factory=dict)

    def to_csv(self) -> str:
        buf = io.StringIO()
        for key, value in self.metadata.items():
            text = value if isinstance(value, str) else json.dumps(value, sort_keys=True)
            buf.write(f"# {key}: {text}\n")
        buf.write(f"x,{self.column}\n")
        for xi, vi in zip(self.x.tolist(), self.values.tolist()):
            buf.write(f"{xi:.17g},{vi:.17g}\n")
        return buf.getvalue()

    def write_csv(self, path) -> None:
        with open(path, "w", newline="") as fh:
            fh.write(self.to_csv())


def _one_rise_then_fall(verdict: OrderVerdict) -> bool:
    if verdict.monotone_class != "non-monotone" or len(verdict.turning_points) != 1:
        return False
    # a single turning point between a rising and a falling run; the witness
    # stores (x, ratio before, ratio at turn)
    x_turn, before, at_turn = verdict.witness
    return at_turn >= before


def reproduce_figure(
    fig_id: str,
    grid_count: int = 512,
    q_lo: float = 0.001,
    q_hi: float = 0.999,
    spacing: str = "linear",
) -> FigureSeries:
    sx, sy = figure_systems(fig_id)
    grid = build_grid([sx, sy], q_lo=q_lo, q_hi=q_hi, count=grid_count, spacing=spacing)
    x = grid.points
    if fig_id == "fig1a":
        column = "hazard_diff"
        values = np.asarray(system_hazard(sx, x)) - np.asarray(system_hazard(sy, x))
        verdict = check_hazard_rate(sx, sy, grid)
        ok = verdict.holds
    elif fig_id == "fig2a":
        column = "cdf_diff"
        values = np.asarray(system_cdf(sx, x)) - np.asarray(system_cdf(sy, x))
        verdict = check_usual_stochastic(sx, sy, grid)
        ok = verdict.holds
    else:
        column = "density_ratio"
        curve = density_ratio_curve(sx, sy, grid)
        values = curve.ratio
        verdict = check_likelihood_ratio(sx, sy, grid)
        ok = _one_rise_then_fall(verdict)

    if not np.all(np.isfinite(values)):
        raise DomainError(f"{fig_id}: non-finite values on the grid")
    metadata = {
        "figure": fig_id,
        "caption": _CAPTIONS[fig_id],
        "system_x": sx.to_dict(),
        "system_y": sy.to_dict(),
        **grid.metadata(),
        "seed": None,
        "library_version": __version__,
        "expected": _EXPECTED[fig_id],
        "verdict": verdict.to_dict(),
        "matches_expected": ok,
    }
    return FigureSeries(
        figure_id=fig_id,
        column=column,
        x=x,
        values=values,
        verdict=verdict,
        matches_expected=ok,
        metadata=metadata,
    )
