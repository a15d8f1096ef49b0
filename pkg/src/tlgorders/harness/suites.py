"""Seeded randomized property suites for the ordering results.

Each trial draws parameters that satisfy a result's hypothesis, checks the
claimed conclusion on the default grid, and keeps everything needed to
replay it. Trial k of suite ``id`` uses the generator
``default_rng(SeedSequence(seed, spawn_key=(crc32(id), k)))``, so trials are
independent of each other and of the order they run in.
"""
from __future__ import annotations

import zlib
from dataclasses import dataclass, field
from typing import Any, Callable

import numpy as np

from ..baseline import BaselineSpec
from ..errors import DomainError, NumericalInconsistencyError, UnreliableGridError
from ..majorization import (
    componentwise_leq,
    is_majorized,
    is_weakly_submajorized,
    t_transforms,
    tau_convexity_check,
)
from ..orders import (
    baseline_st_order,
    build_grid,
    check_hazard_rate,
    check_likelihood_ratio,
    check_usual_stochastic,
)
from ..systems import SystemSpec, make_system

THEOREM_IDS = ("t3_1", "t3_2", "c3_1", "t3_3", "t3_4", "t3_5", "t3_6", "l2_3", "l2_4")

PARAM_LO, PARAM_HI = 0.1, 10.0
N_MIN, N_MAX = 2, 5
POOL = ("exponential", "weibull", "log_logistic", "uniform01")
# reversed-sum pairs for the lr "only if" direction differ by at least this much
MIN_SUM_GAP = 0.25


def trial_rng(theorem_id: str, seed: int, trial: int) -> np.random.Generator:
    key = zlib.crc32(theorem_id.encode())
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(key, trial)))


# -- parameter generators ----------------------------------------------------


def draw_params(rng, n) -> np.ndarray:
    return rng.uniform(PARAM_LO, PARAM_HI, size=n)


def draw_n(rng) -> int:
    return int(rng.integers(N_MIN, N_MAX + 1))


def draw_baseline(rng, family: str | None = None) -> BaselineSpec:
    family = family or POOL[int(rng.integers(len(POOL)))]
    if family == "exponential":
        return BaselineSpec(family, {"rate": rng.uniform(0.5, 2.0)})
    if family == "weibull":
        return BaselineSpec(family, {"shape": rng.uniform(1.0, 3.0), "scale": rng.uniform(0.5, 2.0)})
    if family == "log_logistic":
        return BaselineSpec(family, {"shape": rng.uniform(1.0, 4.0), "scale": rng.uniform(0.5, 2.0)})
    return BaselineSpec(family, {"scale": rng.uniform(0.5, 2.0)})


def draw_ordered_baselines(rng) -> tuple[BaselineSpec, BaselineSpec]:
    """Two same-family baselines G1, G2 with G2 <= G1 (first stochastically smaller)."""
    family = POOL[int(rng.integers(len(POOL)))]
    if family == "exponential":
        lo, hi = sorted(rng.uniform(0.5, 2.0, size=2))
        return BaselineSpec(family, {"rate": hi}), BaselineSpec(family, {"rate": lo})
    s1, s2 = sorted(rng.uniform(0.5, 2.0, size=2))
    if family == "uniform01":
        return BaselineSpec(family, {"scale": s1}), BaselineSpec(family, {"scale": s2})
    k = rng.uniform(1.0, 3.0)
    return BaselineSpec(family, {"shape": k, "scale": s1}), BaselineSpec(family, {"shape": k, "scale": s2})


def majorized_pair(rng, n) -> tuple[np.ndarray, np.ndarray]:
    """(smaller, larger) in majorization, entries within the parameter range."""
    larger = draw_params(rng, n)
    smaller = t_transforms(rng, larger, int(rng.integers(0, 3 * n + 1)))
    return smaller, larger


def weakly_submajorized_pair(rng, n) -> tuple[np.ndarray, np.ndarray]:
    smaller, larger = majorized_pair(rng, n)
    # raising entries of the dominating vector preserves weak submajorization
    bump = rng.uniform(0.0, 1.0, size=n) * (PARAM_HI - larger) * (rng.random(n) < 0.5)
    return smaller, larger + bump


def componentwise_pair(rng, n) -> tuple[np.ndarray, np.ndarray]:
    small = draw_params(rng, n)
    return small, small + rng.uniform(0.0, 1.0, size=n) * (PARAM_HI - small)


# -- per-trial evaluation ----------------------------------------------------


def _verdicts(sx: SystemSpec, sy: SystemSpec, grid=None, orders=("st", "hr", "lr")) -> dict[str, Any]:
    grid = grid if grid is not None else build_grid([sx, sy])
    out: dict[str, Any] = {"grid": [grid.lo, grid.hi]}
    checks = {"st": check_usual_stochastic, "hr": check_hazard_rate, "lr": check_likelihood_ratio}
    for name in orders:
        try:
            out[name] = checks[name](sx, sy, grid).to_dict()
        except (NumericalInconsistencyError, UnreliableGridError) as exc:
            out[name] = {"order": name, "holds": None, "error": str(exc)}
    return out


def _pair_record(claim: str, sx: SystemSpec, sy: SystemSpec, expect_holds: bool = True,
                 grid=None, **extra) -> dict:
    verdicts = _verdicts(sx, sy, grid)
    got = verdicts[claim]["holds"]
    return {
        "claim": claim,
        "expect_holds": expect_holds,
        "ok": got is expect_holds,
        "system_x": sx.to_dict(),
        "system_y": sy.to_dict(),
        "verdicts": verdicts,
        **extra,
    }


def _require(ok: bool, what: str) -> None:
    if not ok:
        raise DomainError(f"generated pair violates the {what} hypothesis")


def _trial_t3_1(rng):
    n = draw_n(rng)
    base, theta = draw_baseline(rng), float(draw_params(rng, 1)[0])
    alpha_star, alpha = majorized_pair(rng, n)
    _require(is_majorized(alpha_star, alpha, tol=1e-9), "majorization")
    return [_pair_record("hr", make_system(alpha, theta, base, "series"),
                         make_system(alpha_star, theta, base, "series"))]


def _parallel_theta_trial(rng, pair_fn, predicate):
    n = draw_n(rng)
    base, alpha = draw_baseline(rng), float(draw_params(rng, 1)[0])
    theta, theta_star = pair_fn(rng, n)
    _require(predicate(theta, theta_star), "theta ordering")
    return [_pair_record("st", make_system(alpha, theta, base, "parallel"),
                         make_system(alpha, theta_star, base, "parallel"))]


def _trial_t3_2(rng):
    return _parallel_theta_trial(rng, weakly_submajorized_pair, lambda a, b: is_weakly_submajorized(a, b, tol=1e-9))


def _trial_c3_1(rng):
    return _parallel_theta_trial(rng, majorized_pair, lambda a, b: is_majorized(a, b, tol=1e-9))


def _trial_t3_3(rng):
    return _parallel_theta_trial(rng, componentwise_pair, componentwise_leq)


def _trial_t3_4(rng):
    n = draw_n(rng)
    base, theta = draw_baseline(rng), float(draw_params(rng, 1)[0])
    while True:
        a, b = draw_params(rng, n), draw_params(rng, n)
        if abs(a.sum() - b.sum()) >= MIN_SUM_GAP:
            break
    small, large = (a, b) if a.sum() < b.sum() else (b, a)
    sx = make_system(small, theta, base, "parallel")
    sy = make_system(large, theta, base, "parallel")
    grid = build_grid([sx, sy])
    return [
        _pair_record("lr", sx, sy, expect_holds=True, grid=grid, direction="sum_x <= sum_y"),
        _pair_record("lr", sy, sx, expect_holds=False, grid=grid, direction="sum_x > sum_y"),
    ]


def _two_baseline_check(rng, g1, g2):
    grid = build_grid([g1, g2])
    rel = baseline_st_order(g1, g2, grid)
    if rel not in ("first_leq_second", "equal"):
        raise DomainError(f"generated baselines not st-ordered: {rel}")


def _trial_t3_5(rng):
    n = draw_n(rng)
    g1, g2 = draw_ordered_baselines(rng)
    _two_baseline_check(rng, g1, g2)
    theta = float(draw_params(rng, 1)[0])
    alpha_star, alpha = majorized_pair(rng, n)
    return [_pair_record("st", make_system(alpha, theta, g1, "series"),
                         make_system(alpha_star, theta, g2, "series"))]


def _trial_t3_6(rng):
    n = draw_n(rng)
    g1, g2 = draw_ordered_baselines(rng)
    _two_baseline_check(rng, g1, g2)
    alpha = float(draw_params(rng, 1)[0])
    th_w, th_w_star = weakly_submajorized_pair(rng, n)
    th_c, th_c_star = componentwise_pair(rng, n)
    return [
        _pair_record("st", make_system(alpha, th_w, g1, "parallel"),
                     make_system(alpha, th_w_star, g2, "parallel"), part="i"),
        _pair_record("st", make_system(alpha, th_c, g1, "parallel"),
                     make_system(alpha, th_c_star, g2, "parallel"), part="ii"),
    ]


def _trial_l2_3(rng):
    t = rng.uniform(0.05, 0.95)
    start = rng.uniform(PARAM_LO, PARAM_HI - 0.5)
    stop = rng.uniform(start + 0.1, PARAM_HI)
    alphas = np.linspace(start, stop, int(rng.integers(3, 12)))
    report = tau_convexity_check(t, alphas)
    return [{"claim": "tau_convex", "ok": report.passed, "t": t,
             "alphas": alphas.tolist(), "report": report.to_dict()}]


def _trial_l2_4(rng):
    n = draw_n(rng)
    x, y = majorized_pair(rng, n)
    lhs, rhs = float(np.sum(x**2)), float(np.sum(y**2))
    return [{"claim": "sum_h_schur_convex", "ok": lhs <= rhs + 1e-12,
             "x": x.tolist(), "y": y.tolist(), "lhs": lhs, "rhs": rhs}]


_TRIALS: dict[str, Callable] = {
    "t3_1": _trial_t3_1,
    "t3_2": _trial_t3_2,
    "c3_1": _trial_c3_1,
    "t3_3": _trial_t3_3,
    "t3_4": _trial_t3_4,
    "t3_5": _trial_t3_5,
    "t3_6": _trial_t3_6,
    "l2_3": _trial_l2_3,
    "l2_4": _trial_l2_4,
}


@dataclass
class SuiteReport:
    theorem_id: str
    seed: int
    trials: int
    records: list[dict] = field(default_factory=list)

    @property
    def violations(self) -> list[dict]:
        return [r for r in self.records if not r["ok"]]

    @property
    def passed(self) -> bool:
        return not self.violations

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return (f"{self.theorem_id}: {status} ({len(self.records)} checks over {self.trials} trials, "
                f"{len(self.violations)} violations, seed={self.seed})")

    def to_dict(self, include_records: bool = False) -> dict[str, Any]:
        out = {
            "theorem_id": self.theorem_id,
            "seed": self.seed,
            "trials": self.trials,
            "passed": self.passed,
            "violations": self.violations,
        }
        if include_records:
            out["records"] = self.records
        return out


def theorem_property_suite(theorem_id: str, trials: int = 200, seed: int = 0) -> SuiteReport:
    if theorem_id not in _TRIALS:
        raise DomainError(f"unknown theorem id {theorem_id!r}; expected one of {THEOREM_IDS}")
    if trials < 0:
        raise DomainError("trials must be nonnegative")
    report = SuiteReport(theorem_id=theorem_id, seed=seed, trials=trials)
    for k in range(trials):
        rng = trial_rng(theorem_id, seed, k)
        for rec in _TRIALS[theorem_id](rng):
            rec.update(trial=k, seed=seed, theorem_id=theorem_id)
            report.records.append(rec)
    return report


def implication_audit(reports) -> list[dict]:
    """Records where lr holds but hr does not, or hr holds but st does not."""
    bad = []
    for rep in reports:
        for rec in rep.records:
            v = rec.get("verdicts")
            if not v:
                continue
            st, hr, lr = (v[k]["holds"] for k in ("st", "hr", "lr"))
            if (lr and not hr) or (hr and not st):
                bad.append({"theorem_id": rep.theorem_id, "trial": rec["trial"],
                            "st": st, "hr": hr, "lr": lr})
    return bad
