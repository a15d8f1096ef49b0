"""Vector orders (majorization, weak submajorization, componentwise) and
numerical Schur-convexity / convexity checks.

Sorting is ascending throughout, so ``sorted(x)[0]`` is the smallest entry.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .errors import DomainError

PREDICATE_TOL = 1e-12
FD_STEP = 1e-5


def _pair(x, y) -> tuple[np.ndarray, np.ndarray]:
    a = np.asarray(x, dtype=float).ravel()
    b = np.asarray(y, dtype=float).ravel()
    if a.size == 0 or a.size != b.size:
        raise DomainError(f"vectors must be nonempty and of equal length, got {a.size} and {b.size}")
    if not (np.all(np.isfinite(a)) and np.all(np.isfinite(b))):
        raise DomainError("vector entries must be finite")
    return a, b


def is_majorized(x: Sequence[float], y: Sequence[float], tol: float = PREDICATE_TOL) -> bool:
    """True iff x is majorized by y: equal totals, and every partial sum of the
    smallest entries of x dominates the corresponding partial sum for y."""
    a, b = _pair(x, y)
    pa = np.cumsum(np.sort(a))
    pb = np.cumsum(np.sort(b))
    if abs(pa[-1] - pb[-1]) > tol:
        return False
    return bool(np.all(pa[:-1] >= pb[:-1] - tol))


def is_weakly_submajorized(x: Sequence[float], y: Sequence[float], tol: float = PREDICATE_TOL) -> bool:
    """True iff every sum of the i largest entries of x is at most that of y."""
    a, b = _pair(x, y)
    sa = np.cumsum(np.sort(a)[::-1])
    sb = np.cumsum(np.sort(b)[::-1])
    return bool(np.all(sa <= sb + tol))


def componentwise_leq(x: Sequence[float], y: Sequence[float]) -> bool:
    a, b = _pair(x, y)
    return bool(np.all(a <= b))


# -- generators --------------------------------------------------------------


def robin_hood_transfer(v: np.ndarray, i: int, j: int, amount: float) -> np.ndarray:
    """Move ``amount`` from entry i to entry j; requires v[i] >= v[j] and
    amount <= (v[i] - v[j]) / 2 so the two entries do not swap order."""
    v = np.array(v, dtype=float)
    gap = v[i] - v[j]
    if gap < 0 or amount < 0 or amount > gap / 2 * (1 + 1e-15):
        raise DomainError(f"transfer of {amount} from {v[i]} to {v[j]} would cross")
    v[i] -= amount
    v[j] += amount
    return v


def t_transforms(rng: np.random.Generator, y: Sequence[float], transfers: int) -> np.ndarray:
    """Apply random Robin-Hood transfers to y; the result is majorized by y."""
    x = np.array(y, dtype=float)
    n = x.size
    for _ in range(transfers):
        i, j = rng.choice(n, size=2, replace=False)
        if x[i] < x[j]:
            i, j = j, i
        gap = x[i] - x[j]
        if gap <= 0:
            continue
        # uniform on (0, gap/2]
        x = robin_hood_transfer(x, i, j, gap / 2 * (1.0 - rng.random()))
    return x


def random_majorization_pair(
    rng: np.random.Generator, n: int, total: float, transfers: int
) -> tuple[np.ndarray, np.ndarray]:
    """Return (x, y), both positive with the given total, x majorized by y."""
    if n < 2:
        raise DomainError(f"need at least two entries, got n={n}")
    if not total > 0:
        raise DomainError(f"total must be positive, got {total}")
    y = total * rng.dirichlet(np.ones(n))
    x = t_transforms(rng, y, transfers)
    return x, y


# -- numerical Schur / convexity checks -------------------------------------


@dataclass
class CheckReport:
    passed: bool
    worst: float
    tol: float
    witness: tuple | None = None
    values: list[float] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "passed": self.passed,
            "worst": self.worst,
            "tol": self.tol,
            "witness": list(self.witness) if self.witness is not None else None,
        }


def _gradient(psi: Callable[[np.ndarray], float], v: np.ndarray, step: float) -> np.ndarray:
    grad = np.empty_like(v)
    for k in range(v.size):
        h = step * max(1.0, abs(v[k]))
        up, down = v.copy(), v.copy()
        up[k] += h
        down[k] -= h
        grad[k] = (psi(up) - psi(down)) / (2 * h)
    return grad


def schur_concavity_witness(
    psi: Callable[[np.ndarray], float],
    v: Sequence[float],
    step: float = FD_STEP,
    tol: float = 1e-8,
    convex: bool = False,
) -> CheckReport:
    """Check the pairwise derivative condition for Schur-concavity at v.

    Computes max over k != l of (v_k - v_l)(d_k psi - d_l psi) with central
    differences; concavity needs this to be <= 0. With ``convex=True`` the sign
    is flipped and the check is for Schur-convexity.
    """
    if not step > 0:
        raise DomainError("finite-difference step must be positive")
    vec = np.asarray(v, dtype=float)
    grad = _gradient(psi, vec, step)
    sign = -1.0 if convex else 1.0
    worst, witness = -np.inf, None
    terms = []
    for k, l in itertools.combinations(range(vec.size), 2):
        term = sign * (vec[k] - vec[l]) * (grad[k] - grad[l])
        terms.append(float(term))
        if term > worst:
            worst, witness = float(term), (k, l)
    if not terms:
        worst = 0.0
    return CheckReport(passed=worst <= tol, worst=worst, tol=tol, witness=witness, values=terms)


def tau(alpha, t: float):
    """alpha t^(alpha - 1) / (1 - t^alpha)."""
    a = np.asarray(alpha, dtype=float)
    return a * t ** (a - 1.0) / -np.expm1(a * np.log(t))


def tau_convexity_check(t: float, alphas: Sequence[float], tol: float = 1e-12) -> CheckReport:
    """Second differences of tau over an equally spaced alpha grid must be >= 0.

    The tolerance is relative to the largest |tau| on the grid.
    """
    if not 0.0 < t < 1.0:
        raise DomainError(f"t must lie in (0, 1), got {t}")
    a = np.asarray(alphas, dtype=float)
    if a.size < 3 or np.any(a <= 0):
        raise DomainError("need at least three positive alphas")
    steps = np.diff(a)
    # spacing noise from rounding the alphas themselves is tolerated
    slack = 8 * np.finfo(float).eps * float(np.max(a))
    if np.any(steps <= 0) or not np.allclose(steps, steps[0], rtol=1e-9, atol=slack):
        raise DomainError("alphas must be strictly increasing and equally spaced")
    values = tau(a, t)
    second = values[:-2] - 2.0 * values[1:-1] + values[2:]
    scaled_tol = tol * max(1.0, float(np.max(np.abs(values))))
    k = int(np.argmin(second))
    worst = float(second[k])
    passed = worst >= -scaled_tol
    return CheckReport(
        passed=passed,
        worst=worst,
        tol=scaled_tol,
        witness=None if passed else (float(a[k + 1]), worst),
        values=second.tolist(),
    )
