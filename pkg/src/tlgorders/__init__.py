"""Topp-Leone generated lifetimes, series/parallel systems of them, and
numerical checks of stochastic orders and majorization relations."""

__version__ = "0.1.0"

from .baseline import BaselineSpec, baseline_cdf, baseline_pdf, baseline_quantile, exponential
from .errors import DomainError, NumericalInconsistencyError, UnreliableGridError
from .majorization import (
    componentwise_leq,
    is_majorized,
    is_weakly_submajorized,
    random_majorization_pair,
    schur_concavity_witness,
    tau_convexity_check,
)
from .orders import (
    EvaluationGrid,
    OrderVerdict,
    baseline_st_order,
    build_grid,
    check_hazard_rate,
    check_likelihood_ratio,
    check_usual_stochastic,
)
from .systems import (
    SystemSpec,
    density_ratio_curve,
    make_system,
    system_cdf,
    system_hazard,
    system_pdf,
    system_survival,
)
from .tlg import TLGParams, tlg_cdf, tlg_hazard, tlg_pdf, tlg_quantile, tlg_sample, tlg_survival

__all__ = [name for name in dir() if not name.startswith("_")]
