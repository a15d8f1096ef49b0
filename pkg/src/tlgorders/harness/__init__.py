from .figures import FIGURE_IDS, FigureSeries, reproduce_figure
from .gof import GofReport, monte_carlo_gof
from .suites import THEOREM_IDS, SuiteReport, implication_audit, theorem_property_suite

__all__ = [
    "FIGURE_IDS",
    "FigureSeries",
    "reproduce_figure",
    "GofReport",
    "monte_carlo_gof",
    "THEOREM_IDS",
    "SuiteReport",
    "implication_audit",
    "theorem_property_suite",
]
