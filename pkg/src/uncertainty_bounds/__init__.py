"""Lower bounds on products of standard deviations of several observables."""

from .bounds import BoundReport, bound_report
from .quantum import Observable, QuantumState, correlations, deviation, pauli
from .search import SearchConfig, tightness_search

__version__ = "0.1.0"

__all__ = [
    "BoundReport",
    "Observable",
    "QuantumState",
    "SearchConfig",
    "bound_report",
    "correlations",
    "deviation",
    "pauli",
    "tightness_search",
]
