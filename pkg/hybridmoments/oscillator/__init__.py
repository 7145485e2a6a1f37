from .analytic import (
    analytic_centroid,
    analytic_moment,
    centroid_map,
    classical_second_moments,
    conservation_residual,
    g_function,
    index_to_key,
    key_to_index,
    uncertainty_functions,
)
from .bounds import BoundReport, bound_report, hybrid_floor, max_uncertainty_bound, quantum_pair_floor
from .params import OscillatorParams, Regime, recurrence_time, regime

__all__ = [
    "analytic_centroid",
    "analytic_moment",
    "bound_report",
    "BoundReport",
    "centroid_map",
    "classical_second_moments",
    "conservation_residual",
    "g_function",
    "hybrid_floor",
    "index_to_key",
    "key_to_index",
    "max_uncertainty_bound",
    "OscillatorParams",
    "quantum_pair_floor",
    "recurrence_time",
    "Regime",
    "regime",
    "uncertainty_functions",
]
