from .compiled import CompiledRhs, compile_rhs, evaluate_rhs
from .integrator import integrate, integrate_rk4, integrate_rkf45, rk4_step, rkf45_step
from .job import SimulationJob, SimulationResult, SimulationSummary
from .observables import (
    SectorUncertainties,
    dof_uncertainty,
    energy,
    energy_series,
    second_order_keys,
    sector_series,
    uncertainties,
    uncertainty_series,
)
from .state import IntegrationMethod, IntegratorConfig, SimState, Trajectory

__all__ = [
    "CompiledRhs",
    "compile_rhs",
    "dof_uncertainty",
    "energy",
    "energy_series",
    "evaluate_rhs",
    "integrate",
    "integrate_rk4",
    "integrate_rkf45",
    "IntegrationMethod",
    "IntegratorConfig",
    "rk4_step",
    "rkf45_step",
    "second_order_keys",
    "sector_series",
    "SectorUncertainties",
    "SimState",
    "SimulationJob",
    "SimulationResult",
    "SimulationSummary",
    "Trajectory",
    "uncertainties",
    "uncertainty_series",
]
