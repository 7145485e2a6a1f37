from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Dict, Optional

import numpy as np

from ..hamiltonian.eom import EomSystem, StateSymbol, generate_eom
from ..hamiltonian.models import PolyHamiltonian
from .integrator import integrate
from .observables import energy_series, sector_series
from .state import SimState, Trajectory

if TYPE_CHECKING:
    from ..config.models import RunConfig

logger = logging.getLogger(__name__)


@dataclass
class SimulationSummary:
    final_time: float
    final_state: Dict[str, float]
    samples: int
    accepted_steps: int
    rejected_steps: int
    energy_initial: float
    energy_final: float
    energy_drift: float
    u_c_min: Optional[float] = None
    u_c_max: Optional[float] = None
    u_q_min: Optional[float] = None
    u_q_max: Optional[float] = None

    def to_dict(self) -> Dict[str, object]:
        return {
            "final_time": self.final_time,
            "final_state": dict(self.final_state),
            "samples": self.samples,
            "accepted_steps": self.accepted_steps,
            "rejected_steps": self.rejected_steps,
            "energy": {"initial": self.energy_initial, "final": self.energy_final, "drift": self.energy_drift},
            "uncertainty": {
                "U_c": {"min": self.u_c_min, "max": self.u_c_max},
                "U_q": {"min": self.u_q_min, "max": self.u_q_max},
            },
        }

    def render(self) -> str:
        lines = [f"t = {self.final_time!r} after {self.accepted_steps} steps ({self.samples} samples)"]
        lines.extend(f"  {name} = {value!r}" for name, value in self.final_state.items())
        lines.append(f"energy drift {self.energy_drift:.3e} (H_eff {self.energy_initial!r} -> {self.energy_final!r})")
        if self.u_c_min is not None:
            lines.append(f"U_c in [{self.u_c_min!r}, {self.u_c_max!r}]")
        if self.u_q_min is not None:
            lines.append(f"U_q in [{self.u_q_min!r}, {self.u_q_max!r}]")
        return "\n".join(lines)


@dataclass
class SimulationResult:
    system: EomSystem
    trajectory: Trajectory
    summary: SimulationSummary
    names: Dict[StateSymbol, str] = field(default_factory=dict)


def relative_drift(initial: float, final: float) -> float:
    scale = abs(initial)
    if scale == 0.0:
        return abs(final)
    return abs(final - initial) / scale


class SimulationJob:
    """RunConfig -> EomSystem -> initial SimState -> Trajectory -> summary."""

    def __init__(self, config: "RunConfig", hamiltonian: Optional[PolyHamiltonian] = None) -> None:
        self.config = config
        self.signature = config.system_signature
        self.hamiltonian = hamiltonian or config.build_hamiltonian()
        self.resolver = config.symbol_resolver()

    def build_system(self) -> EomSystem:
        return generate_eom(self.hamiltonian, self.signature, self.config.kind, self.config.truncation_order)

    def initial_state(self, system: EomSystem) -> SimState:
        return SimState.from_mapping(system, self.config.initial_values())

    def run(self, system: Optional[EomSystem] = None) -> SimulationResult:
        system = system or self.build_system()
        trajectory = integrate(system, self.initial_state(system), self.config.integrator, self.signature.hbar)
        names = self._names(system)
        summary = self.summarize(system, trajectory, names)
        logger.info("Simulation finished at t=%g with energy drift %.3e", summary.final_time, summary.energy_drift)
        return SimulationResult(system, trajectory, summary, names)

    def summarize(
        self, system: EomSystem, trajectory: Trajectory, names: Optional[Dict[StateSymbol, str]] = None
    ) -> SimulationSummary:
        names = names or {}
        final = trajectory.final
        energies = energy_series(trajectory, system, self.signature.hbar)
        summary = SimulationSummary(
            final_time=final.time,
            final_state={names.get(s, s.render()): v for s, v in zip(final.layout, final.values.tolist())},
            samples=len(trajectory),
            accepted_steps=trajectory.accepted_steps,
            rejected_steps=trajectory.rejected_steps,
            energy_initial=float(energies[0]),
            energy_final=float(energies[-1]),
            energy_drift=relative_drift(float(energies[0]), float(energies[-1])),
        )
        u_c, u_q = sector_series(trajectory, self.signature)
        if self.signature.n_classical:
            summary.u_c_min, summary.u_c_max = float(np.min(u_c)), float(np.max(u_c))
        if self.signature.n_quantum:
            summary.u_q_min, summary.u_q_max = float(np.min(u_q)), float(np.max(u_q))
        return summary

    def _names(self, system: EomSystem) -> Dict[StateSymbol, str]:
        return {symbol: self.resolver.name_of(symbol) for symbol in system.layout}
