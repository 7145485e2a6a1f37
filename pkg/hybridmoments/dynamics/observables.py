from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Tuple

import numpy as np

from ..hamiltonian.eom import EomSystem
from ..moments.types import MomentKey, SystemSignature
from .state import SimState, Trajectory


def second_order_keys(n_dof: int, dof_index: int) -> Tuple[MomentKey, MomentKey, MomentKey]:
    """Δ(q²), Δ(p²), Δ(qp) of one degree of freedom."""
    def single(a: int, b: int) -> MomentKey:
        pairs = [(0, 0)] * n_dof
        pairs[dof_index - 1] = (a, b)
        return MomentKey(tuple(pairs))

    return single(2, 0), single(0, 2), single(1, 1)


@dataclass(frozen=True)
class SectorUncertainties:
    """Per-dof determinants Δ(q²)Δ(p²) - Δ(qp)² grouped by sector."""

    classical: Tuple[float, ...]
    quantum: Tuple[float, ...]

    @property
    def U_c(self) -> float:
        return float(sum(self.classical))

    @property
    def U_q(self) -> float:
        return float(sum(self.quantum))

    def __iter__(self):
        return iter((self.U_c, self.U_q))


def dof_uncertainty(state: SimState, n_dof: int, dof_index: int) -> float:
    q2, p2, qp = second_order_keys(n_dof, dof_index)
    return state.value(q2) * state.value(p2) - state.value(qp) ** 2


def uncertainties(state: SimState, sig: SystemSignature) -> SectorUncertainties:
    values = [dof_uncertainty(state, sig.n_dof, index) for index in range(1, sig.n_dof + 1)]
    return SectorUncertainties(tuple(values[: sig.n_classical]), tuple(values[sig.n_classical :]))


def uncertainty_series(trajectory: Trajectory, sig: SystemSignature) -> Dict[int, np.ndarray]:
    """U of every degree of freedom along a trajectory, keyed by dof index."""
    out: Dict[int, np.ndarray] = {}
    for index in range(1, sig.n_dof + 1):
        q2, p2, qp = second_order_keys(sig.n_dof, index)
        out[index] = trajectory.column(q2) * trajectory.column(p2) - trajectory.column(qp) ** 2
    return out


def sector_series(trajectory: Trajectory, sig: SystemSignature) -> Tuple[np.ndarray, np.ndarray]:
    """(U_c, U_q) along a trajectory."""
    series = uncertainty_series(trajectory, sig)
    zero = np.zeros(len(trajectory))
    classical = sum((series[i] for i in range(1, sig.n_classical + 1)), zero)
    quantum = sum((series[i] for i in range(sig.n_classical + 1, sig.n_dof + 1)), zero)
    return classical, quantum


def energy(state: SimState, system: EomSystem, hbar: float) -> float:
    """H_eff evaluated on a state."""
    return system.h_eff.evaluate(state.as_assignment(), hbar)


def energy_series(trajectory: Trajectory, system: EomSystem, hbar: float) -> np.ndarray:
    return np.array([energy(state, system, hbar) for state in trajectory])
