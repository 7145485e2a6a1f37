from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Dict, List

import numpy as np

from ..errors import MissingSymbolError
from ..hamiltonian.eom import EomSystem, StateSymbol
from .state import SimState

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CompiledRhs:
    """Flat term table: ``rhs[rows[t]] += coeffs[t] * prod(y_ext[factors[t]])``.

    ``y_ext`` is the state with a trailing 1.0 that pads short monomials.
    """

    size: int
    rows: np.ndarray
    coeffs: np.ndarray
    factors: np.ndarray

    def __call__(self, t: float, y: np.ndarray) -> np.ndarray:
        if not len(self.rows):
            return np.zeros(self.size)
        extended = np.append(y, 1.0)
        contributions = self.coeffs * extended[self.factors].prod(axis=1)
        return np.bincount(self.rows, weights=contributions, minlength=self.size)


def compile_rhs(system: EomSystem, hbar: float) -> CompiledRhs:
    index: Dict[StateSymbol, int] = {symbol: i for i, symbol in enumerate(system.layout)}
    pad = len(system.layout)
    rows: List[int] = []
    coeffs: List[float] = []
    factor_rows: List[List[int]] = []
    hbar_sq = hbar * hbar
    for row, rhs in enumerate(system.rhs):
        for (mono, h2), coef in rhs.items():
            value = float(coef) * hbar_sq**h2
            if value == 0.0:
                continue
            factors: List[int] = []
            for symbol, power in mono:
                if symbol not in index:
                    raise MissingSymbolError(symbol.render())
                factors.extend([index[symbol]] * power)
            rows.append(row)
            coeffs.append(value)
            factor_rows.append(factors)
    width = max((len(f) for f in factor_rows), default=0)
    table = np.full((len(factor_rows), max(width, 1)), pad, dtype=np.intp)
    for i, factors in enumerate(factor_rows):
        table[i, : len(factors)] = factors
    logger.debug("Compiled %d rhs terms (max degree %d) for %d equations", len(rows), width, pad)
    return CompiledRhs(pad, np.asarray(rows, dtype=np.intp), np.asarray(coeffs, dtype=float), table)


def evaluate_rhs(system: EomSystem, state: SimState, hbar: float) -> np.ndarray:
    """Numeric value of every right-hand side at ``state``."""
    if state.layout != system.layout:
        raise ValueError("State is not aligned with the equation layout")
    return compile_rhs(system, hbar)(state.time, state.values)
