"""Truncated equations of motion for centroids and central moments."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Iterator, Tuple, Union

from ..algebra.polynomial import Polynomial
from ..brackets.engine import poly_bracket
from ..moments.enumerate import enumerate_moments
from ..moments.types import BracketKind, CentroidSymbol, MomentKey, SystemSignature, VariableKind
from .expansion import effective_hamiltonian
from .models import PolyHamiltonian

logger = logging.getLogger(__name__)

StateSymbol = Union[CentroidSymbol, MomentKey]


def centroid_layout(sig: SystemSignature) -> Tuple[CentroidSymbol, ...]:
    symbols = []
    for index in range(1, sig.n_dof + 1):
        symbols.append(CentroidSymbol.position(index))
        symbols.append(CentroidSymbol.momentum(index))
    return tuple(symbols)


def state_layout(sig: SystemSignature, n_max: int) -> Tuple[StateSymbol, ...]:
    """Centroids (q1, p1, q2, p2, ...) followed by every moment of order 2..n_max."""
    return centroid_layout(sig) + tuple(enumerate_moments(sig, 2, n_max))


@dataclass(frozen=True)
class EomSystem:
    signature: SystemSignature
    layout: Tuple[StateSymbol, ...]
    rhs: Tuple[Polynomial, ...]
    truncation_order: int
    h_eff: Polynomial
    kind: BracketKind = field(default=BracketKind.QUANTUM, compare=False)

    def __post_init__(self) -> None:
        if len(self.layout) != len(self.rhs):
            raise ValueError("Every state symbol needs exactly one right-hand side")

    @property
    def size(self) -> int:
        return len(self.layout)

    def index_of(self, symbol: StateSymbol) -> int:
        try:
            return self.layout.index(symbol)
        except ValueError:
            raise KeyError(f"{symbol} is not part of the state layout") from None

    def rhs_for(self, symbol: StateSymbol) -> Polynomial:
        return self.rhs[self.index_of(symbol)]

    def items(self) -> Iterator[Tuple[StateSymbol, Polynomial]]:
        return iter(zip(self.layout, self.rhs))


def _over_order(n_max: int):
    return lambda symbol: isinstance(symbol, MomentKey) and symbol.order > n_max


def generate_eom(
    hamiltonian: PolyHamiltonian, sig: SystemSignature, kind: BracketKind, n_max: int
) -> EomSystem:
    if n_max < 2:
        raise ValueError("Truncation order must be at least 2")
    hamiltonian.check_signature(sig)
    truncated = _over_order(n_max)
    # moment terms above n_max still feed lower orders through the bracket
    h_full = effective_hamiltonian(hamiltonian, sig, max(n_max, hamiltonian.degree))
    h_eff = h_full.drop_terms_with(truncated)

    layout = state_layout(sig, n_max)
    rhs = []
    for symbol in layout:
        if isinstance(symbol, CentroidSymbol):
            value = h_eff.derivative(symbol.conjugate)
            rhs.append(value if symbol.kind is VariableKind.POSITION else -value)
        else:
            rhs.append(poly_bracket(symbol, h_full, sig, kind).drop_terms_with(truncated))
    logger.info(
        "Generated %d equations for %s (%s bracket, N_max=%d)", len(layout), sig.label, kind.value, n_max
    )
    return EomSystem(sig, layout, tuple(rhs), n_max, h_eff, kind)
