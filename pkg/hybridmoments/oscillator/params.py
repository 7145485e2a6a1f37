from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Optional, Union

Number = Union[int, float, Fraction]


class Regime(Enum):
    WEAK = "weak"
    CRITICAL = "critical"
    STRONG = "strong"


def regime(omega_sq: Number, gamma: Number) -> Regime:
    """Coupling regime of ½(p² + ω²q²) + ½(k² + ω²x²) + γqx."""
    if gamma < omega_sq:
        return Regime.WEAK
    if gamma == omega_sq:
        return Regime.CRITICAL
    return Regime.STRONG


def _exact(value: Number) -> Fraction:
    if isinstance(value, float):
        return Fraction(repr(value))
    return Fraction(value)


@dataclass(frozen=True)
class OscillatorParams:
    """Normal-mode frequencies squared: ω₁² = ω² + γ, ω₂² = ω² - γ, with ω₁ >= ω₂ > 0."""

    omega1_sq: Fraction
    omega2_sq: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "omega1_sq", _exact(self.omega1_sq))
        object.__setattr__(self, "omega2_sq", _exact(self.omega2_sq))
        if self.omega2_sq <= 0:
            raise ValueError("The slow normal mode must have positive frequency (weak coupling, gamma < omega^2)")
        if self.omega1_sq < self.omega2_sq:
            raise ValueError("omega1 must not be smaller than omega2 (coupling gamma >= 0)")

    @classmethod
    def from_omega_gamma(cls, omega_sq: Number, gamma: Number) -> "OscillatorParams":
        """From the common frequency squared and the coupling; only the weak regime has closed forms."""
        omega_sq, gamma = _exact(omega_sq), _exact(gamma)
        found = regime(omega_sq, gamma)
        if found is not Regime.WEAK:
            raise ValueError(f"Closed forms need weak coupling (gamma < omega^2), got the {found.value} regime")
        if gamma < 0:
            raise ValueError("Coupling gamma must be nonnegative")
        return cls(omega_sq + gamma, omega_sq - gamma)

    @classmethod
    def from_frequencies(cls, omega1: Number, omega2: Number) -> "OscillatorParams":
        """From ω₁ and ω₂ directly; squares are kept exact when the inputs are rational."""
        return cls(_exact(omega1) ** 2, _exact(omega2) ** 2)

    @property
    def omega1(self) -> float:
        return math.sqrt(self.omega1_sq)

    @property
    def omega2(self) -> float:
        return math.sqrt(self.omega2_sq)

    @property
    def omega_sq(self) -> Fraction:
        return (self.omega1_sq + self.omega2_sq) / 2

    @property
    def gamma(self) -> Fraction:
        return (self.omega1_sq - self.omega2_sq) / 2

    @property
    def decoupled(self) -> bool:
        return self.omega1_sq == self.omega2_sq

    @property
    def beat_period(self) -> float:
        if self.decoupled:
            return math.inf
        return 2 * math.pi / (self.omega1 - self.omega2)

    def hamiltonian(self):
        from ..hamiltonian.models import PolyHamiltonian

        return PolyHamiltonian.coupled_oscillator(self.omega_sq, self.gamma)


def recurrence_time(params: OscillatorParams, max_denominator: int = 64, tolerance: float = 1e-12) -> Optional[float]:
    """2πn/ω₁ when ω₂/ω₁ = m/n within ``tolerance``; None otherwise."""
    ratio = params.omega2 / params.omega1
    approx = Fraction(ratio).limit_denominator(max_denominator)
    if abs(float(approx) - ratio) > tolerance:
        return None
    return 2 * math.pi * approx.denominator / params.omega1
