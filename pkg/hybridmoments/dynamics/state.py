from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Iterator, List, Mapping, Optional, Sequence, Tuple, Union

import numpy as np

from ..errors import ConfigError
from ..hamiltonian.eom import EomSystem, StateSymbol
from ..moments.types import MomentKey

DEFAULT_STEP = 1e-3
DEFAULT_RTOL = 1e-9
DEFAULT_ATOL = 1e-12


class IntegrationMethod(Enum):
    RK4 = "rk4"
    RK45 = "rk45"

    @classmethod
    def parse(cls, value: Union[str, "IntegrationMethod"]) -> "IntegrationMethod":
        if isinstance(value, IntegrationMethod):
            return value
        text = value.strip().lower()
        if text in ("rk45-adaptive", "rkf45", "adaptive"):
            text = "rk45"
        try:
            return cls(text)
        except ValueError:
            raise ConfigError(f"Unknown integration method '{value}' (expected rk4 or rk45)") from None


@dataclass(frozen=True)
class IntegratorConfig:
    t_end: float
    method: IntegrationMethod = IntegrationMethod.RK4
    step: float = DEFAULT_STEP
    rtol: float = DEFAULT_RTOL
    atol: float = DEFAULT_ATOL
    output_stride: int = 1
    max_steps: int = 10_000_000

    def __post_init__(self) -> None:
        object.__setattr__(self, "method", IntegrationMethod.parse(self.method))
        self.validate()

    def validate(self) -> None:
        if not np.isfinite(self.t_end) or self.t_end < 0:
            raise ConfigError("t_end must be a finite nonnegative time")
        if not self.step > 0:
            raise ConfigError("Integrator step must be positive")
        if not (self.rtol > 0 and self.atol > 0):
            raise ConfigError("Integrator tolerances must be positive")
        if self.output_stride < 1:
            raise ConfigError("output_stride must be a positive integer")
        if self.max_steps < 1:
            raise ConfigError("max_steps must be a positive integer")


@dataclass(frozen=True)
class SimState:
    """Time plus a dense vector aligned with an EOM state layout."""

    time: float
    values: np.ndarray
    layout: Tuple[StateSymbol, ...] = field(repr=False)

    def __post_init__(self) -> None:
        values = np.asarray(self.values, dtype=float)
        if values.shape != (len(self.layout),):
            raise ValueError(f"State has {values.size} values for a layout of {len(self.layout)} symbols")
        object.__setattr__(self, "values", values)

    @classmethod
    def from_mapping(
        cls,
        system: EomSystem,
        values: Mapping[StateSymbol, float],
        time: float = 0.0,
    ) -> "SimState":
        """Sparse initial data; unlisted symbols start at zero."""
        vector = np.zeros(system.size)
        for symbol, value in values.items():
            if isinstance(symbol, MomentKey) and symbol.n_dof != system.signature.n_dof:
                raise ConfigError(
                    f"Moment {symbol.render()} has {symbol.n_dof} degrees of freedom, "
                    f"signature {system.signature.label} has {system.signature.n_dof}"
                )
            try:
                index = system.index_of(symbol)
            except KeyError:
                raise ConfigError(
                    f"{symbol.render()} is not part of the state (truncation order {system.truncation_order})"
                ) from None
            vector[index] = float(value)
        return cls(time, vector, system.layout)

    def is_finite(self) -> bool:
        return bool(np.all(np.isfinite(self.values)))

    def value(self, symbol: StateSymbol) -> float:
        return float(self.values[self.layout.index(symbol)])

    def get(self, symbol: StateSymbol, default: float = 0.0) -> float:
        try:
            return self.value(symbol)
        except ValueError:
            return default

    def as_assignment(self) -> dict:
        return dict(zip(self.layout, self.values.tolist()))


@dataclass(frozen=True)
class Trajectory:
    """Emitted samples of an integration: ``times[i]`` pairs with row ``values[i]``."""

    layout: Tuple[StateSymbol, ...]
    times: np.ndarray
    values: np.ndarray
    accepted_steps: int = 0
    rejected_steps: int = 0

    def __len__(self) -> int:
        return len(self.times)

    def __iter__(self) -> Iterator[SimState]:
        for time, row in zip(self.times, self.values):
            yield SimState(float(time), row, self.layout)

    @property
    def final(self) -> SimState:
        return SimState(float(self.times[-1]), self.values[-1], self.layout)

    @property
    def initial(self) -> SimState:
        return SimState(float(self.times[0]), self.values[0], self.layout)

    def column(self, symbol: StateSymbol) -> np.ndarray:
        return self.values[:, self.layout.index(symbol)]


def symbol_names(layout: Sequence[StateSymbol], aliases: Optional[Mapping[StateSymbol, str]] = None) -> List[str]:
    aliases = aliases or {}
    return [aliases.get(symbol, symbol.render()) for symbol in layout]
