from .models import (
    OSCILLATOR_NAMES,
    HamiltonianPreset,
    HamiltonianPresetRegistry,
    MonomialSpec,
    OscillatorScenario,
    ScenarioRegistry,
)
from .resolve import HamiltonianResolver, SymbolResolver

__all__ = [
    "HamiltonianPreset",
    "HamiltonianPresetRegistry",
    "HamiltonianResolver",
    "MonomialSpec",
    "OSCILLATOR_NAMES",
    "OscillatorScenario",
    "ScenarioRegistry",
    "SymbolResolver",
]
