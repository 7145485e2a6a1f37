from __future__ import annotations

from fractions import Fraction
from typing import Dict, Mapping, Optional, Sequence

from ..errors import ConfigError
from ..hamiltonian.eom import StateSymbol
from ..hamiltonian.models import PolyHamiltonian, parse_rational
from ..moments.encoding import KEY_PREFIX, parse_centroid, parse_key
from ..moments.types import CentroidSymbol, VariableKind
from .models import DofNames, HamiltonianPreset, HamiltonianPresetRegistry, MonomialSpec


class SymbolResolver:
    """Maps user-facing names (``q1``, ``p2``, per-dof aliases, key strings) to state symbols."""

    def __init__(self, n_dof: int, dof_names: Optional[DofNames] = None) -> None:
        if dof_names is not None and len(dof_names) != n_dof:
            raise ConfigError(f"dof_names lists {len(dof_names)} degrees of freedom, expected {n_dof}")
        self._n_dof = n_dof
        self._aliases: Dict[str, CentroidSymbol] = {}
        self._names: Dict[CentroidSymbol, str] = {}
        for index, pair in enumerate(dof_names or (), start=1):
            for name, kind in zip(pair, (VariableKind.POSITION, VariableKind.MOMENTUM)):
                symbol = CentroidSymbol(index, kind)
                self._aliases[name] = symbol
                self._names[symbol] = name

    @property
    def n_dof(self) -> int:
        return self._n_dof

    @property
    def aliases(self) -> Dict[CentroidSymbol, str]:
        return dict(self._names)

    def resolve_centroid(self, name: str) -> CentroidSymbol:
        text = name.strip()
        if text in self._aliases:
            return self._aliases[text]
        try:
            return parse_centroid(text, self._n_dof)
        except ConfigError:
            known = ", ".join(self._aliases) if self._aliases else "q1, p1, ..."
            raise ConfigError(f"Unknown centroid '{name}' (known names: {known})") from None

    def resolve(self, name: str) -> StateSymbol:
        if name.strip().startswith(KEY_PREFIX):
            return parse_key(name, self._n_dof)
        return self.resolve_centroid(name)

    def name_of(self, symbol: StateSymbol) -> str:
        if isinstance(symbol, CentroidSymbol):
            return self._names.get(symbol, symbol.render())
        return symbol.render()


class HamiltonianResolver:
    def __init__(self, registry: HamiltonianPresetRegistry) -> None:
        self._registry = registry

    def require_preset(self, name: str) -> HamiltonianPreset:
        preset = self._registry.get(name)
        if not preset:
            known = ", ".join(preset.name for preset in self._registry.presets)
            raise ConfigError(f"Unknown Hamiltonian preset '{name}' (known: {known})")
        return preset

    def resolve(
        self,
        n_dof: int,
        quantum_dofs: Sequence[int] = (),
        preset: Optional[str] = None,
        parameters: Optional[Mapping[str, object]] = None,
        monomials: Sequence[MonomialSpec] = (),
    ) -> PolyHamiltonian:
        """A preset (with parameter overrides) plus any extra monomials, or the monomials alone."""
        parameters = dict(parameters or {})
        if preset is None:
            if not monomials:
                raise ConfigError("Hamiltonian needs a preset or at least one monomial")
            values: Dict[str, Fraction] = {name: parse_rational(value) for name, value in parameters.items()}  # type: ignore[arg-type]
            terms = [monomial.to_term(values) for monomial in monomials]
            return PolyHamiltonian.from_terms(terms, n_dof, quantum_dofs, "custom")
        chosen = self.require_preset(preset)
        if chosen.n_dof != n_dof:
            raise ConfigError(
                f"Preset '{chosen.name}' has {chosen.n_dof} degrees of freedom, the signature has {n_dof}"
            )
        hamiltonian = chosen.build(quantum_dofs, parameters)
        if not monomials:
            return hamiltonian
        values = chosen.parameter_values(parameters)
        extra = PolyHamiltonian.from_terms([m.to_term(values) for m in monomials], n_dof, quantum_dofs)
        return PolyHamiltonian(n_dof, hamiltonian.polynomial + extra.polynomial, chosen.name)
