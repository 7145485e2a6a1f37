"""JSON run configurations for ``simulate`` and ``eom``.

The schema is published in ``docs/config.md``. Parsing validates everything a
run needs up front (names, keys, truncation, Hamiltonian) so a bad file fails
with a :class:`~hybridmoments.errors.ConfigError` before any work is done.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Dict, Mapping, Optional, Tuple, Union

from ..dynamics.state import IntegrationMethod, IntegratorConfig
from ..errors import ConfigError
from ..hamiltonian.eom import StateSymbol
from ..hamiltonian.models import PolyHamiltonian
from ..moments.types import BracketKind, MomentKey, SystemSignature
from ..presets.models import (
    DofNames,
    HamiltonianPresetRegistry,
    MonomialSpec,
    parse_dof_names,
    parse_parameters,
)
from ..presets.resolve import HamiltonianResolver, SymbolResolver

PathLike = Union[str, Path]


def _require_mapping(raw: object, what: str) -> Mapping[str, object]:
    if raw is None:
        return {}
    if not isinstance(raw, Mapping):
        raise ConfigError(f"'{what}' must be a JSON object")
    return raw


def _number(value: object, what: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"'{what}' must be a number, got {value!r}")
    return float(value)


def _integer(value: object, what: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError(f"'{what}' must be an integer, got {value!r}")
    return value


def default_kind(sig: SystemSignature) -> BracketKind:
    if sig.n_quantum == 0:
        return BracketKind.CLASSICAL
    if sig.n_classical == 0:
        return BracketKind.QUANTUM
    return BracketKind.HYBRID


@dataclass(frozen=True)
class SignatureConfig:
    n_classical: int
    n_quantum: int
    hbar: float = 1.0
    dof_names: Optional[DofNames] = None

    @classmethod
    def from_dict(cls, raw: object) -> "SignatureConfig":
        if isinstance(raw, str):
            try:
                sig = SystemSignature.parse(raw)
            except ValueError as exc:
                raise ConfigError(str(exc)) from None
            return cls(sig.n_classical, sig.n_quantum)
        data = _require_mapping(raw, "signature")
        if "n_classical" not in data or "n_quantum" not in data:
            raise ConfigError("signature needs n_classical and n_quantum")
        n_classical = _integer(data["n_classical"], "signature.n_classical")
        n_quantum = _integer(data["n_quantum"], "signature.n_quantum")
        return cls(
            n_classical,
            n_quantum,
            _number(data.get("hbar", 1.0), "signature.hbar"),
            parse_dof_names(data.get("dof_names"), n_classical + n_quantum),
        )

    def to_dict(self) -> Dict[str, object]:
        out: Dict[str, object] = {"n_classical": self.n_classical, "n_quantum": self.n_quantum, "hbar": self.hbar}
        if self.dof_names is not None:
            out["dof_names"] = [list(pair) for pair in self.dof_names]
        return out

    @property
    def signature(self) -> SystemSignature:
        try:
            return SystemSignature(self.n_classical, self.n_quantum, self.hbar)
        except ValueError as exc:
            raise ConfigError(str(exc)) from None

    @property
    def quantum_dofs(self) -> Tuple[int, ...]:
        return tuple(range(self.n_classical + 1, self.n_classical + self.n_quantum + 1))


@dataclass(frozen=True)
class HamiltonianSpec:
    preset: Optional[str] = None
    parameters: Tuple[Tuple[str, Fraction], ...] = ()
    monomials: Tuple[MonomialSpec, ...] = ()

    @classmethod
    def from_dict(cls, raw: object, n_dof: int) -> "HamiltonianSpec":
        if isinstance(raw, str):
            return cls(preset=raw)
        data = _require_mapping(raw, "hamiltonian")
        preset = data.get("preset")
        if preset is not None and not isinstance(preset, str):
            raise ConfigError("hamiltonian.preset must be a preset name")
        monomials = data.get("monomials") or []
        if not isinstance(monomials, list):
            raise ConfigError("hamiltonian.monomials must be a list")
        return cls(
            preset=preset,
            parameters=parse_parameters(data.get("parameters")),
            monomials=tuple(MonomialSpec.from_dict(item, n_dof) for item in monomials),
        )

    def to_dict(self) -> Dict[str, object]:
        out: Dict[str, object] = {}
        if self.preset is not None:
            out["preset"] = self.preset
        if self.parameters:
            out["parameters"] = {name: str(value) for name, value in self.parameters}
        if self.monomials:
            out["monomials"] = [monomial.to_dict() for monomial in self.monomials]
        return out

    def build(
        self,
        signature: SignatureConfig,
        registry: Optional[HamiltonianPresetRegistry] = None,
    ) -> PolyHamiltonian:
        if self.preset is not None and registry is None:
            registry = HamiltonianPresetRegistry.load()
        resolver = HamiltonianResolver(registry or HamiltonianPresetRegistry([]))
        return resolver.resolve(
            signature.n_classical + signature.n_quantum,
            signature.quantum_dofs,
            self.preset,
            dict(self.parameters),
            self.monomials,
        )


@dataclass(frozen=True)
class InitialData:
    """Sparse initial values by user-facing name; unlisted symbols start at zero."""

    centroids: Tuple[Tuple[str, float], ...] = ()
    moments: Tuple[Tuple[str, float], ...] = ()

    @classmethod
    def from_dict(cls, raw: object) -> "InitialData":
        data = _require_mapping(raw, "initial")
        centroids = _require_mapping(data.get("centroids"), "initial.centroids")
        moments = _require_mapping(data.get("moments"), "initial.moments")
        return cls(
            tuple((str(name), _number(value, f"initial.centroids.{name}")) for name, value in centroids.items()),
            tuple((str(name), _number(value, f"initial.moments.{name}")) for name, value in moments.items()),
        )

    def to_dict(self) -> Dict[str, object]:
        return {"centroids": dict(self.centroids), "moments": dict(self.moments)}

    def resolve(self, resolver: SymbolResolver, truncation_order: int) -> Dict[StateSymbol, float]:
        values: Dict[StateSymbol, float] = {}
        for name, value in self.centroids:
            symbol = resolver.resolve_centroid(name)
            if symbol in values:
                raise ConfigError(f"Centroid '{name}' is listed twice")
            values[symbol] = value
        for name, value in self.moments:
            key = resolver.resolve(name)
            if not isinstance(key, MomentKey):
                raise ConfigError(f"'{name}' is not a moment key")
            if key.order < 2 or key.order > truncation_order:
                raise ConfigError(
                    f"Moment {name} has order {key.order}, expected 2..{truncation_order} (truncation order)"
                )
            if key in values:
                raise ConfigError(f"Moment {name} is listed twice")
            values[key] = value
        return values


def integrator_from_dict(raw: object) -> IntegratorConfig:
    data = _require_mapping(raw, "integrator")
    if "t_end" not in data:
        raise ConfigError("integrator.t_end is required")
    known = {"method", "step", "rtol", "atol", "output_stride", "max_steps", "t_end"}
    unknown = set(data) - known
    if unknown:
        raise ConfigError(f"Unknown integrator settings: {', '.join(sorted(unknown))}")
    options: Dict[str, object] = {"t_end": _number(data["t_end"], "integrator.t_end")}
    if "method" in data:
        options["method"] = IntegrationMethod.parse(str(data["method"]))
    for name in ("step", "rtol", "atol"):
        if name in data:
            options[name] = _number(data[name], f"integrator.{name}")
    for name in ("output_stride", "max_steps"):
        if name in data:
            options[name] = _integer(data[name], f"integrator.{name}")
    return IntegratorConfig(**options)  # type: ignore[arg-type]


def integrator_to_dict(cfg: IntegratorConfig) -> Dict[str, object]:
    return {
        "method": cfg.method.value,
        "t_end": cfg.t_end,
        "step": cfg.step,
        "rtol": cfg.rtol,
        "atol": cfg.atol,
        "output_stride": cfg.output_stride,
        "max_steps": cfg.max_steps,
    }


@dataclass(frozen=True)
class OutputConfig:
    csv: Optional[str] = None
    summary: Optional[str] = None

    @classmethod
    def from_dict(cls, raw: object) -> "OutputConfig":
        data = _require_mapping(raw, "output")
        for name in ("csv", "summary"):
            if data.get(name) is not None and not isinstance(data[name], str):
                raise ConfigError(f"output.{name} must be a path string")
        return cls(data.get("csv"), data.get("summary"))  # type: ignore[arg-type]

    def to_dict(self) -> Dict[str, object]:
        return {name: value for name, value in (("csv", self.csv), ("summary", self.summary)) if value is not None}


@dataclass(frozen=True)
class RunConfig:
    signature: SignatureConfig
    hamiltonian: HamiltonianSpec
    kind: BracketKind
    truncation_order: int
    initial: InitialData
    integrator: IntegratorConfig
    output: OutputConfig = field(default_factory=OutputConfig)

    def __post_init__(self) -> None:
        self.validate()

    def validate(self) -> None:
        if self.truncation_order < 2:
            raise ConfigError("truncation_order must be at least 2")
        self.initial_values()
        self.build_hamiltonian()

    @classmethod
    def from_dict(cls, raw: object) -> "RunConfig":
        data = _require_mapping(raw, "config")
        known = {"signature", "hamiltonian", "kind", "truncation_order", "initial", "integrator", "output"}
        unknown = set(data) - known
        if unknown:
            raise ConfigError(f"Unknown config sections: {', '.join(sorted(unknown))}")
        for required in ("signature", "hamiltonian", "integrator"):
            if required not in data:
                raise ConfigError(f"Config is missing '{required}'")
        signature = SignatureConfig.from_dict(data["signature"])
        if "kind" in data:
            try:
                kind = BracketKind.parse(str(data["kind"]))
            except ValueError as exc:
                raise ConfigError(str(exc)) from None
        else:
            kind = default_kind(signature.signature)
        return cls(
            signature=signature,
            hamiltonian=HamiltonianSpec.from_dict(data["hamiltonian"], signature.n_classical + signature.n_quantum),
            kind=kind,
            truncation_order=_integer(data.get("truncation_order", 2), "truncation_order"),
            initial=InitialData.from_dict(data.get("initial")),
            integrator=integrator_from_dict(data["integrator"]),
            output=OutputConfig.from_dict(data.get("output")),
        )

    def to_dict(self) -> Dict[str, object]:
        return {
            "signature": self.signature.to_dict(),
            "hamiltonian": self.hamiltonian.to_dict(),
            "kind": self.kind.value,
            "truncation_order": self.truncation_order,
            "initial": self.initial.to_dict(),
            "integrator": integrator_to_dict(self.integrator),
            "output": self.output.to_dict(),
        }

    @classmethod
    def load(cls, path: PathLike) -> "RunConfig":
        text = Path(path).read_text(encoding="utf-8")
        try:
            raw = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"Invalid JSON in {path}: {exc}") from None
        return cls.from_dict(raw)

    def dump(self, path: PathLike) -> None:
        Path(path).write_text(json.dumps(self.to_dict(), indent=2) + "\n", encoding="utf-8")

    @property
    def system_signature(self) -> SystemSignature:
        return self.signature.signature

    def dof_names(self) -> Optional[DofNames]:
        if self.signature.dof_names is not None or self.hamiltonian.preset is None:
            return self.signature.dof_names
        preset = HamiltonianResolver(HamiltonianPresetRegistry.load()).require_preset(self.hamiltonian.preset)
        return preset.dof_names

    def symbol_resolver(self) -> SymbolResolver:
        return SymbolResolver(self.system_signature.n_dof, self.dof_names())

    def build_hamiltonian(self) -> PolyHamiltonian:
        return self.hamiltonian.build(self.signature)

    def initial_values(self) -> Dict[StateSymbol, float]:
        return self.initial.resolve(self.symbol_resolver(), self.truncation_order)
