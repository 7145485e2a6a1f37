from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Any, ClassVar, Dict, Generic, Iterable, List, Mapping, Optional, Sequence, Tuple, Type, TypeVar

from ..errors import ConfigError
from ..hamiltonian.models import (
    ORDERINGS,
    HamiltonianTerm,
    PolyHamiltonian,
    parse_coefficient,
    parse_rational,
)
from ..moments.encoding import parse_key
from ..moments.types import SystemSignature

DATA_PATH = Path(__file__).resolve().parent.parent / "data" / "hamiltonian_presets.json"
SCENARIO_PATH = DATA_PATH.with_name("oscillator_scenarios.json")

ExponentPairs = Tuple[Tuple[int, int], ...]
DofNames = Tuple[Tuple[str, str], ...]
Index4 = Tuple[int, int, int, int]
Entry = TypeVar("Entry")
R = TypeVar("R", bound="_JsonRegistry")

OSCILLATOR_NAMES: DofNames = (("q", "p"), ("x", "k"))


def normalize_coefficient(value: object) -> str:
    if isinstance(value, str):
        text = value.strip()
        if not text:
            raise ConfigError("Empty monomial coefficient")
        return text
    return str(parse_rational(value))  # type: ignore[arg-type]


def parse_exponents(raw: object, n_dof: Optional[int] = None) -> ExponentPairs:
    if not isinstance(raw, (list, tuple)) or not raw:
        raise ConfigError(f"Monomial exponents must be a list of [a, b] pairs, got {raw!r}")
    pairs = []
    for pair in raw:
        if (
            not isinstance(pair, (list, tuple))
            or len(pair) != 2
            or not all(isinstance(v, int) and not isinstance(v, bool) and v >= 0 for v in pair)
        ):
            raise ConfigError(f"Invalid exponent pair {pair!r} (expected two nonnegative integers)")
        pairs.append((pair[0], pair[1]))
    if n_dof is not None and len(pairs) != n_dof:
        raise ConfigError(f"Monomial {raw!r} has {len(pairs)} degrees of freedom, expected {n_dof}")
    return tuple(pairs)


def parse_dof_names(raw: object, n_dof: Optional[int] = None) -> Optional[DofNames]:
    if raw is None:
        return None
    if not isinstance(raw, (list, tuple)):
        raise ConfigError("dof_names must be a list of [position, momentum] name pairs")
    names = []
    for pair in raw:
        if not isinstance(pair, (list, tuple)) or len(pair) != 2 or not all(isinstance(v, str) and v for v in pair):
            raise ConfigError(f"Invalid dof name pair {pair!r}")
        names.append((pair[0], pair[1]))
    if n_dof is not None and len(names) != n_dof:
        raise ConfigError(f"dof_names lists {len(names)} degrees of freedom, expected {n_dof}")
    flat = [name for pair in names for name in pair]
    if len(set(flat)) != len(flat):
        raise ConfigError("dof_names must be unique")
    return tuple(names)


def parse_parameters(raw: object) -> Tuple[Tuple[str, Fraction], ...]:
    if raw is None:
        return ()
    if not isinstance(raw, Mapping):
        raise ConfigError("parameters must be a JSON object of name -> rational")
    return tuple((str(name), parse_rational(value)) for name, value in raw.items())


@dataclass(frozen=True)
class MonomialSpec:
    """One Hamiltonian monomial as written in JSON; the coefficient may name parameters."""

    exponents: ExponentPairs
    coefficient: str = "1"
    ordering: str = "weyl"

    def __post_init__(self) -> None:
        object.__setattr__(self, "exponents", tuple((int(a), int(b)) for a, b in self.exponents))
        object.__setattr__(self, "coefficient", normalize_coefficient(self.coefficient))
        if self.ordering not in ORDERINGS:
            raise ConfigError(f"Unknown operator ordering '{self.ordering}' (expected weyl or symmetric)")

    @classmethod
    def from_dict(cls, data: object, n_dof: Optional[int] = None) -> "MonomialSpec":
        if not isinstance(data, Mapping):
            raise ConfigError("Monomial entries must be JSON objects")
        if "exponents" not in data:
            raise ConfigError("Monomial entry missing exponents")
        return cls(
            exponents=parse_exponents(data["exponents"], n_dof),
            coefficient=data.get("coefficient", "1"),
            ordering=data.get("ordering", "weyl"),
        )

    def to_dict(self) -> Dict[str, object]:
        out: Dict[str, object] = {
            "exponents": [list(pair) for pair in self.exponents],
            "coefficient": self.coefficient,
        }
        if self.ordering != "weyl":
            out["ordering"] = self.ordering
        return out

    def to_term(self, parameters: Mapping[str, Fraction]) -> HamiltonianTerm:
        return HamiltonianTerm(self.exponents, parse_coefficient(self.coefficient, parameters), self.ordering)


@dataclass(frozen=True)
class HamiltonianPreset:
    name: str
    description: str
    n_dof: int
    parameters: Tuple[Tuple[str, Fraction], ...]
    monomials: Tuple[MonomialSpec, ...]
    signature: str
    dof_names: Optional[DofNames] = None

    def __post_init__(self) -> None:
        if self.n_dof < 1:
            raise ValueError(f"Preset '{self.name}' needs at least one degree of freedom")
        if not self.monomials:
            raise ValueError(f"Preset '{self.name}' has no monomials")
        if SystemSignature.parse(self.signature).n_dof != self.n_dof:
            raise ValueError(f"Preset '{self.name}' default signature {self.signature} does not match n_dof")

    @property
    def defaults(self) -> Dict[str, Fraction]:
        return dict(self.parameters)

    def parameter_values(self, overrides: Optional[Mapping[str, object]] = None) -> Dict[str, Fraction]:
        values = self.defaults
        for name, value in (overrides or {}).items():
            if name not in values:
                known = ", ".join(values) or "none"
                raise ConfigError(f"Preset '{self.name}' has no parameter '{name}' (known: {known})")
            values[name] = parse_rational(value)  # type: ignore[arg-type]
        return values

    def build(
        self,
        quantum_dofs: Sequence[int] = (),
        overrides: Optional[Mapping[str, object]] = None,
    ) -> PolyHamiltonian:
        values = self.parameter_values(overrides)
        terms = [monomial.to_term(values) for monomial in self.monomials]
        return PolyHamiltonian.from_terms(terms, self.n_dof, quantum_dofs, self.name)


@dataclass(frozen=True)
class OscillatorScenario:
    """Packaged initial data for the coupled oscillator, state ordered (q, p, x, k)."""

    name: str
    description: str
    omega1_sq: Fraction
    omega2_sq: Fraction
    centroids: Tuple[float, float, float, float]
    moments: Tuple[Tuple[Index4, float], ...]
    t_end: float

    def params(self):
        from ..oscillator.params import OscillatorParams

        return OscillatorParams(self.omega1_sq, self.omega2_sq)

    @property
    def initial_moments(self) -> Dict[Index4, float]:
        return dict(self.moments)

    @property
    def u0(self) -> float:
        """Initial uncertainty of the quantum pair, C0020*C0002 - C0011²."""
        data = self.initial_moments
        return data.get((0, 0, 2, 0), 0.0) * data.get((0, 0, 0, 2), 0.0) - data.get((0, 0, 1, 1), 0.0) ** 2


class _JsonRegistry(Generic[Entry]):
    """Named entries loaded from a packaged JSON list, cached per resolved path."""

    entry_label: ClassVar[str] = "Entry"
    default_path: ClassVar[Path]
    _cache: ClassVar[Dict[Tuple[type, Path], "_JsonRegistry"]] = {}

    def __init__(self, entries: Iterable[Entry]) -> None:
        self._entries = list(entries)

    @classmethod
    def load(cls: Type[R], path: Optional[Path] = None) -> R:
        path = cls.default_path if path is None else Path(path)
        key = (cls, path.resolve())
        cached = _JsonRegistry._cache.get(key)
        if cached is not None:
            return cached  # type: ignore[return-value]
        raw = json.loads(path.read_text(encoding="utf-8"))
        if not isinstance(raw, list):
            raise ValueError(f"{cls.entry_label} file must contain a JSON list")
        registry = cls(cls._parse_entry(cls._check_entry(entry)) for entry in raw)
        _JsonRegistry._cache[key] = registry
        return registry

    @classmethod
    def _check_entry(cls, entry: object) -> Dict[str, Any]:
        if not isinstance(entry, dict):
            raise ValueError(f"{cls.entry_label} entries must be JSON objects")
        name = entry.get("name")
        if not isinstance(name, str) or not name.strip():
            raise ValueError(f"{cls.entry_label} entry missing name")
        return {**entry, "name": name.strip().lower()}

    @staticmethod
    def _parse_entry(entry: Dict[str, Any]) -> Entry:
        raise NotImplementedError

    def get(self, name: str) -> Optional[Entry]:
        target = name.strip().lower()
        for entry in self._entries:
            if entry.name == target:  # type: ignore[attr-defined]
                return entry
        return None


class HamiltonianPresetRegistry(_JsonRegistry[HamiltonianPreset]):
    entry_label = "Preset"
    default_path = DATA_PATH

    @staticmethod
    def _parse_entry(entry: Dict[str, Any]) -> HamiltonianPreset:
        name = entry["name"]
        n_dof = entry.get("n_dof")
        if not isinstance(n_dof, int):
            raise ValueError(f"Preset '{name}' missing integer n_dof")
        monomials = tuple(MonomialSpec.from_dict(item, n_dof) for item in entry.get("monomials") or [])
        return HamiltonianPreset(
            name=name,
            description=entry.get("description", ""),
            n_dof=n_dof,
            parameters=parse_parameters(entry.get("parameters")),
            monomials=monomials,
            signature=entry.get("signature", f"0c{n_dof}q"),
            dof_names=parse_dof_names(entry.get("dof_names"), n_dof),
        )

    @property
    def presets(self) -> List[HamiltonianPreset]:
        return list(self._entries)


class ScenarioRegistry(_JsonRegistry[OscillatorScenario]):
    entry_label = "Scenario"
    default_path = SCENARIO_PATH

    @staticmethod
    def _parse_entry(entry: Dict[str, Any]) -> OscillatorScenario:
        name = entry["name"]
        centroids = entry.get("centroids") or {}
        names = [n for pair in OSCILLATOR_NAMES for n in pair]
        unknown = set(centroids) - set(names)
        if unknown:
            raise ValueError(f"Scenario '{name}' has unknown centroids: {', '.join(sorted(unknown))}")
        moments = []
        for text, value in (entry.get("moments") or {}).items():
            key = parse_key(text, 2)
            (m1, n1), (m2, n2) = key.exponents
            moments.append(((m1, n1, m2, n2), float(value)))
        return OscillatorScenario(
            name=name,
            description=entry.get("description", ""),
            omega1_sq=parse_rational(entry["omega1_sq"]),
            omega2_sq=parse_rational(entry["omega2_sq"]),
            centroids=tuple(float(centroids.get(n, 0.0)) for n in names),  # type: ignore[arg-type]
            moments=tuple(moments),
            t_end=float(entry.get("t_end", 30.0)),
        )

    @property
    def scenarios(self) -> List[OscillatorScenario]:
        return list(self._entries)
