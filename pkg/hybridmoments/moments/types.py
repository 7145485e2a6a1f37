from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import Enum
from functools import total_ordering
from typing import Iterable, Optional, Tuple

ExponentPair = Tuple[int, int]

_SIGNATURE_RE = re.compile(r"^\s*(\d+)\s*c\s*(\d+)\s*q\s*$", re.IGNORECASE)


class VariableKind(Enum):
    POSITION = "q"
    MOMENTUM = "p"


class Sector(Enum):
    CLASSICAL = "classical"
    QUANTUM = "quantum"
    MIXED = "mixed"


class BracketKind(Enum):
    QUANTUM = "quantum"
    CLASSICAL = "classical"
    HYBRID = "hybrid"

    @classmethod
    def parse(cls, value: str) -> "BracketKind":
        try:
            return cls(value.strip().lower())
        except ValueError:
            choices = ", ".join(kind.value for kind in cls)
            raise ValueError(f"Unknown bracket kind '{value}' (expected one of: {choices})") from None


@dataclass(frozen=True)
class SystemSignature:
    """Split of the degrees of freedom into classical (first) and quantum ones."""

    n_classical: int
    n_quantum: int
    hbar: float = 1.0

    def __post_init__(self) -> None:
        self.validate()

    def validate(self) -> None:
        if self.n_classical < 0 or self.n_quantum < 0:
            raise ValueError("Degree-of-freedom counts must be nonnegative")
        if self.n_classical + self.n_quantum < 1:
            raise ValueError("A system needs at least one degree of freedom")
        if not self.hbar >= 0:
            raise ValueError("hbar must be nonnegative")

    @classmethod
    def parse(cls, text: str, hbar: float = 1.0) -> "SystemSignature":
        """Parse labels such as ``1c1q`` or ``0c2q``."""
        match = _SIGNATURE_RE.match(text)
        if not match:
            raise ValueError(f"Invalid signature '{text}' (expected e.g. 1c1q)")
        return cls(int(match.group(1)), int(match.group(2)), hbar)

    @property
    def n_dof(self) -> int:
        return self.n_classical + self.n_quantum

    @property
    def label(self) -> str:
        return f"{self.n_classical}c{self.n_quantum}q"

    def classical_count(self, kind: BracketKind) -> int:
        """Number of leading degrees of freedom treated classically by a bracket kind."""
        if kind is BracketKind.CLASSICAL:
            return self.n_dof
        if kind is BracketKind.QUANTUM:
            return 0
        return self.n_classical


@total_ordering
@dataclass(frozen=True)
class CentroidSymbol:
    """Expectation value q_i or p_i of a basic variable."""

    dof_index: int
    kind: VariableKind
    sort_key: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if self.dof_index < 1:
            raise ValueError("Centroid degree of freedom must be at least 1")
        kind_rank = 0 if self.kind is VariableKind.POSITION else 1
        object.__setattr__(self, "sort_key", (0, self.dof_index, kind_rank))

    @classmethod
    def position(cls, dof_index: int) -> "CentroidSymbol":
        return cls(dof_index, VariableKind.POSITION)

    @classmethod
    def momentum(cls, dof_index: int) -> "CentroidSymbol":
        return cls(dof_index, VariableKind.MOMENTUM)

    @property
    def conjugate(self) -> "CentroidSymbol":
        other = VariableKind.MOMENTUM if self.kind is VariableKind.POSITION else VariableKind.POSITION
        return CentroidSymbol(self.dof_index, other)

    def render(self) -> str:
        return f"{self.kind.value}{self.dof_index}"

    def __lt__(self, other: object) -> bool:
        return self.sort_key < other.sort_key  # type: ignore[attr-defined]

    def __str__(self) -> str:
        return self.render()


@total_ordering
@dataclass(frozen=True)
class MomentKey:
    """Multi-index (a_j, b_j) per degree of freedom naming one central moment."""

    exponents: Tuple[ExponentPair, ...]
    sort_key: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        pairs = tuple((int(a), int(b)) for a, b in self.exponents)
        if not pairs:
            raise ValueError("A moment key needs at least one degree of freedom")
        for a, b in pairs:
            if a < 0 or b < 0:
                raise ValueError("Moment exponents must be nonnegative")
        object.__setattr__(self, "exponents", pairs)
        flat = tuple(value for pair in pairs for value in pair)
        object.__setattr__(self, "sort_key", (1, sum(flat), tuple(reversed(flat))))

    @classmethod
    def of(cls, *pairs: Iterable[int]) -> "MomentKey":
        """``MomentKey.of((2, 0), (0, 1))`` builds Δ(q₁²k₂)."""
        return cls(tuple(tuple(pair) for pair in pairs))  # type: ignore[arg-type]

    @classmethod
    def unit(cls, n_dof: int, dof_index: int, kind: VariableKind) -> "MomentKey":
        pairs = [(0, 0)] * n_dof
        pairs[dof_index - 1] = (1, 0) if kind is VariableKind.POSITION else (0, 1)
        return cls(tuple(pairs))

    @classmethod
    def zero(cls, n_dof: int) -> "MomentKey":
        return cls(((0, 0),) * n_dof)

    @property
    def n_dof(self) -> int:
        return len(self.exponents)

    @property
    def order(self) -> int:
        return self.sort_key[1]

    @property
    def flat(self) -> Tuple[int, ...]:
        return tuple(value for pair in self.exponents for value in pair)

    def shifted(self, dof_index: int, dq: int, dp: int) -> Optional["MomentKey"]:
        """Key with exponents of one degree of freedom changed; None if any goes negative."""
        a, b = self.exponents[dof_index - 1]
        if a + dq < 0 or b + dp < 0:
            return None
        pairs = list(self.exponents)
        pairs[dof_index - 1] = (a + dq, b + dp)
        return MomentKey(tuple(pairs))

    def render(self) -> str:
        from .encoding import format_key

        return format_key(self)

    def __lt__(self, other: object) -> bool:
        return self.sort_key < other.sort_key  # type: ignore[attr-defined]

    def __str__(self) -> str:
        return self.render()


def moment_order(key: MomentKey) -> int:
    return key.order


def is_pure_sector(key: MomentKey, sig: SystemSignature) -> Sector:
    """Sector of a moment; the order-0 key counts as classical."""
    if key.n_dof != sig.n_dof:
        raise ValueError(f"Key {key.render()} has {key.n_dof} degrees of freedom, signature has {sig.n_dof}")
    active = [index for index, (a, b) in enumerate(key.exponents, start=1) if a or b]
    if all(index <= sig.n_classical for index in active):
        return Sector.CLASSICAL
    if all(index > sig.n_classical for index in active):
        return Sector.QUANTUM
    return Sector.MIXED
