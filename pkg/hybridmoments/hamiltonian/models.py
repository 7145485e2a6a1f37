from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial
from typing import Dict, Iterable, Mapping, Optional, Sequence, Tuple, Union

from ..algebra.polynomial import Polynomial, poly_sum
from ..errors import ConfigError
from ..moments.types import CentroidSymbol, SystemSignature, VariableKind

ExponentPairs = Tuple[Tuple[int, int], ...]
Number = Union[int, Fraction]

_RATIONAL_RE = re.compile(r"^[+-]?\d+(/\d+)?$")
_DECIMAL_RE = re.compile(r"^[+-]?(\d+\.\d*|\.\d+|\d+)([eE][+-]?\d+)?$")
_NAME_RE = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")

ORDERINGS = ("weyl", "symmetric")


def parse_rational(value: Union[str, int, float, Fraction]) -> Fraction:
    """Exact rational from ``3``, ``"17/2"``, ``"1e-5"`` or a float."""
    if isinstance(value, bool):
        raise ConfigError(f"Invalid rational value {value!r}")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, float):
        return Fraction(repr(value))
    text = str(value).strip()
    if _RATIONAL_RE.match(text) or _DECIMAL_RE.match(text):
        return Fraction(text)
    raise ConfigError(f"Invalid rational value '{value}'")


def parse_coefficient(text: Union[str, int, float, Fraction], parameters: Mapping[str, Fraction]) -> Fraction:
    """Evaluate a ``*``-product of rationals and parameter names, e.g. ``"1/2*omega_sq"``."""
    if not isinstance(text, str):
        return parse_rational(text)
    factors = [part.strip() for part in text.split("*")]
    if not factors or any(not part for part in factors):
        raise ConfigError(f"Invalid coefficient '{text}'")
    value = Fraction(1)
    for part in factors:
        sign = 1
        name = part
        if name.startswith("-") and _NAME_RE.match(name[1:]):
            sign, name = -1, name[1:]
        if _NAME_RE.match(name):
            if name not in parameters:
                raise ConfigError(f"Unknown parameter '{name}' in coefficient '{text}'")
            value *= sign * parameters[name]
        else:
            value *= parse_rational(part)
    return value


def centroid_monomial(exps: ExponentPairs) -> Polynomial:
    result = Polynomial.constant(1)
    for index, (a, b) in enumerate(exps, start=1):
        if a:
            result = result * Polynomial.symbol(CentroidSymbol.position(index), a)
        if b:
            result = result * Polynomial.symbol(CentroidSymbol.momentum(index), b)
    return result


def symmetric_ordering_to_weyl(exps: ExponentPairs, quantum_dofs: Iterable[int]) -> Polynomial:
    """Weyl form of the product over dofs of ½(q̂ᵐp̂ⁿ + p̂ⁿq̂ᵐ) on quantum dofs, plain qᵐpⁿ on classical ones.

    The result is the Weyl symbol: a polynomial in centroid symbols whose
    ħ²-terms come from the reordering.
    """
    quantum = set(quantum_dofs)
    result = Polynomial.constant(1)
    for index, (m, n) in enumerate(exps, start=1):
        single = tuple((m, n) if j == index else (0, 0) for j in range(1, len(exps) + 1))
        if index not in quantum:
            result = result * centroid_monomial(single)
            continue
        pieces = []
        for k in range(0, min(m, n) + 1, 2):
            weight = Fraction(-1, 4) ** (k // 2) * factorial(k) * comb(n, k) * comb(m, k)
            lowered = tuple((m - k, n - k) if j == index else (0, 0) for j in range(1, len(exps) + 1))
            pieces.append(centroid_monomial(lowered) * Polynomial.constant(weight, k // 2))
        result = result * poly_sum(pieces)
    return result


@dataclass(frozen=True)
class HamiltonianTerm:
    exponents: ExponentPairs
    coefficient: Fraction
    ordering: str = "weyl"

    def __post_init__(self) -> None:
        object.__setattr__(self, "exponents", tuple((int(a), int(b)) for a, b in self.exponents))
        object.__setattr__(self, "coefficient", Fraction(self.coefficient))
        if self.ordering not in ORDERINGS:
            raise ConfigError(f"Unknown operator ordering '{self.ordering}' (expected weyl or symmetric)")
        if any(a < 0 or b < 0 for a, b in self.exponents):
            raise ConfigError(f"Negative exponent in Hamiltonian term {self.exponents}")


@dataclass(frozen=True)
class PolyHamiltonian:
    """Time-independent polynomial Hamiltonian, stored as its Weyl symbol."""

    n_dof: int
    polynomial: Polynomial
    name: str = ""

    def __post_init__(self) -> None:
        if self.n_dof < 1:
            raise ValueError("A Hamiltonian needs at least one degree of freedom")
        for symbol in self.polynomial.symbols():
            if not isinstance(symbol, CentroidSymbol) or symbol.dof_index > self.n_dof:
                raise ValueError(f"Hamiltonian symbol {symbol} outside {self.n_dof} degrees of freedom")

    @classmethod
    def from_terms(
        cls,
        terms: Iterable[HamiltonianTerm],
        n_dof: int,
        quantum_dofs: Sequence[int] = (),
        name: str = "",
    ) -> "PolyHamiltonian":
        pieces = []
        for term in terms:
            if len(term.exponents) != n_dof:
                raise ConfigError(f"Hamiltonian term {term.exponents} does not have {n_dof} degrees of freedom")
            if term.ordering == "symmetric":
                symbol = symmetric_ordering_to_weyl(term.exponents, quantum_dofs)
            else:
                symbol = centroid_monomial(term.exponents)
            pieces.append(symbol.scale(term.coefficient))
        return cls(n_dof, poly_sum(pieces), name)

    @classmethod
    def from_mapping(cls, terms: Mapping[ExponentPairs, Number], n_dof: int, name: str = "") -> "PolyHamiltonian":
        return cls.from_terms((HamiltonianTerm(exps, value) for exps, value in terms.items()), n_dof, name=name)

    @classmethod
    def coupled_oscillator(cls, omega_sq: Number, gamma: Number) -> "PolyHamiltonian":
        """½(p² + ω²q²) + ½(k² + ω²x²) + γqx."""
        half = Fraction(1, 2)
        return cls.from_mapping(
            {
                ((0, 2), (0, 0)): half,
                ((2, 0), (0, 0)): half * omega_sq,
                ((0, 0), (0, 2)): half,
                ((0, 0), (2, 0)): half * omega_sq,
                ((1, 0), (1, 0)): Fraction(gamma),
            },
            2,
            name="coupled_oscillator",
        )

    @property
    def degree(self) -> int:
        return self.polynomial.degree

    @property
    def terms(self) -> Dict[Tuple[ExponentPairs, int], Fraction]:
        """(exponents, ħ² power) -> coefficient."""
        out: Dict[Tuple[ExponentPairs, int], Fraction] = {}
        for (mono, h2), value in self.polynomial.items():
            pairs = [[0, 0] for _ in range(self.n_dof)]
            for symbol, power in mono:
                pairs[symbol.dof_index - 1][0 if symbol.kind is VariableKind.POSITION else 1] = power
            out[(tuple(tuple(pair) for pair in pairs), h2)] = value  # type: ignore[misc]
        return out

    def check_signature(self, sig: SystemSignature) -> None:
        if sig.n_dof != self.n_dof:
            raise ValueError(
                f"Hamiltonian has {self.n_dof} degrees of freedom, signature {sig.label} has {sig.n_dof}"
            )

    def render(self, names: Optional[Mapping[CentroidSymbol, str]] = None) -> str:
        return self.polynomial.render(names)


def is_harmonic(hamiltonian: PolyHamiltonian) -> bool:
    return hamiltonian.degree <= 2
