from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterator, Mapping, Optional, Tuple, Union

from ..errors import VerificationError

# (hbar power, power of i in {0, 1})
ScalarKey = Tuple[int, int]
Number = Union[int, Fraction]


class HbarScalar:
    """Exact element of Q[i, ħ] with i² = -1."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Optional[Mapping[ScalarKey, Number]] = None) -> None:
        clean: Dict[ScalarKey, Fraction] = {}
        if terms:
            for (hbar_power, i_power), value in terms.items():
                if hbar_power < 0:
                    raise ValueError("Negative powers of hbar are not allowed")
                sign = -1 if i_power % 4 in (2, 3) else 1
                key = (hbar_power, i_power % 2)
                clean[key] = clean.get(key, 0) + sign * Fraction(value)
        self._terms = {key: value for key, value in clean.items() if value}
        self._hash: Optional[int] = None

    @classmethod
    def of(cls, value: Number, hbar_power: int = 0, i_power: int = 0) -> "HbarScalar":
        return cls({(hbar_power, i_power): value})

    def items(self) -> Iterator[Tuple[ScalarKey, Fraction]]:
        return iter(self._terms.items())

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = HbarScalar.of(other)
        if not isinstance(other, HbarScalar):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __add__(self, other: Union["HbarScalar", Number]) -> "HbarScalar":
        other = _coerce(other)
        terms = dict(self._terms)
        for key, value in other._terms.items():
            terms[key] = terms.get(key, 0) + value
        return HbarScalar(terms)

    __radd__ = __add__

    def __neg__(self) -> "HbarScalar":
        return HbarScalar({key: -value for key, value in self._terms.items()})

    def __sub__(self, other: Union["HbarScalar", Number]) -> "HbarScalar":
        return self + (-_coerce(other))

    def __mul__(self, other: Union["HbarScalar", Number]) -> "HbarScalar":
        if isinstance(other, (int, Fraction)):
            return HbarScalar({key: value * other for key, value in self._terms.items()})
        terms: Dict[ScalarKey, Fraction] = {}
        for (h1, i1), v1 in self._terms.items():
            for (h2, i2), v2 in other._terms.items():
                sign = -1 if i1 + i2 == 2 else 1
                key = (h1 + h2, (i1 + i2) % 2)
                terms[key] = terms.get(key, 0) + sign * v1 * v2
        return HbarScalar(terms)

    __rmul__ = __mul__

    def divide_by_i_hbar(self) -> "HbarScalar":
        """Exact division by iħ; every term must carry at least one ħ."""
        terms: Dict[ScalarKey, Fraction] = {}
        for (hbar_power, i_power), value in self._terms.items():
            if hbar_power == 0:
                raise VerificationError(f"Cannot divide {self.render()} by i*hbar")
            if i_power:
                terms[(hbar_power - 1, 0)] = terms.get((hbar_power - 1, 0), 0) + value
            else:
                terms[(hbar_power - 1, 1)] = terms.get((hbar_power - 1, 1), 0) - value
        return HbarScalar(terms)

    def to_hbar2(self) -> Dict[int, Fraction]:
        """Real coefficients keyed by ħ² power; a residual i or odd ħ power is an error."""
        out: Dict[int, Fraction] = {}
        for (hbar_power, i_power), value in self._terms.items():
            if i_power:
                raise VerificationError(f"Residual imaginary unit in {self.render()}")
            if hbar_power % 2:
                raise VerificationError(f"Odd power of hbar in {self.render()}")
            out[hbar_power // 2] = value
        return out

    def render(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for (hbar_power, i_power), value in sorted(self._terms.items()):
            factors = ["i"] if i_power else []
            if hbar_power:
                factors.append("hb" if hbar_power == 1 else f"hb^{hbar_power}")
            if not factors:
                parts.append(str(value))
            elif value == 1:
                parts.append("*".join(factors))
            elif value == -1:
                parts.append("-" + "*".join(factors))
            else:
                parts.append(f"{value}*" + "*".join(factors))
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self) -> str:
        return f"HbarScalar('{self.render()}')"


def _coerce(value: Union[HbarScalar, Number]) -> HbarScalar:
    if isinstance(value, HbarScalar):
        return value
    return HbarScalar.of(value)


ONE = HbarScalar.of(1)
ZERO = HbarScalar()
I_HBAR = HbarScalar.of(1, hbar_power=1, i_power=1)
HALF_I_HBAR = HbarScalar.of(Fraction(1, 2), hbar_power=1, i_power=1)
