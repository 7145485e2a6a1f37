"""Exact sparse polynomials over Q[ħ²].

A polynomial is stored flat as ``{(monomial, hbar2_power): Fraction}`` where a
monomial is a tuple of ``(symbol, power)`` pairs sorted by the symbol's
``sort_key``. Symbols are any hashable objects exposing ``sort_key`` and
``render()``: centroid symbols and moment keys for the public layers, raw
expectation symbols inside the oracle.
"""

from __future__ import annotations

from fractions import Fraction
from types import MappingProxyType
from typing import Any, Callable, Dict, Iterable, Iterator, Mapping, Optional, Tuple, Union

from ..errors import MissingSymbolError
from ..moments.types import MomentKey

Monomial = Tuple[Tuple[Any, int], ...]
TermKey = Tuple[Monomial, int]
Scalar = Union[int, Fraction]

HBAR_TOKEN = "hb"


def _multiply_monomials(left: Monomial, right: Monomial) -> Monomial:
    if not left:
        return right
    if not right:
        return left
    powers: Dict[Any, int] = dict(left)
    for symbol, power in right:
        powers[symbol] = powers.get(symbol, 0) + power
    return tuple(sorted(powers.items(), key=lambda item: item[0].sort_key))


def _monomial_rank(monomial: Monomial) -> tuple:
    return tuple((symbol.sort_key, power) for symbol, power in monomial)


class Polynomial:
    """Immutable polynomial with exact rational coefficients and a formal ħ².

    Moment keys of order 0 and 1 never appear as symbols: use
    :meth:`moment` to build a moment factor, which collapses order 0 to the
    constant 1 and order 1 to zero.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Optional[Mapping[TermKey, Scalar]] = None) -> None:
        clean: Dict[TermKey, Fraction] = {}
        if terms:
            for key, value in terms.items():
                value = Fraction(value)
                if value:
                    clean[key] = value
        self._terms = clean
        self._hash: Optional[int] = None

    @classmethod
    def _wrap(cls, terms: Dict[TermKey, Fraction]) -> "Polynomial":
        poly = cls.__new__(cls)
        poly._terms = {key: value for key, value in terms.items() if value}
        poly._hash = None
        return poly

    @classmethod
    def zero(cls) -> "Polynomial":
        return cls._wrap({})

    @classmethod
    def constant(cls, value: Scalar, hbar2_power: int = 0) -> "Polynomial":
        if hbar2_power < 0:
            raise ValueError("hbar2 power must be nonnegative")
        return cls._wrap({((), hbar2_power): Fraction(value)})

    @classmethod
    def hbar2(cls, power: int = 1) -> "Polynomial":
        return cls.constant(1, power)

    @classmethod
    def symbol(cls, symbol: Any, power: int = 1) -> "Polynomial":
        if isinstance(symbol, MomentKey) and symbol.order < 2:
            raise ValueError(f"Moment {symbol.render()} of order {symbol.order} is not a symbol")
        if power < 0:
            raise ValueError("Symbol powers must be nonnegative")
        if power == 0:
            return cls.constant(1)
        return cls._wrap({(((symbol, power),), 0): Fraction(1)})

    @classmethod
    def moment(cls, key: Optional[MomentKey]) -> "Polynomial":
        """Δ(key) as a polynomial: 1 for order 0, 0 for order 1 or a missing key."""
        if key is None or key.order == 1:
            return cls.zero()
        if key.order == 0:
            return cls.constant(1)
        return cls.symbol(key)

    @property
    def terms(self) -> Mapping[TermKey, Fraction]:
        return MappingProxyType(self._terms)

    def items(self) -> Iterator[Tuple[TermKey, Fraction]]:
        return iter(self._terms.items())

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Polynomial.constant(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __add__(self, other: Union["Polynomial", Scalar]) -> "Polynomial":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        terms = dict(self._terms)
        for key, value in other._terms.items():
            terms[key] = terms.get(key, 0) + value
        return Polynomial._wrap(terms)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial._wrap({key: -value for key, value in self._terms.items()})

    def __sub__(self, other: Union["Polynomial", Scalar]) -> "Polynomial":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: Scalar) -> "Polynomial":
        return (-self) + other

    def __mul__(self, other: Union["Polynomial", Scalar]) -> "Polynomial":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        terms: Dict[TermKey, Fraction] = {}
        for (mono_a, h_a), coef_a in self._terms.items():
            for (mono_b, h_b), coef_b in other._terms.items():
                key = (_multiply_monomials(mono_a, mono_b), h_a + h_b)
                terms[key] = terms.get(key, 0) + coef_a * coef_b
        return Polynomial._wrap(terms)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "Polynomial":
        if exponent < 0:
            raise ValueError("Negative powers are not polynomials")
        result = Polynomial.constant(1)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            exponent >>= 1
            if exponent:
                base = base * base
        return result

    def scale(self, factor: Scalar) -> "Polynomial":
        factor = Fraction(factor)
        if not factor:
            return Polynomial.zero()
        return Polynomial._wrap({key: value * factor for key, value in self._terms.items()})

    def symbols(self) -> Tuple[Any, ...]:
        found = {symbol for (mono, _), _ in self._terms.items() for symbol, _ in mono}
        return tuple(sorted(found, key=lambda symbol: symbol.sort_key))

    @property
    def degree(self) -> int:
        return max((sum(power for _, power in mono) for mono, _ in self._terms), default=0)

    @property
    def max_hbar2_power(self) -> int:
        return max((h2 for _, h2 in self._terms), default=0)

    def derivative(self, symbol: Any) -> "Polynomial":
        """Formal partial derivative; every other symbol is an independent constant."""
        terms: Dict[TermKey, Fraction] = {}
        for (mono, h2), coef in self._terms.items():
            for index, (current, power) in enumerate(mono):
                if current != symbol:
                    continue
                if power == 1:
                    reduced = mono[:index] + mono[index + 1 :]
                else:
                    reduced = mono[:index] + ((current, power - 1),) + mono[index + 1 :]
                key = (reduced, h2)
                terms[key] = terms.get(key, 0) + coef * power
                break
        return Polynomial._wrap(terms)

    def truncate_hbar(self) -> "Polynomial":
        """Classical limit: drop every term carrying ħ²."""
        return Polynomial._wrap({key: value for key, value in self._terms.items() if key[1] == 0})

    def drop_terms_with(self, predicate: Callable[[Any], bool]) -> "Polynomial":
        """Remove every term that contains a symbol matching ``predicate``."""
        return Polynomial._wrap(
            {
                key: value
                for key, value in self._terms.items()
                if not any(predicate(symbol) for symbol, _ in key[0])
            }
        )

    def substitute(self, mapping: Mapping[Any, "Polynomial"]) -> "Polynomial":
        """Replace symbols by polynomials; unmapped symbols are kept."""
        powers_cache: Dict[Tuple[Any, int], Polynomial] = {}
        result: Dict[TermKey, Fraction] = {}
        for (mono, h2), coef in self._terms.items():
            kept = []
            factor = Polynomial._wrap({((), h2): coef})
            for symbol, power in mono:
                if symbol in mapping:
                    cache_key = (symbol, power)
                    if cache_key not in powers_cache:
                        powers_cache[cache_key] = mapping[symbol] ** power
                    factor = factor * powers_cache[cache_key]
                else:
                    kept.append((symbol, power))
                if not factor:
                    break
            if not factor:
                continue
            if kept:
                factor = factor * Polynomial._wrap({(tuple(kept), 0): Fraction(1)})
            for key, value in factor._terms.items():
                result[key] = result.get(key, 0) + value
        return Polynomial._wrap(result)

    def evaluate(self, assignment: Mapping[Any, float], hbar: float) -> float:
        total = 0.0
        hbar_sq = hbar * hbar
        for (mono, h2), coef in self._terms.items():
            value = float(coef)
            if h2:
                value *= hbar_sq**h2
            for symbol, power in mono:
                try:
                    value *= assignment[symbol] ** power
                except KeyError:
                    raise MissingSymbolError(_render_symbol(symbol)) from None
            total += value
        return total

    def sorted_terms(self) -> Tuple[Tuple[TermKey, Fraction], ...]:
        """Terms in rendering order: ħ² power, then degree, then monomial rank."""
        return tuple(
            sorted(
                self._terms.items(),
                key=lambda item: (
                    item[0][1],
                    sum(power for _, power in item[0][0]),
                    _monomial_rank(item[0][0]),
                ),
            )
        )

    def render(self, names: Optional[Mapping[Any, str]] = None) -> str:
        """Stable text form such as ``2*d[1,1] - 3/2*hb^2``; ``names`` overrides symbol names."""
        if not self._terms:
            return "0"
        pieces = []
        for index, ((mono, h2), coef) in enumerate(self.sorted_terms()):
            body = _render_term(mono, h2, abs(coef), names or {})
            if index == 0:
                pieces.append(f"-{body}" if coef < 0 else body)
            else:
                pieces.append(f" - {body}" if coef < 0 else f" + {body}")
        return "".join(pieces)

    def __str__(self) -> str:
        return self.render()

    def __repr__(self) -> str:
        return f"Polynomial('{self.render()}')"


MomentPolynomial = Polynomial


def _coerce(value: object) -> Union[Polynomial, Any]:
    if isinstance(value, Polynomial):
        return value
    if isinstance(value, (int, Fraction)):
        return Polynomial.constant(value)
    return NotImplemented


def _render_symbol(symbol: Any, names: Optional[Mapping[Any, str]] = None) -> str:
    if names and symbol in names:
        return names[symbol]
    render = getattr(symbol, "render", None)
    return render() if callable(render) else str(symbol)


def _render_term(mono: Monomial, h2: int, magnitude: Fraction, names: Mapping[Any, str]) -> str:
    factors = [_render_symbol(symbol, names) + (f"^{power}" if power > 1 else "") for symbol, power in mono]
    if h2:
        factors.append(f"{HBAR_TOKEN}^{2 * h2}")
    if not factors:
        return str(magnitude)
    if magnitude == 1:
        return "*".join(factors)
    return f"{magnitude}*" + "*".join(factors)


def poly_add(a: Polynomial, b: Polynomial) -> Polynomial:
    return a + b


def poly_mul(a: Polynomial, b: Polynomial) -> Polynomial:
    return a * b


def poly_eval(p: Polynomial, assignment: Mapping[Any, float], hbar: float) -> float:
    return p.evaluate(assignment, hbar)


def poly_derivative(p: Polynomial, s: Any) -> Polynomial:
    return p.derivative(s)


def poly_sum(polys: Iterable[Polynomial]) -> Polynomial:
    terms: Dict[TermKey, Fraction] = {}
    for poly in polys:
        for key, value in poly.items():
            terms[key] = terms.get(key, 0) + value
    return Polynomial._wrap(terms)
