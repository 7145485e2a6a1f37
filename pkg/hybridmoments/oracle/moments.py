"""Moment brackets recomputed from first principles.

Central moments are expanded into centroids and raw expectation values
⟨∏ f̃ · (F̂)_Weyl⟩. Raw expectations are bracketed at the observable level
(:func:`observable_bracket`), extended to polynomials by the Leibniz rule,
and converted back into central moments.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product
from math import comb
from typing import Dict, List, Tuple, Union

from ..algebra.polynomial import Polynomial, poly_sum
from ..errors import CostGuardError
from ..moments.types import BracketKind, CentroidSymbol, MomentKey, SystemSignature, VariableKind
from .observables import HybridObservable, observable_bracket
from .operators import ExponentPairs

logger = logging.getLogger(__name__)

MAX_ORACLE_ORDER = 5

RAW_PREFIX = "r["


@dataclass(frozen=True)
class RawMoment:
    """Raw expectation value of a product of powers; order >= 2."""

    exponents: ExponentPairs
    sort_key: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        pairs = tuple((int(a), int(b)) for a, b in self.exponents)
        object.__setattr__(self, "exponents", pairs)
        flat = tuple(value for pair in pairs for value in pair)
        if sum(flat) < 2:
            raise ValueError("Raw moments of order below 2 are constants or centroids")
        object.__setattr__(self, "sort_key", (2, sum(flat), tuple(reversed(flat))))

    @property
    def order(self) -> int:
        return self.sort_key[1]

    def render(self) -> str:
        return RAW_PREFIX + ";".join(f"{a},{b}" for a, b in self.exponents) + "]"

    def __str__(self) -> str:
        return self.render()


RawSymbol = Union[RawMoment, CentroidSymbol]
OracleOperand = Union[CentroidSymbol, MomentKey]


def raw_symbol(exps: ExponentPairs) -> Polynomial:
    """⟨exps⟩ as a polynomial: 1 at order 0, the centroid at order 1."""
    order = sum(a + b for a, b in exps)
    if order == 0:
        return Polynomial.constant(1)
    if order == 1:
        for index, (a, _) in enumerate(exps, start=1):
            if any(exps[index - 1]):
                kind = VariableKind.POSITION if a else VariableKind.MOMENTUM
                return Polynomial.symbol(CentroidSymbol(index, kind))
    return Polynomial.symbol(RawMoment(exps))


def _symbol_exponents(symbol: RawSymbol, n_dof: int) -> ExponentPairs:
    if isinstance(symbol, RawMoment):
        return symbol.exponents
    return MomentKey.unit(n_dof, symbol.dof_index, symbol.kind).exponents


def _centroid_power(index: int, kind: VariableKind, power: int) -> Polynomial:
    if power == 0:
        return Polynomial.constant(1)
    return Polynomial.symbol(CentroidSymbol(index, kind), power)


def _shift_expansion(exps: ExponentPairs, inner, sign: int) -> Polynomial:
    """Σ over sub-multi-indices of binomials times (sign·centroid)^rest times inner(sub)."""
    ranges = [range(a + 1) for pair in exps for a in pair]
    pieces: List[Polynomial] = []
    for flat in product(*ranges):
        sub = tuple((flat[2 * j], flat[2 * j + 1]) for j in range(len(exps)))
        weight = 1
        factor = Polynomial.constant(1)
        for index, ((a, b), (i, k)) in enumerate(zip(exps, sub), start=1):
            weight *= comb(a, i) * comb(b, k) * sign ** (a - i + b - k)
            factor = factor * _centroid_power(index, VariableKind.POSITION, a - i)
            factor = factor * _centroid_power(index, VariableKind.MOMENTUM, b - k)
        inner_value = inner(sub)
        if inner_value:
            pieces.append((factor * inner_value).scale(weight))
    return poly_sum(pieces)


def central_to_raw(key: MomentKey) -> Polynomial:
    """Δ(A) = ⟨∏ (q - q̄)^a (p - p̄)^b⟩ in centroids and raw expectations."""
    return _shift_expansion(key.exponents, raw_symbol, -1)


def raw_to_central(exps: ExponentPairs) -> Polynomial:
    """⟨∏ q^a p^b⟩ = ⟨∏ ((q - q̄) + q̄)^a ((p - p̄) + p̄)^b⟩ in centroids and central moments."""
    return _shift_expansion(tuple(exps), lambda sub: Polynomial.moment(MomentKey(sub)), 1)


@lru_cache(maxsize=None)
def raw_pair_bracket(left: ExponentPairs, right: ExponentPairs, n_classical: int) -> Polynomial:
    """{⟨left⟩, ⟨right⟩} = ⟨[[left, right]]⟩ as a polynomial in raw symbols and ħ²."""
    n_dof = len(left)
    bracket = observable_bracket(
        HybridObservable.monomial(n_classical, left),
        HybridObservable.monomial(n_classical, right),
    )
    pieces = []
    for exps, value in bracket.terms.items():
        for hbar2_power, coefficient in value.to_hbar2().items():
            pieces.append(raw_symbol(exps) * Polynomial.constant(coefficient, hbar2_power))
    logger.debug("raw bracket %s x %s over %d dofs: %d terms", left, right, n_dof, len(pieces))
    return poly_sum(pieces)


def raw_leibniz_bracket(left: Polynomial, right: Polynomial, n_dof: int, n_classical: int) -> Polynomial:
    """Leibniz extension of :func:`raw_pair_bracket` to polynomials in raw symbols."""
    right_symbols = right.symbols()
    if not right_symbols:
        return Polynomial.zero()
    right_partials = {v: right.derivative(v) for v in right_symbols}
    pieces = []
    for u in left.symbols():
        left_partial = left.derivative(u)
        u_exps = _symbol_exponents(u, n_dof)
        for v in right_symbols:
            value = raw_pair_bracket(u_exps, _symbol_exponents(v, n_dof), n_classical)
            if value:
                pieces.append(left_partial * right_partials[v] * value)
    return poly_sum(pieces)


def _to_central(poly: Polynomial) -> Polynomial:
    mapping: Dict[RawMoment, Polynomial] = {
        symbol: raw_to_central(symbol.exponents) for symbol in poly.symbols() if isinstance(symbol, RawMoment)
    }
    return poly.substitute(mapping)


def _expand(operand: OracleOperand, sig: SystemSignature) -> Polynomial:
    if isinstance(operand, CentroidSymbol):
        if operand.dof_index > sig.n_dof:
            raise ValueError(f"Centroid {operand.render()} does not match signature {sig.label}")
        return Polynomial.symbol(operand)
    if operand.n_dof != sig.n_dof:
        raise ValueError(f"Key {operand.render()} does not match signature {sig.label}")
    if operand.order > MAX_ORACLE_ORDER:
        raise CostGuardError(f"Oracle brackets are limited to moments of order {MAX_ORACLE_ORDER}, got {operand.render()}")
    return central_to_raw(operand)


def oracle_bracket(left: OracleOperand, right: OracleOperand, sig: SystemSignature, kind: BracketKind) -> Polynomial:
    """Bracket of centroids or central moments without the closed reordering identities."""
    raw = raw_leibniz_bracket(_expand(left, sig), _expand(right, sig), sig.n_dof, sig.classical_count(kind))
    result = _to_central(raw)
    if sig.hbar == 0:
        result = result.truncate_hbar()
    return result


def oracle_moment_bracket(key1: MomentKey, key2: MomentKey, sig: SystemSignature, kind: BracketKind) -> Polynomial:
    return oracle_bracket(key1, key2, sig, kind)


def clear_oracle_cache() -> None:
    raw_pair_bracket.cache_clear()


def exponent_tuples(n_dof: int, max_exponent: int) -> Tuple[ExponentPairs, ...]:
    """Every per-dof exponent assignment with entries up to ``max_exponent``."""
    values = range(max_exponent + 1)
    return tuple(
        tuple((flat[2 * j], flat[2 * j + 1]) for j in range(n_dof)) for flat in product(values, repeat=2 * n_dof)
    )
