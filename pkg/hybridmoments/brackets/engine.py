"""Closed-form brackets between central moments.

The quantum bracket of Δ(A) and Δ(B) is a quadratic sum over degrees of
freedom plus a linear sum over odd alpha vectors weighted by products of K
coefficients and (-ħ²/4)^L. The classical bracket keeps only L = 0; the
hybrid bracket keeps L >= 1 terms whose alpha lives on quantum degrees of
freedom only.
"""

from __future__ import annotations

import logging
from fractions import Fraction
from functools import lru_cache
from typing import Union

from ..algebra.polynomial import Polynomial, poly_sum
from ..moments.types import BracketKind, CentroidSymbol, MomentKey, SystemSignature, VariableKind
from .coefficients import alpha_cap, k_coefficient, odd_alpha_vectors

logger = logging.getLogger(__name__)

BracketOperand = Union[Polynomial, MomentKey, CentroidSymbol]


def moment_bracket(key1: MomentKey, key2: MomentKey, sig: SystemSignature, kind: BracketKind) -> Polynomial:
    _check_key(key1, sig)
    _check_key(key2, sig)
    return _moment_bracket(key1, key2, sig.classical_count(kind), sig.hbar == 0)


@lru_cache(maxsize=None)
def _moment_bracket(key1: MomentKey, key2: MomentKey, n_classical: int, classical_limit: bool) -> Polynomial:
    pieces = []
    n_dof = key1.n_dof
    for j in range(1, n_dof + 1):
        a, b = key1.exponents[j - 1]
        m, n = key2.exponents[j - 1]
        if b and m:
            left = Polynomial.moment(key1.shifted(j, 0, -1))
            right = Polynomial.moment(key2.shifted(j, -1, 0))
            pieces.append((left * right).scale(b * m))
        if a and n:
            left = Polynomial.moment(key1.shifted(j, -1, 0))
            right = Polynomial.moment(key2.shifted(j, 0, -1))
            pieces.append((left * right).scale(-a * n))

    caps = [alpha_cap(a, b, m, n) for (a, b), (m, n) in zip(key1.exponents, key2.exponents)]
    quantum_mask = [j > n_classical for j in range(1, n_dof + 1)]
    for alpha, level in odd_alpha_vectors(caps, quantum_mask):
        weight = Fraction(1)
        for (a, b), (m, n), alpha_j in zip(key1.exponents, key2.exponents, alpha):
            weight *= k_coefficient(a, b, m, n, alpha_j)
            if not weight:
                break
        if not weight:
            continue
        target = MomentKey(
            tuple(
                (a + m - alpha_j, b + n - alpha_j)
                for (a, b), (m, n), alpha_j in zip(key1.exponents, key2.exponents, alpha)
            )
        )
        factor = weight * Fraction(-1, 4) ** level
        pieces.append(Polynomial.moment(target) * Polynomial.constant(factor, level))

    result = poly_sum(pieces)
    if classical_limit:
        result = result.truncate_hbar()
    return result


def centroid_bracket(s1: Union[CentroidSymbol, MomentKey], s2: Union[CentroidSymbol, MomentKey]) -> Polynomial:
    """{q_i, p_j} = δ_ij; a centroid brackets to zero with every moment."""
    if isinstance(s1, MomentKey) and isinstance(s2, MomentKey):
        raise ValueError("centroid_bracket needs at least one centroid symbol")
    if isinstance(s1, MomentKey) or isinstance(s2, MomentKey):
        return Polynomial.zero()
    if s1.dof_index != s2.dof_index or s1.kind is s2.kind:
        return Polynomial.zero()
    return Polynomial.constant(1 if s1.kind is VariableKind.POSITION else -1)


def symbol_bracket(u: object, v: object, sig: SystemSignature, kind: BracketKind) -> Polynomial:
    if isinstance(u, MomentKey) and isinstance(v, MomentKey):
        return moment_bracket(u, v, sig, kind)
    if isinstance(u, (MomentKey, CentroidSymbol)) and isinstance(v, (MomentKey, CentroidSymbol)):
        return centroid_bracket(u, v)
    raise TypeError(f"Cannot bracket symbols of type {type(u).__name__} and {type(v).__name__}")


def as_polynomial(operand: BracketOperand) -> Polynomial:
    if isinstance(operand, Polynomial):
        return operand
    if isinstance(operand, MomentKey):
        return Polynomial.moment(operand)
    if isinstance(operand, CentroidSymbol):
        return Polynomial.symbol(operand)
    raise TypeError(f"Cannot use {type(operand).__name__} as a bracket operand")


def poly_bracket(left: BracketOperand, right: BracketOperand, sig: SystemSignature, kind: BracketKind) -> Polynomial:
    """Bracket extended to polynomials by bilinearity and the Leibniz rule."""
    left = as_polynomial(left)
    right = as_polynomial(right)
    right_symbols = right.symbols()
    if not right_symbols:
        return Polynomial.zero()
    right_partials = {v: right.derivative(v) for v in right_symbols}
    pieces = []
    for u in left.symbols():
        left_partial = left.derivative(u)
        for v in right_symbols:
            value = symbol_bracket(u, v, sig, kind)
            if value:
                pieces.append(left_partial * right_partials[v] * value)
    return poly_sum(pieces)


def _check_key(key: MomentKey, sig: SystemSignature) -> None:
    if key.n_dof != sig.n_dof:
        raise ValueError(
            f"Key {key.render()} has {key.n_dof} degrees of freedom, signature {sig.label} has {sig.n_dof}"
        )


def clear_bracket_cache() -> None:
    logger.debug("Dropping %d cached moment brackets", _moment_bracket.cache_info().currsize)
    _moment_bracket.cache_clear()
